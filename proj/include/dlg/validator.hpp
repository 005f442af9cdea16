#pragma once

#include <optional>
#include <string>

#include "dlg/solution.hpp"

namespace dlg {

enum class FailureStage { Unstable, ShotMissed, PigsRemain, DidNotSettle };

const char* to_string(FailureStage f);

struct ValidationReport {
  bool stable = false;
  bool solvable = false;
  double max_observed_speed = 0.0;
  int shots_used = 0;
  std::optional<FailureStage> failure_stage;
};

// Simulates the untouched level for the rest window: stable iff everything
// is below the rest thresholds at the end, nothing was destroyed, and
// nothing left the level bounds.
std::pair<bool, double> check_stability(const Level& level, const Config& cfg);

// Stability first, then replays the solution shot by shot. Solvable iff no
// pigs remain within the bird queue.
ValidationReport check_solvability(const Level& level,
                                   const SolutionStrategy& solution,
                                   const Config& cfg);

// One line-delimited JSON record for the batch report file.
std::string report_record(const std::string& level_name,
                          const ValidationReport& report);

}  // namespace dlg
