#include "dlg/validator.hpp"

#include <json.hpp>

namespace dlg {

const char* to_string(FailureStage f) {
  switch (f) {
    case FailureStage::Unstable: return "Unstable";
    case FailureStage::ShotMissed: return "ShotMissed";
    case FailureStage::PigsRemain: return "PigsRemain";
    case FailureStage::DidNotSettle: return "DidNotSettle";
  }
  return "?";
}

std::pair<bool, double> check_stability(const Level& level, const Config& cfg) {
  SimState sim(level, cfg);
  int steps = int(cfg.rest_window / cfg.dt + 0.5);
  double max_speed = 0.0;
  for (int i = 0; i < steps; i++) {
    sim.step();
    for (const auto& b : sim.bodies())
      if (!b.is_static) max_speed = std::max(max_speed, b.vel.length());
  }
  bool stable = sim.at_rest() && sim.destroyed_log().empty();
  for (const auto& b : sim.bodies())
    if (!b.is_static && !level.bounds.contains(b.pos)) stable = false;
  return {stable, max_speed};
}

ValidationReport check_solvability(const Level& level,
                                   const SolutionStrategy& solution,
                                   const Config& cfg) {
  ValidationReport report;
  auto [stable, max_speed] = check_stability(level, cfg);
  report.stable = stable;
  report.max_observed_speed = max_speed;
  if (!stable) {
    report.failure_stage = FailureStage::Unstable;
    return report;
  }

  SimState sim(level, cfg);
  for (const Shot& shot : solution.shots) {
    if (sim.birds_remaining().empty()) break;
    if (shot.target_ref && !sim.find(*shot.target_ref)) {
      report.failure_stage = FailureStage::ShotMissed;
      return report;
    }
    InteractionOutcome outcome = execute_shot(sim, shot);
    report.shots_used++;
    if (!outcome.settled) {
      report.failure_stage = FailureStage::DidNotSettle;
      return report;
    }
    if (sim.pig_count() == 0) break;
  }
  if (sim.pig_count() == 0) {
    report.solvable = true;
  } else {
    report.failure_stage = FailureStage::PigsRemain;
  }
  return report;
}

std::string report_record(const std::string& level_name,
                          const ValidationReport& report) {
  nlohmann::json j{{"level", level_name},
                   {"stable", report.stable},
                   {"solvable", report.solvable},
                   {"maxObservedSpeed", report.max_observed_speed},
                   {"shotsUsed", report.shots_used}};
  if (report.failure_stage)
    j["failureStage"] = to_string(*report.failure_stage);
  return j.dump();
}

}  // namespace dlg
