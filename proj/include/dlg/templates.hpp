#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dlg/analyzer.hpp"
#include "dlg/repository.hpp"
#include "dlg/solution.hpp"

namespace dlg {

enum class DeceptionCategory {
  RollingFalling,
  ClearingPaths,
  StrengthAnalysis,
  NonGreedy,
  TapTime,
  Tnt
};

const char* to_string(DeceptionCategory c);
std::optional<DeceptionCategory> category_from_string(const std::string& s);
std::vector<DeceptionCategory> all_categories();

struct PoolEntry {
  std::string hash;
  PhysicalEntity entity;  // canonical pose
  EntityMetadata metadata;
};

struct EntityPool {
  std::vector<PoolEntry> entries;
};

// All analyzed entities of the repository, sorted by hash, in canonical pose.
EntityPool load_pool(const EntityRepository& repo);

struct GenerationRequest {
  DeceptionCategory category = DeceptionCategory::RollingFalling;
  uint64_t seed = 0;
  int max_attempts = 0;  // 0: config default
};

struct CandidateLevel {
  Level level;
  SolutionStrategy solution;
  DeceptionCategory category = DeceptionCategory::RollingFalling;
  std::string provenance;  // JSON: entities, placements, strategies, seed
};

// Generation failure with its cause separated for callers that retry.
struct GenerationError : ModelError {
  using ModelError::ModelError;
};
struct PoolExhaustedError : GenerationError {
  using GenerationError::GenerationError;
};
struct AttemptsExceededError : GenerationError {
  using GenerationError::GenerationError;
};

// Dispatches to the category template, retrying entity draws and placements
// up to the attempt budget. (request, seed, pool) determine the output.
CandidateLevel generate(const GenerationRequest& request, const EntityPool& pool,
                        const Config& cfg);

// The individual templates. Each throws GenerationError when the given
// entities cannot produce a verified level within the attempt budget.
CandidateLevel gen_rolling_falling(const PoolEntry& sender,
                                   const PoolEntry& receiver, uint64_t seed,
                                   const Config& cfg);
CandidateLevel gen_clearing_paths(const PoolEntry& obstacle,
                                  const PoolEntry& obstructed, uint64_t seed,
                                  const Config& cfg);
CandidateLevel gen_strength_analysis(const PoolEntry& e1, const PoolEntry& e2,
                                     uint64_t seed, const Config& cfg);
CandidateLevel gen_non_greedy(const PoolEntry& greedy,
                              const PoolEntry& non_greedy, uint64_t seed,
                              const Config& cfg);
CandidateLevel gen_tap_time(const PoolEntry& e1, const PoolEntry& e2,
                            uint64_t seed, const Config& cfg);
CandidateLevel gen_tnt_single(const PoolEntry& entity, uint64_t seed,
                              const Config& cfg);
CandidateLevel gen_tnt_pair(const PoolEntry& distractor,
                            const PoolEntry& distracted, uint64_t seed,
                            const Config& cfg);

// One entity to drop into a level: translated so its box center lands on
// center_x, ids renamed under the prefix.
struct Placement {
  const PhysicalEntity* entity = nullptr;
  double center_x = 0.0;
  std::string prefix;
};

// Translated copies with fresh ids. Throws ModelError when boxes leave the
// level bounds or come closer than the configured gap.
std::vector<GameObject> place_entities(const std::vector<Placement>& placements,
                                       const Config& cfg);

// True iff each shot, replayed in order, first contacts its target object
// (or destroys it during the shot, or lands within the hit tolerance of the
// target point).
bool verify_reachability(const Level& level, const SolutionStrategy& solution,
                         const Config& cfg);

// Replays the category's counter-strategy (greedy-first order, fixed tap
// fractions, swapped bird assignment, distractor-first) and reports whether
// it fails to solve the level. Categories without a defined counter-replay
// return true.
bool adversarial_replay_fails(const CandidateLevel& candidate,
                              const Config& cfg);

// True when the candidate level is stable and at most the configured number
// of portfolio variants solve it besides the shipped solution.
bool passes_screens(const CandidateLevel& candidate, const Config& cfg);

}  // namespace dlg
