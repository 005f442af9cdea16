#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dlg/physics.hpp"
#include "dlg/support_graph.hpp"

namespace dlg {

enum class Tactic { PigShots, TntShots, BlockShots, PowerShots };

const char* to_string(Tactic t);
std::optional<Tactic> tactic_from_string(const std::string& s);

// One concrete strategy: a tactic plus its variant knobs. Tactics other
// than PowerShots fly untapped Red birds.
struct Strategy {
  Tactic tactic = Tactic::PigShots;
  bool left_to_right = true;
  bool high_arc = false;
  std::optional<double> tap_fraction;  // PowerShots only
  BirdType bird = BirdType::Red;

  std::string label() const;
};

struct StrategyCatalog {
  std::vector<Strategy> strategies;
};

struct EntitySnapshot {
  int object_count = 0;
  double bbox_width = 0.0;
  double bbox_height = 0.0;
};

// The four-step observation of one shot against one entity.
struct InteractionRecord {
  EntitySnapshot before;
  double force_magnitude = 0.0;  // first impact impulse
  Vec2 force_location;
  std::vector<ExitEvent> exited;  // left the original bounding box
  EntitySnapshot after;
  bool settled = true;
};

struct StrategyResult {
  Strategy strategy;
  std::vector<InteractionRecord> records;
  bool solved = false;
  int birds_used = 0;
  bool inconclusive = false;        // some shot failed to settle
  double area_ratio = 1.0;          // remaining bbox area / original
};

struct EntityMetadata {
  int schema_version = 1;
  std::string entity_hash;
  std::vector<StrategyResult> results;
  std::optional<int> oss;  // index into results; absent on ties

  // strategies that solved, as (result index, birds used)
  std::vector<std::pair<int, int>> solutions() const;
  // minimum birds of `bird` type needed over all solving strategies;
  // nullopt when the entity is unsolvable with that bird
  std::optional<int> bird_usage(BirdType bird) const;
  // the single tap fraction of `bird` that solves, if exactly one does
  std::optional<double> unique_tap_fraction(BirdType bird) const;
  // (tactic, bird) pairs that collapse the entity below the ratio
  std::vector<std::pair<Tactic, BirdType>> collapsing_variants(
      double ratio) const;
};

// What a strategy run aims at and what counts as success. With pig ids the
// run succeeds when all of them are destroyed; without, success is the
// area-id bounding box collapsing below the ratio.
struct StrategyScope {
  std::vector<std::string> aim_ids;
  std::vector<std::string> pig_ids;
  std::vector<std::string> area_ids;
  Rect original_box;
  double collapse_ratio = 0.5;
};

struct StrategyRun {
  bool solved = false;
  int birds_used = 0;
  bool inconclusive = false;
  std::vector<Shot> shots;
  std::vector<InteractionRecord> records;
  double area_ratio = 1.0;
};

// Fires up to max_shots birds from the sim's queue following the strategy:
// targets ordered by x, re-aimed at their current positions, tap applied at
// the strategy's fraction for powered birds. Also the portfolio player's
// core.
StrategyRun run_strategy(SimState& sim, const Strategy& strategy,
                         const StrategyScope& scope, int max_shots,
                         const Config& cfg);

// Tactic-appropriate target ids drawn from an object set, sorted by x.
std::vector<std::string> tactic_targets(const std::vector<GameObject>& objects,
                                        Tactic tactic);

// Deterministic catalog for one entity: per applicable tactic, target
// orderings, arc choices, and tap fractions for powered birds. For entities
// without pigs the power tactic targets blocks so pure obstacles are still
// exercised.
StrategyCatalog enumerate_strategies(const PhysicalEntity& entity,
                                     const Config& cfg);

// Runs every catalog strategy against the entity alone in a sandbox level
// at the canonical analysis position and records the four-step data.
EntityMetadata analyze_entity(const PhysicalEntity& entity,
                              const StrategyCatalog& catalog,
                              const Config& cfg);

// Unique minimum-bird solving strategy, or none on ties / no solutions.
std::optional<int> compute_oss(const EntityMetadata& metadata);

// Exit events recorded for one strategy, ordered by exit time.
// Throws ModelError for an out-of-range strategy index.
std::vector<ExitEvent> ejecta_profile(const EntityMetadata& metadata,
                                      int strategy_index);

// The entity translated so its bounding box is centered at the canonical
// analysis x offset and seated on the ground.
PhysicalEntity canonical_entity(const PhysicalEntity& entity,
                                const Config& cfg);

// Sandbox level: the (already canonical) entity plus a bird queue.
Level sandbox_level(const PhysicalEntity& entity,
                    const std::vector<BirdType>& birds);

Vec2 sandbox_slingshot();

// JSON round-trip for the metadata document (schema_version mandatory).
std::string metadata_to_json(const EntityMetadata& m);
EntityMetadata metadata_from_json(const std::string& text);

}  // namespace dlg
