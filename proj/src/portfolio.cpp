#include "dlg/portfolio.hpp"

namespace dlg {

std::vector<Strategy> portfolio_variants() {
  // 10 variants of the four tactics
  return {
      {Tactic::PigShots, true, false, std::nullopt, BirdType::Red},
      {Tactic::PigShots, true, true, std::nullopt, BirdType::Red},
      {Tactic::PigShots, false, false, std::nullopt, BirdType::Red},
      {Tactic::TntShots, true, false, std::nullopt, BirdType::Red},
      {Tactic::TntShots, true, true, std::nullopt, BirdType::Red},
      {Tactic::BlockShots, true, false, std::nullopt, BirdType::Red},
      {Tactic::BlockShots, false, true, std::nullopt, BirdType::Red},
      {Tactic::PowerShots, true, false, 0.5, BirdType::Red},
      {Tactic::PowerShots, true, false, 0.7, BirdType::Red},
      {Tactic::PowerShots, true, true, 0.9, BirdType::Red},
  };
}

bool strategy_solves_level(const Level& level, const Strategy& strategy,
                           const Config& cfg) {
  SimState sim(level, cfg);
  StrategyScope scope;
  scope.aim_ids = tactic_targets(level.objects, strategy.tactic);
  for (const auto& o : level.objects) {
    scope.area_ids.push_back(o.id);
    if (o.kind == ObjectKind::Pig) scope.pig_ids.push_back(o.id);
  }
  if (scope.pig_ids.empty()) return false;
  scope.original_box = tight_bounds(level.objects);
  StrategyRun run = run_strategy(sim, strategy, scope,
                                 int(level.birds.size()), cfg);
  return run.solved;
}

std::vector<bool> portfolio_outcomes(const Level& level, const Config& cfg) {
  std::vector<bool> out;
  for (const Strategy& s : portfolio_variants())
    out.push_back(strategy_solves_level(level, s, cfg));
  return out;
}

}  // namespace dlg
