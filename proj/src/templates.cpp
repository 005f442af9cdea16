#include "dlg/templates.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "dlg/portfolio.hpp"
#include "dlg/rng.hpp"
#include "dlg/validator.hpp"

namespace dlg {

using nlohmann::json;

const char* to_string(DeceptionCategory c) {
  switch (c) {
    case DeceptionCategory::RollingFalling: return "RollingFalling";
    case DeceptionCategory::ClearingPaths: return "ClearingPaths";
    case DeceptionCategory::StrengthAnalysis: return "StrengthAnalysis";
    case DeceptionCategory::NonGreedy: return "NonGreedy";
    case DeceptionCategory::TapTime: return "TapTime";
    case DeceptionCategory::Tnt: return "TNT";
  }
  return "?";
}

std::optional<DeceptionCategory> category_from_string(const std::string& s) {
  for (DeceptionCategory c : all_categories())
    if (s == to_string(c)) return c;
  return std::nullopt;
}

std::vector<DeceptionCategory> all_categories() {
  return {DeceptionCategory::RollingFalling, DeceptionCategory::ClearingPaths,
          DeceptionCategory::StrengthAnalysis, DeceptionCategory::NonGreedy,
          DeceptionCategory::TapTime, DeceptionCategory::Tnt};
}

EntityPool load_pool(const EntityRepository& repo) {
  EntityPool pool;
  for (const std::string& hash : repo.list()) {
    if (!repo.has_metadata(hash)) continue;
    PoolEntry e;
    e.hash = hash;
    e.entity = repo.get(hash);
    e.metadata = repo.get_metadata(hash);
    pool.entries.push_back(std::move(e));
  }
  return pool;
}

std::vector<GameObject> place_entities(const std::vector<Placement>& placements,
                                       const Config& cfg) {
  const Rect bounds = Level{}.bounds;
  std::vector<Rect> boxes;
  std::vector<GameObject> out;
  for (const Placement& p : placements) {
    const Rect& eb = p.entity->bounding_box;
    double dx = p.center_x - eb.center().x;
    Rect box{{eb.min.x + dx, eb.min.y}, {eb.max.x + dx, eb.max.y}};
    if (box.min.x < bounds.min.x || box.max.x > bounds.max.x ||
        box.max.y > bounds.max.y)
      throw ModelError("layout infeasible: entity outside level bounds");
    for (const Rect& prev : boxes) {
      double gap = std::max(prev.min.x - box.max.x, box.min.x - prev.max.x);
      if (gap < cfg.min_entity_gap)
        throw ModelError("layout infeasible: entity gap below minimum");
    }
    boxes.push_back(box);
    for (GameObject o : p.entity->objects) {
      o.id = p.prefix + o.id;
      o.position.x += dx;
      out.push_back(o);
    }
  }
  return out;
}

namespace {

constexpr double kTapFractions[3] = {0.5, 0.7, 0.9};

int bird_rank(BirdType b) { return int(b); }  // Red weakest .. White strongest

std::vector<GameObject> entity_objects(const Level& level,
                                       const std::string& prefix) {
  std::vector<GameObject> out;
  for (const auto& o : level.objects)
    if (o.id.rfind(prefix, 0) == 0) out.push_back(o);
  return out;
}

StrategyScope make_scope(const std::vector<GameObject>& objects, Tactic tactic,
                         const Config& cfg) {
  StrategyScope s;
  s.aim_ids = tactic_targets(objects, tactic);
  for (const auto& o : objects) {
    s.area_ids.push_back(o.id);
    if (o.kind == ObjectKind::Pig) s.pig_ids.push_back(o.id);
  }
  s.original_box = tight_bounds(objects);
  s.collapse_ratio = cfg.collapse_ratio;
  return s;
}

// cheapest solving result matching the predicate, lowest index on ties
template <typename Pred>
std::optional<int> best_result(const EntityMetadata& m, Pred pred) {
  std::optional<int> best;
  for (size_t i = 0; i < m.results.size(); i++) {
    const auto& r = m.results[i];
    if (!r.solved || !pred(r)) continue;
    if (!best || r.birds_used < m.results[*best].birds_used) best = int(i);
  }
  return best;
}

std::optional<int> best_result_for_bird(const EntityMetadata& m, BirdType b) {
  return best_result(m, [&](const StrategyResult& r) {
    return r.strategy.bird == b;
  });
}

json strategy_json(const Strategy& s) {
  json j{{"tactic", to_string(s.tactic)},
         {"order", s.left_to_right ? "lr" : "rl"},
         {"arc", s.high_arc ? "high" : "low"},
         {"bird", to_string(s.bird)}};
  if (s.tap_fraction) j["tap_fraction"] = *s.tap_fraction;
  return j;
}

Strategy strategy_from_provenance(const json& j) {
  Strategy s;
  auto t = tactic_from_string(j.at("tactic").get<std::string>());
  auto b = bird_from_string(j.at("bird").get<std::string>());
  if (!t || !b) throw ModelError("bad strategy in provenance record");
  s.tactic = *t;
  s.bird = *b;
  s.left_to_right = j.at("order").get<std::string>() == "lr";
  s.high_arc = j.at("arc").get<std::string>() == "high";
  if (j.contains("tap_fraction"))
    s.tap_fraction = j["tap_fraction"].get<double>();
  return s;
}

json entity_record(const PoolEntry& e, const std::string& prefix,
                   const std::string& role, double x, const Strategy& strategy,
                   int shots) {
  return json{{"hash", e.hash},     {"prefix", prefix},
              {"role", role},       {"x", x},
              {"shots", shots},     {"strategy", strategy_json(strategy)}};
}

// One per-entity stage of a solution or replay.
struct RunSpec {
  Strategy strategy;
  std::string prefix;
  int max_shots = 0;
  bool all_level_pigs = false;  // success condition spans the whole level
};

// Runs the stages in order on one simulation. Fails unless every stage
// solves with exactly its bird allotment and no pig survives.
std::optional<std::vector<Shot>> run_solution(const Level& level,
                                              const std::vector<RunSpec>& specs,
                                              const Config& cfg) {
  SimState sim(level, cfg);
  std::vector<Shot> shots;
  for (const RunSpec& spec : specs) {
    std::vector<GameObject> objs = entity_objects(level, spec.prefix);
    StrategyScope scope = make_scope(objs, spec.strategy.tactic, cfg);
    if (spec.all_level_pigs) {
      scope.pig_ids.clear();
      for (const auto& o : level.objects)
        if (o.kind == ObjectKind::Pig) scope.pig_ids.push_back(o.id);
    }
    StrategyRun run = run_strategy(sim, spec.strategy, scope, spec.max_shots, cfg);
    if (!run.solved || run.birds_used != spec.max_shots) return std::nullopt;
    for (const Shot& s : run.shots) shots.push_back(s);
  }
  if (sim.pig_count() != 0) return std::nullopt;
  return shots;
}

// Replays the stages without expectations and reports surviving pigs.
int pigs_after(const Level& level, const std::vector<RunSpec>& specs,
               const Config& cfg) {
  SimState sim(level, cfg);
  for (const RunSpec& spec : specs) {
    if (sim.birds_remaining().empty()) break;
    std::vector<GameObject> objs = entity_objects(level, spec.prefix);
    StrategyScope scope = make_scope(objs, spec.strategy.tactic, cfg);
    int budget = std::min<int>(spec.max_shots, int(sim.birds_remaining().size()));
    run_strategy(sim, spec.strategy, scope, budget, cfg);
  }
  return sim.pig_count();
}

int pigs_after_shots(const Level& level, const std::vector<Shot>& shots,
                     const Config& cfg) {
  SimState sim(level, cfg);
  for (const Shot& s : shots) {
    if (sim.birds_remaining().empty()) break;
    execute_shot(sim, s);
  }
  return sim.pig_count();
}

std::optional<SolutionStrategy> replay_shots(const Level& level,
                                             const std::vector<Shot>& shots,
                                             const Config& cfg) {
  SimState sim(level, cfg);
  SolutionStrategy sol;
  for (const Shot& s : shots) {
    if (sim.birds_remaining().empty()) return std::nullopt;
    InteractionOutcome out = execute_shot(sim, s);
    if (!out.settled) return std::nullopt;
    sol.shots.push_back(s);
    sol.expected_outcome.push_back(out.destroyed);
  }
  if (sim.pig_count() != 0) return std::nullopt;
  return sol;
}

std::vector<double> candidate_xs(const Config& cfg, SplitMix64& rng) {
  std::vector<double> xs;
  for (double x = cfg.placement_min_x; x <= cfg.placement_max_x + 1e-9;
       x += cfg.placement_step)
    xs.push_back(x);
  rng.shuffle(xs);
  return xs;
}

std::optional<CandidateLevel> finalize(Level level, std::vector<Shot> shots,
                                       DeceptionCategory category, json prov,
                                       const Config& cfg) {
  auto sol = replay_shots(level, shots, cfg);
  if (!sol) return std::nullopt;
  CandidateLevel c;
  c.level = std::move(level);
  c.solution = std::move(*sol);
  c.category = category;
  c.provenance = prov.dump();
  if (!verify_reachability(c.level, c.solution, cfg)) return std::nullopt;
  if (!passes_screens(c, cfg)) return std::nullopt;
  return c;
}

GameObject make_platform(const std::string& id, Vec2 center, double width) {
  GameObject o;
  o.id = id;
  o.kind = ObjectKind::Platform;
  o.type = "Platform";
  o.position = center;
  o.width = width;
  o.height = 0.25;
  return o;
}

// Height of the launch parabola at horizontal offset dx from the slingshot.
double arc_height(const Vec2& sling, double speed, double angle, double dx,
                  double gravity) {
  double c = std::cos(angle);
  if (std::abs(c) < 1e-9) return sling.y;
  double t = dx / (speed * c);
  return sling.y + speed * std::sin(angle) * t - 0.5 * gravity * t * t;
}

std::vector<BirdType> repeated(BirdType b, int n) {
  return std::vector<BirdType>(size_t(n), b);
}

}  // namespace

bool verify_reachability(const Level& level, const SolutionStrategy& solution,
                         const Config& cfg) {
  SimState sim(level, cfg);
  for (const Shot& shot : solution.shots) {
    if (sim.birds_remaining().empty()) return false;
    InteractionOutcome out = execute_shot(sim, shot);
    if (!shot.target_ref) continue;
    bool ok = false;
    if (out.first_hit &&
        (out.first_hit->a == *shot.target_ref ||
         out.first_hit->b == *shot.target_ref))
      ok = true;
    if (!ok)
      for (const auto& id : out.destroyed)
        if (id == *shot.target_ref) ok = true;
    if (!ok && out.first_hit && shot.target_point &&
        (out.first_hit->point - *shot.target_point).length() <=
            cfg.hit_tolerance)
      ok = true;
    if (!ok) return false;
  }
  return true;
}

bool passes_screens(const CandidateLevel& candidate, const Config& cfg) {
  auto [stable, max_speed] = check_stability(candidate.level, cfg);
  (void)max_speed;
  if (!stable) return false;
  int alternates = 0;
  for (bool solved : portfolio_outcomes(candidate.level, cfg))
    if (solved) alternates++;
  if (alternates > cfg.max_alternate_solves) return false;
  return adversarial_replay_fails(candidate, cfg);
}

bool adversarial_replay_fails(const CandidateLevel& candidate,
                              const Config& cfg) {
  json prov = json::parse(candidate.provenance);
  const Level& level = candidate.level;

  auto record_for = [&](const std::string& role) -> const json& {
    for (const auto& e : prov.at("entities"))
      if (e.at("role") == role) return e;
    throw ModelError("provenance missing role " + role);
  };
  auto spec_for = [&](const std::string& role, bool whole_queue) {
    const json& rec = record_for(role);
    RunSpec spec;
    spec.strategy = strategy_from_provenance(rec.at("strategy"));
    spec.prefix = rec.at("prefix").get<std::string>();
    spec.max_shots =
        whole_queue ? int(level.birds.size()) : rec.at("shots").get<int>();
    return spec;
  };

  switch (candidate.category) {
    case DeceptionCategory::NonGreedy: {
      // greedy-first order with the unchanged bird queue
      RunSpec greedy = spec_for("greedy", false);
      RunSpec rest = spec_for("nonGreedy", true);
      return pigs_after(level, {greedy, rest}, cfg) > 0;
    }
    case DeceptionCategory::StrengthAnalysis: {
      // swapped bird assignment: each stage aims at the other entity
      RunSpec s1 = spec_for("entity1", false);
      RunSpec s2 = spec_for("entity2", false);
      std::swap(s1.prefix, s2.prefix);
      return pigs_after(level, {s1, s2}, cfg) > 0;
    }
    case DeceptionCategory::TapTime: {
      // the solution's shots with every tap forced to one fixed fraction
      for (double frac : kTapFractions) {
        std::vector<Shot> shots = candidate.solution.shots;
        for (Shot& s : shots)
          if (s.tap_fraction) s.tap_fraction = frac;
        if (pigs_after_shots(level, shots, cfg) == 0) return false;
      }
      return true;
    }
    case DeceptionCategory::Tnt: {
      if (prov.value("variant", 1) != 2) return true;
      RunSpec bait = spec_for("distractor", false);
      bait.max_shots = 1;
      RunSpec rest = spec_for("distracted", true);
      return pigs_after(level, {bait, rest}, cfg) > 0;
    }
    case DeceptionCategory::ClearingPaths: {
      // skip the clearing shots and spend every bird on the target entity
      RunSpec direct = spec_for("obstructed", true);
      return pigs_after(level, {direct}, cfg) > 0;
    }
    case DeceptionCategory::RollingFalling: {
      // direct pig shots at the receiver with the whole queue
      RunSpec direct = spec_for("receiver", true);
      direct.strategy = Strategy{Tactic::PigShots, true, false, std::nullopt,
                                 BirdType::Red};
      if (pigs_after(level, {direct}, cfg) == 0) return false;
      direct.strategy.high_arc = true;
      return pigs_after(level, {direct}, cfg) > 0;
    }
  }
  return true;
}

CandidateLevel gen_strength_analysis(const PoolEntry& e1, const PoolEntry& e2,
                                     uint64_t seed, const Config& cfg) {
  const BirdType birds[] = {BirdType::Red, BirdType::Blue, BirdType::Yellow,
                            BirdType::Black, BirdType::White};
  std::optional<std::pair<BirdType, BirdType>> pair;
  for (BirdType x : birds) {
    for (BirdType y : birds) {
      if (x == y) continue;
      auto u1x = e1.metadata.bird_usage(x);
      auto u2y = e2.metadata.bird_usage(y);
      if (!u1x || !u2y) continue;
      auto u2x = e2.metadata.bird_usage(x);
      auto u1y = e1.metadata.bird_usage(y);
      if ((u2x && *u2x <= *u1x) || (u1y && *u1y <= *u2y)) continue;
      pair = {x, y};
      break;
    }
    if (pair) break;
  }
  if (!pair)
    throw GenerationError("no crossed bird pair for the entity pair");
  auto [x_bird, y_bird] = *pair;
  int idx1 = *best_result_for_bird(e1.metadata, x_bird);
  int idx2 = *best_result_for_bird(e2.metadata, y_bird);
  const StrategyResult& r1 = e1.metadata.results[idx1];
  const StrategyResult& r2 = e2.metadata.results[idx2];

  SplitMix64 rng(mix_seed(seed, 11));
  std::vector<double> xs = candidate_xs(cfg, rng);
  int attempts = 0;
  for (size_t i = 0; i < xs.size() && attempts < cfg.max_attempts; i++) {
    for (size_t j = 0; j < xs.size() && attempts < cfg.max_attempts; j++) {
      if (i == j) continue;
      Level level;
      level.slingshot = sandbox_slingshot();
      try {
        level.objects = place_entities({{&e1.entity, xs[i], "a_"},
                                        {&e2.entity, xs[j], "b_"}},
                                       cfg);
      } catch (const ModelError&) {
        continue;
      }
      attempts++;
      auto q1 = repeated(x_bird, r1.birds_used);
      auto q2 = repeated(y_bird, r2.birds_used);
      level.birds = q1;
      level.birds.insert(level.birds.end(), q2.begin(), q2.end());

      auto shots = run_solution(
          level,
          {{r1.strategy, "a_", r1.birds_used, false},
           {r2.strategy, "b_", r2.birds_used, false}},
          cfg);
      if (!shots) continue;

      json prov{{"category", to_string(DeceptionCategory::StrengthAnalysis)},
                {"seed", seed},
                {"entities",
                 json::array(
                     {entity_record(e1, "a_", "entity1", xs[i], r1.strategy,
                                    r1.birds_used),
                      entity_record(e2, "b_", "entity2", xs[j], r2.strategy,
                                    r2.birds_used)})}};
      auto c = finalize(level, *shots, DeceptionCategory::StrengthAnalysis,
                        prov, cfg);
      if (c) return *c;
    }
  }
  throw AttemptsExceededError("maximum generation attempts reached");
}

CandidateLevel gen_non_greedy(const PoolEntry& greedy,
                              const PoolEntry& non_greedy, uint64_t seed,
                              const Config& cfg) {
  if (!greedy.metadata.oss || !non_greedy.metadata.oss)
    throw GenerationError("both entities need an outperforming strategy");
  const StrategyResult& rg = greedy.metadata.results[*greedy.metadata.oss];
  const StrategyResult& rn =
      non_greedy.metadata.results[*non_greedy.metadata.oss];
  if (rg.strategy.bird == rn.strategy.bird)
    throw GenerationError("entity strategies share a bird type");
  if (greedy.entity.pig_count() <= non_greedy.entity.pig_count())
    throw GenerationError("greedy entity must hold more pigs");
  bool easier = rg.birds_used < rn.birds_used ||
                (rg.birds_used == rn.birds_used &&
                 bird_rank(rg.strategy.bird) < bird_rank(rn.strategy.bird));
  if (!easier)
    throw GenerationError("greedy entity is not easier to solve");

  SplitMix64 rng(mix_seed(seed, 13));
  std::vector<double> xs = candidate_xs(cfg, rng);
  int attempts = 0;
  for (size_t i = 0; i < xs.size() && attempts < cfg.max_attempts; i++) {
    for (size_t j = 0; j < xs.size() && attempts < cfg.max_attempts; j++) {
      if (i == j) continue;
      Level level;
      level.slingshot = sandbox_slingshot();
      try {
        level.objects = place_entities({{&greedy.entity, xs[i], "a_"},
                                        {&non_greedy.entity, xs[j], "b_"}},
                                       cfg);
      } catch (const ModelError&) {
        continue;
      }
      attempts++;
      level.birds = repeated(rn.strategy.bird, rn.birds_used);
      auto tail = repeated(rg.strategy.bird, rg.birds_used);
      level.birds.insert(level.birds.end(), tail.begin(), tail.end());

      auto shots = run_solution(
          level,
          {{rn.strategy, "b_", rn.birds_used, false},
           {rg.strategy, "a_", rg.birds_used, false}},
          cfg);
      if (!shots) continue;

      json prov{{"category", to_string(DeceptionCategory::NonGreedy)},
                {"seed", seed},
                {"entities",
                 json::array(
                     {entity_record(greedy, "a_", "greedy", xs[i], rg.strategy,
                                    rg.birds_used),
                      entity_record(non_greedy, "b_", "nonGreedy", xs[j],
                                    rn.strategy, rn.birds_used)})}};
      auto c =
          finalize(level, *shots, DeceptionCategory::NonGreedy, prov, cfg);
      if (c) return *c;
    }
  }
  throw AttemptsExceededError("maximum generation attempts reached");
}

CandidateLevel gen_tap_time(const PoolEntry& e1, const PoolEntry& e2,
                            uint64_t seed, const Config& cfg) {
  std::optional<BirdType> bird;
  double t1 = 0.0, t2 = 0.0;
  for (BirdType b :
       {BirdType::Blue, BirdType::Yellow, BirdType::Black, BirdType::White}) {
    auto f1 = e1.metadata.unique_tap_fraction(b);
    auto f2 = e2.metadata.unique_tap_fraction(b);
    if (f1 && f2 && *f1 != *f2) {
      bird = b;
      t1 = *f1;
      t2 = *f2;
      break;
    }
  }
  if (!bird)
    throw GenerationError("no bird with distinct unique tap fractions");
  int idx1 = *best_result(e1.metadata, [&](const StrategyResult& r) {
    return r.strategy.bird == *bird && r.strategy.tap_fraction &&
           *r.strategy.tap_fraction == t1;
  });
  int idx2 = *best_result(e2.metadata, [&](const StrategyResult& r) {
    return r.strategy.bird == *bird && r.strategy.tap_fraction &&
           *r.strategy.tap_fraction == t2;
  });
  const StrategyResult& r1 = e1.metadata.results[idx1];
  const StrategyResult& r2 = e2.metadata.results[idx2];

  SplitMix64 rng(mix_seed(seed, 17));
  std::vector<double> xs = candidate_xs(cfg, rng);
  int attempts = 0;
  for (size_t i = 0; i < xs.size() && attempts < cfg.max_attempts; i++) {
    for (size_t j = 0; j < xs.size() && attempts < cfg.max_attempts; j++) {
      if (i == j) continue;
      Level level;
      level.slingshot = sandbox_slingshot();
      try {
        level.objects = place_entities({{&e1.entity, xs[i], "a_"},
                                        {&e2.entity, xs[j], "b_"}},
                                       cfg);
      } catch (const ModelError&) {
        continue;
      }
      attempts++;
      level.birds = repeated(*bird, r1.birds_used + r2.birds_used);

      auto shots = run_solution(
          level,
          {{r1.strategy, "a_", r1.birds_used, false},
           {r2.strategy, "b_", r2.birds_used, false}},
          cfg);
      if (!shots) continue;

      json prov{{"category", to_string(DeceptionCategory::TapTime)},
                {"seed", seed},
                {"entities",
                 json::array(
                     {entity_record(e1, "a_", "entity1", xs[i], r1.strategy,
                                    r1.birds_used),
                      entity_record(e2, "b_", "entity2", xs[j], r2.strategy,
                                    r2.birds_used)})}};
      auto c = finalize(level, *shots, DeceptionCategory::TapTime, prov, cfg);
      if (c) return *c;
    }
  }
  throw AttemptsExceededError("maximum generation attempts reached");
}

CandidateLevel gen_tnt_single(const PoolEntry& entity, uint64_t seed,
                              const Config& cfg) {
  if (entity.entity.pig_count() == 0 || entity.entity.tnt_count() == 0)
    throw GenerationError("entity needs both pigs and TNT");
  if (!entity.metadata.oss)
    throw GenerationError("entity has no outperforming strategy");
  const StrategyResult& r = entity.metadata.results[*entity.metadata.oss];
  if (r.strategy.tactic != Tactic::TntShots)
    throw GenerationError("outperforming strategy does not target TNT");

  SplitMix64 rng(mix_seed(seed, 19));
  std::vector<double> xs = candidate_xs(cfg, rng);
  int attempts = 0;
  for (size_t i = 0; i < xs.size() && attempts < cfg.max_attempts; i++) {
    Level level;
    level.slingshot = sandbox_slingshot();
    try {
      level.objects = place_entities({{&entity.entity, xs[i], "a_"}}, cfg);
    } catch (const ModelError&) {
      continue;
    }
    attempts++;
    level.birds = repeated(r.strategy.bird, r.birds_used);

    auto shots =
        run_solution(level, {{r.strategy, "a_", r.birds_used, false}}, cfg);
    if (!shots) continue;

    json prov{{"category", to_string(DeceptionCategory::Tnt)},
              {"seed", seed},
              {"variant", 1},
              {"entities",
               json::array({entity_record(entity, "a_", "target", xs[i],
                                          r.strategy, r.birds_used)})}};
    auto c = finalize(level, *shots, DeceptionCategory::Tnt, prov, cfg);
    if (c) return *c;
  }
  throw AttemptsExceededError("maximum generation attempts reached");
}

CandidateLevel gen_tnt_pair(const PoolEntry& distractor,
                            const PoolEntry& distracted, uint64_t seed,
                            const Config& cfg) {
  if (distractor.entity.pig_count() != 0)
    throw GenerationError("distracting entity must hold no pigs");
  if (distractor.entity.tnt_count() == 0)
    throw GenerationError("distracting entity must hold TNT");
  if (!distracted.metadata.oss || distracted.entity.pig_count() == 0)
    throw GenerationError("distracted entity needs pigs and a strategy");
  const StrategyResult& r =
      distracted.metadata.results[*distracted.metadata.oss];

  SplitMix64 rng(mix_seed(seed, 23));
  std::vector<double> xs = candidate_xs(cfg, rng);
  int attempts = 0;
  for (size_t i = 0; i < xs.size() && attempts < cfg.max_attempts; i++) {
    for (size_t j = 0; j < xs.size() && attempts < cfg.max_attempts; j++) {
      if (xs[i] >= xs[j]) continue;  // bait sits nearer the slingshot
      Level level;
      level.slingshot = sandbox_slingshot();
      try {
        level.objects = place_entities({{&distractor.entity, xs[i], "a_"},
                                        {&distracted.entity, xs[j], "b_"}},
                                       cfg);
      } catch (const ModelError&) {
        continue;
      }
      attempts++;
      level.birds = repeated(r.strategy.bird, r.birds_used);

      auto shots =
          run_solution(level, {{r.strategy, "b_", r.birds_used, false}}, cfg);
      if (!shots) continue;

      Strategy bait{Tactic::TntShots, true, false, std::nullopt,
                    r.strategy.bird};
      json prov{{"category", to_string(DeceptionCategory::Tnt)},
                {"seed", seed},
                {"variant", 2},
                {"entities",
                 json::array(
                     {entity_record(distractor, "a_", "distractor", xs[i],
                                    bait, 1),
                      entity_record(distracted, "b_", "distracted", xs[j],
                                    r.strategy, r.birds_used)})}};
      auto c = finalize(level, *shots, DeceptionCategory::Tnt, prov, cfg);
      if (c) return *c;
    }
  }
  throw AttemptsExceededError("maximum generation attempts reached");
}

CandidateLevel gen_clearing_paths(const PoolEntry& obstacle,
                                  const PoolEntry& obstructed, uint64_t seed,
                                  const Config& cfg) {
  if (obstacle.entity.pig_count() != 0)
    throw GenerationError("obstacle entity must hold no pigs");
  auto variants = obstacle.metadata.collapsing_variants(cfg.collapse_ratio);
  if (variants.size() != 1)
    throw GenerationError("obstacle must collapse under exactly one strategy");
  auto [clear_tactic, clear_bird] = variants[0];
  int clear_idx = *best_result(obstacle.metadata, [&](const StrategyResult& r) {
    return r.strategy.tactic == clear_tactic && r.strategy.bird == clear_bird &&
           r.area_ratio < cfg.collapse_ratio;
  });
  const StrategyResult& rc = obstacle.metadata.results[clear_idx];
  if (!obstructed.metadata.oss || obstructed.entity.pig_count() == 0)
    throw GenerationError("obstructed entity needs pigs and a strategy");
  const StrategyResult& ro =
      obstructed.metadata.results[*obstructed.metadata.oss];

  SplitMix64 rng(mix_seed(seed, 29));
  std::vector<double> xs = candidate_xs(cfg, rng);
  int attempts = 0;
  for (size_t i = 0; i < xs.size() && attempts < cfg.max_attempts; i++) {
    for (size_t j = 0; j < xs.size() && attempts < cfg.max_attempts; j++) {
      if (xs[i] >= xs[j]) continue;  // obstacle in front of the target
      Level level;
      level.slingshot = sandbox_slingshot();
      try {
        level.objects = place_entities({{&obstacle.entity, xs[i], "a_"},
                                        {&obstructed.entity, xs[j], "b_"}},
                                       cfg);
      } catch (const ModelError&) {
        continue;
      }
      attempts++;

      // the target's own strategy must be blocked while the obstacle stands
      Level probe = level;
      probe.birds = repeated(ro.strategy.bird, ro.birds_used);
      if (pigs_after(probe, {{ro.strategy, "b_", ro.birds_used, false}},
                     cfg) == 0)
        continue;

      level.birds = repeated(clear_bird, rc.birds_used);
      auto tail = repeated(ro.strategy.bird, ro.birds_used);
      level.birds.insert(level.birds.end(), tail.begin(), tail.end());

      auto shots = run_solution(
          level,
          {{rc.strategy, "a_", rc.birds_used, false},
           {ro.strategy, "b_", ro.birds_used, false}},
          cfg);
      if (!shots) continue;

      json prov{{"category", to_string(DeceptionCategory::ClearingPaths)},
                {"seed", seed},
                {"entities",
                 json::array(
                     {entity_record(obstacle, "a_", "obstacle", xs[i],
                                    rc.strategy, rc.birds_used),
                      entity_record(obstructed, "b_", "obstructed", xs[j],
                                    ro.strategy, ro.birds_used)})}};
      auto c = finalize(level, *shots, DeceptionCategory::ClearingPaths, prov,
                        cfg);
      if (c) return *c;
    }
  }
  throw AttemptsExceededError("maximum generation attempts reached");
}

CandidateLevel gen_rolling_falling(const PoolEntry& sender,
                                   const PoolEntry& receiver, uint64_t seed,
                                   const Config& cfg) {
  auto sender_idx = best_result(sender.metadata, [&](const StrategyResult& r) {
    for (const auto& rec : r.records)
      for (const auto& e : rec.exited)
        if (e.velocity.x > 0.3) return true;
    return false;
  });
  if (!sender_idx)
    throw GenerationError("sender sheds no rightward object");
  const StrategyResult& rs = sender.metadata.results[*sender_idx];
  if (!receiver.metadata.oss || receiver.entity.pig_count() == 0)
    throw GenerationError("receiver needs pigs and a strategy");

  std::optional<ExitEvent> ejecta;
  for (const ExitEvent& e : ejecta_profile(sender.metadata, *sender_idx))
    if (e.velocity.x > 0.3) {
      ejecta = e;
      break;
    }
  if (!ejecta) throw GenerationError("sender sheds no rightward object");

  const GameObject* pig = nullptr;
  for (const auto& o : receiver.entity.objects)
    if (o.kind == ObjectKind::Pig && (!pig || o.id < pig->id)) pig = &o;
  double pig_off = pig->position.x - receiver.entity.bounding_box.center().x;

  SplitMix64 rng(mix_seed(seed, 31));
  std::vector<double> xs = candidate_xs(cfg, rng);
  std::vector<double> nudges = {0.0, 0.5, -0.5, 1.0, -1.0, 1.5, -1.5, 2.0, -2.0};
  int attempts = 0;
  for (size_t i = 0; i < xs.size() && attempts < cfg.max_attempts; i++) {
    double sender_x = xs[i];
    // ballistic continuation of the shed object down to pig height
    Vec2 p = ejecta->position, v = ejecta->velocity;
    double drop = p.y - pig->position.y;
    double disc = v.y * v.y + 2.0 * cfg.gravity * drop;
    if (disc < 0.0) break;
    double t = (v.y + std::sqrt(disc)) / cfg.gravity;
    double land_x = p.x + v.x * t + (sender_x - cfg.analysis_anchor_x);

    for (double nudge : nudges) {
      if (attempts >= cfg.max_attempts) break;
      double receiver_x = land_x + nudge - pig_off;
      Level level;
      level.slingshot = sandbox_slingshot();
      try {
        level.objects = place_entities({{&sender.entity, sender_x, "a_"},
                                        {&receiver.entity, receiver_x, "b_"}},
                                       cfg);
      } catch (const ModelError&) {
        continue;
      }
      attempts++;

      // deny the direct high arc onto the receiver's pig with a platform
      Vec2 pig_pos{receiver_x + pig_off, pig->position.y};
      auto angles = launch_solutions(level.slingshot, cfg.launch_speed,
                                     pig_pos, cfg.gravity);
      if (angles.size() < 2) continue;
      double block_x = pig_pos.x - 1.2;
      double block_y = arc_height(level.slingshot, cfg.launch_speed,
                                  angles.back(), block_x, cfg.gravity);
      if (block_y < pig_pos.y + 1.0) continue;
      level.objects.push_back(
          make_platform("p_block", {block_x, block_y}, 1.6));

      level.birds = repeated(rs.strategy.bird, rs.birds_used);
      auto shots = run_solution(
          level, {{rs.strategy, "a_", rs.birds_used, true}}, cfg);
      if (!shots) continue;

      json prov{{"category", to_string(DeceptionCategory::RollingFalling)},
                {"seed", seed},
                {"entities",
                 json::array(
                     {entity_record(sender, "a_", "sender", sender_x,
                                    rs.strategy, rs.birds_used),
                      entity_record(receiver, "b_", "receiver", receiver_x,
                                    rs.strategy, 0)})}};
      auto c = finalize(level, *shots, DeceptionCategory::RollingFalling, prov,
                        cfg);
      if (c) return *c;
    }
  }
  throw AttemptsExceededError("maximum generation attempts reached");
}

namespace {

// entity pair indices satisfying the category's metadata preconditions
std::vector<std::pair<int, int>> category_candidates(
    DeceptionCategory category, const EntityPool& pool, const Config& cfg) {
  std::vector<std::pair<int, int>> out;
  const auto& es = pool.entries;
  auto has_oss_pigs = [](const PoolEntry& e) {
    return e.metadata.oss.has_value() && e.entity.pig_count() > 0;
  };
  for (int i = 0; i < int(es.size()); i++) {
    for (int j = 0; j < int(es.size()); j++) {
      if (i == j) continue;
      const PoolEntry& a = es[i];
      const PoolEntry& b = es[j];
      bool ok = false;
      switch (category) {
        case DeceptionCategory::RollingFalling: {
          bool sheds = false;
          for (const auto& r : a.metadata.results)
            for (const auto& rec : r.records)
              for (const auto& e : rec.exited)
                if (r.solved && e.velocity.x > 0.3) sheds = true;
          ok = sheds && has_oss_pigs(b);
          break;
        }
        case DeceptionCategory::ClearingPaths:
          ok = a.entity.pig_count() == 0 &&
               a.metadata.collapsing_variants(cfg.collapse_ratio).size() == 1 &&
               has_oss_pigs(b);
          break;
        case DeceptionCategory::StrengthAnalysis: {
          for (BirdType x : {BirdType::Red, BirdType::Blue, BirdType::Yellow,
                             BirdType::Black, BirdType::White}) {
            for (BirdType y : {BirdType::Red, BirdType::Blue, BirdType::Yellow,
                               BirdType::Black, BirdType::White}) {
              if (x == y) continue;
              auto u1x = a.metadata.bird_usage(x);
              auto u2y = b.metadata.bird_usage(y);
              if (!u1x || !u2y) continue;
              auto u2x = b.metadata.bird_usage(x);
              auto u1y = a.metadata.bird_usage(y);
              if ((u2x && *u2x <= *u1x) || (u1y && *u1y <= *u2y)) continue;
              ok = true;
            }
          }
          break;
        }
        case DeceptionCategory::NonGreedy: {
          if (!a.metadata.oss || !b.metadata.oss) break;
          const auto& rg = a.metadata.results[*a.metadata.oss];
          const auto& rn = b.metadata.results[*b.metadata.oss];
          ok = rg.strategy.bird != rn.strategy.bird &&
               a.entity.pig_count() > b.entity.pig_count() &&
               (rg.birds_used < rn.birds_used ||
                (rg.birds_used == rn.birds_used &&
                 bird_rank(rg.strategy.bird) < bird_rank(rn.strategy.bird)));
          break;
        }
        case DeceptionCategory::TapTime: {
          for (BirdType bird : {BirdType::Blue, BirdType::Yellow,
                                BirdType::Black, BirdType::White}) {
            auto f1 = a.metadata.unique_tap_fraction(bird);
            auto f2 = b.metadata.unique_tap_fraction(bird);
            if (f1 && f2 && *f1 != *f2) ok = true;
          }
          break;
        }
        case DeceptionCategory::Tnt:
          ok = a.entity.pig_count() == 0 && a.entity.tnt_count() > 0 &&
               has_oss_pigs(b);
          break;
      }
      if (ok) out.emplace_back(i, j);
    }
  }
  if (category == DeceptionCategory::Tnt && out.empty()) {
    // fall back to the single-entity variant
    for (int i = 0; i < int(es.size()); i++) {
      const PoolEntry& e = es[i];
      if (e.entity.pig_count() == 0 || e.entity.tnt_count() == 0) continue;
      if (!e.metadata.oss) continue;
      if (e.metadata.results[*e.metadata.oss].strategy.tactic !=
          Tactic::TntShots)
        continue;
      out.emplace_back(i, -1);
    }
  }
  return out;
}

}  // namespace

CandidateLevel generate(const GenerationRequest& request,
                        const EntityPool& pool, const Config& cfg) {
  if (pool.entries.empty()) throw PoolExhaustedError("entity pool is empty");
  int budget = request.max_attempts > 0 ? request.max_attempts
                                        : cfg.max_attempts;
  auto candidates = category_candidates(request.category, pool, cfg);
  if (candidates.empty())
    throw PoolExhaustedError(std::string("no entities satisfy the ") +
                             to_string(request.category) + " template");

  SplitMix64 rng(mix_seed(request.seed, 0x7e3));
  rng.shuffle(candidates);

  int attempts = 0;
  for (const auto& [i, j] : candidates) {
    if (attempts >= budget) break;
    attempts++;
    uint64_t attempt_seed = mix_seed(request.seed, uint64_t(attempts));
    try {
      const PoolEntry& a = pool.entries[size_t(i)];
      switch (request.category) {
        case DeceptionCategory::RollingFalling:
          return gen_rolling_falling(a, pool.entries[size_t(j)], attempt_seed,
                                     cfg);
        case DeceptionCategory::ClearingPaths:
          return gen_clearing_paths(a, pool.entries[size_t(j)], attempt_seed,
                                    cfg);
        case DeceptionCategory::StrengthAnalysis:
          return gen_strength_analysis(a, pool.entries[size_t(j)],
                                       attempt_seed, cfg);
        case DeceptionCategory::NonGreedy:
          return gen_non_greedy(a, pool.entries[size_t(j)], attempt_seed, cfg);
        case DeceptionCategory::TapTime:
          return gen_tap_time(a, pool.entries[size_t(j)], attempt_seed, cfg);
        case DeceptionCategory::Tnt:
          if (j < 0) return gen_tnt_single(a, attempt_seed, cfg);
          return gen_tnt_pair(a, pool.entries[size_t(j)], attempt_seed, cfg);
      }
    } catch (const GenerationError&) {
      continue;
    }
  }
  throw AttemptsExceededError("maximum generation attempts reached");
}

}  // namespace dlg
