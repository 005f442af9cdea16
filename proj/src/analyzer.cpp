#include "dlg/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

namespace dlg {

using nlohmann::json;

const char* to_string(Tactic t) {
  switch (t) {
    case Tactic::PigShots: return "PigShots";
    case Tactic::TntShots: return "TntShots";
    case Tactic::BlockShots: return "BlockShots";
    case Tactic::PowerShots: return "PowerShots";
  }
  return "?";
}

std::optional<Tactic> tactic_from_string(const std::string& s) {
  if (s == "PigShots") return Tactic::PigShots;
  if (s == "TntShots") return Tactic::TntShots;
  if (s == "BlockShots") return Tactic::BlockShots;
  if (s == "PowerShots") return Tactic::PowerShots;
  return std::nullopt;
}

std::string Strategy::label() const {
  std::string s = to_string(tactic);
  s += left_to_right ? "/lr" : "/rl";
  s += high_arc ? "/high" : "/low";
  s += "/";
  s += to_string(bird);
  if (tap_fraction) s += "/tap" + std::to_string(int(*tap_fraction * 100));
  return s;
}

std::vector<std::pair<int, int>> EntityMetadata::solutions() const {
  std::vector<std::pair<int, int>> out;
  for (size_t i = 0; i < results.size(); i++)
    if (results[i].solved) out.emplace_back(int(i), results[i].birds_used);
  return out;
}

std::optional<int> EntityMetadata::bird_usage(BirdType bird) const {
  std::optional<int> best;
  for (const auto& r : results)
    if (r.solved && r.strategy.bird == bird)
      if (!best || r.birds_used < *best) best = r.birds_used;
  return best;
}

std::optional<double> EntityMetadata::unique_tap_fraction(BirdType bird) const {
  std::set<double> fracs;
  for (const auto& r : results)
    if (r.solved && r.strategy.bird == bird && r.strategy.tap_fraction)
      fracs.insert(*r.strategy.tap_fraction);
  if (fracs.size() == 1) return *fracs.begin();
  return std::nullopt;
}

std::vector<std::pair<Tactic, BirdType>> EntityMetadata::collapsing_variants(
    double ratio) const {
  std::vector<std::pair<Tactic, BirdType>> out;
  for (const auto& r : results) {
    if (r.area_ratio >= ratio) continue;
    auto pair = std::make_pair(r.strategy.tactic, r.strategy.bird);
    if (std::find(out.begin(), out.end(), pair) == out.end()) out.push_back(pair);
  }
  return out;
}

Vec2 sandbox_slingshot() { return {0.0, 2.0}; }

PhysicalEntity canonical_entity(const PhysicalEntity& entity,
                                const Config& cfg) {
  PhysicalEntity out = entity;
  Vec2 shift{cfg.analysis_anchor_x - entity.bounding_box.center().x,
             -entity.bounding_box.min.y};
  for (auto& o : out.objects) o.position += shift;
  out.bounding_box = tight_bounds(out.objects);
  return out;
}

Level sandbox_level(const PhysicalEntity& entity,
                    const std::vector<BirdType>& birds) {
  Level l;
  l.slingshot = sandbox_slingshot();
  l.birds = birds;
  l.objects = entity.objects;
  return l;
}

std::vector<std::string> tactic_targets(const std::vector<GameObject>& objects,
                                        Tactic t) {
  std::vector<const GameObject*> picked;
  bool any_pig = std::any_of(objects.begin(), objects.end(), [](const auto& o) {
    return o.kind == ObjectKind::Pig;
  });
  bool power_on_blocks = t == Tactic::PowerShots && !any_pig;
  for (const auto& o : objects) {
    switch (t) {
      case Tactic::PigShots:
      case Tactic::PowerShots:
        if (o.kind == ObjectKind::Pig)
          picked.push_back(&o);
        else if (power_on_blocks && o.kind == ObjectKind::Block)
          picked.push_back(&o);
        break;
      case Tactic::TntShots:
        if (o.kind == ObjectKind::Tnt) picked.push_back(&o);
        break;
      case Tactic::BlockShots:
        if (o.kind == ObjectKind::Block) picked.push_back(&o);
        break;
    }
  }
  std::sort(picked.begin(), picked.end(),
            [](const GameObject* a, const GameObject* b) {
              if (a->position.x != b->position.x)
                return a->position.x < b->position.x;
              return a->id < b->id;
            });
  std::vector<std::string> ids;
  for (const auto* o : picked) ids.push_back(o->id);
  return ids;
}

namespace {
constexpr double kTapFractions[3] = {0.5, 0.7, 0.9};
}  // namespace

StrategyRun run_strategy(SimState& sim, const Strategy& strategy,
                         const StrategyScope& scope, int max_shots,
                         const Config& cfg) {
  StrategyRun run;
  const double original_area = std::max(scope.original_box.area(), 1e-9);

  auto area_ratio = [&]() {
    bool first = true;
    Rect r{{0, 0}, {0, 0}};
    for (const auto& id : scope.area_ids) {
      const Body* b = sim.find(id);
      if (!b || b->is_static) continue;
      r = first ? b->bounds() : r.united(b->bounds());
      first = false;
    }
    return first ? 0.0 : r.area() / original_area;
  };
  auto snapshot = [&]() {
    EntitySnapshot s;
    bool first = true;
    Rect r{{0, 0}, {0, 0}};
    for (const auto& id : scope.area_ids) {
      const Body* b = sim.find(id);
      if (!b) continue;
      s.object_count++;
      r = first ? b->bounds() : r.united(b->bounds());
      first = false;
    }
    s.bbox_width = first ? 0.0 : r.width();
    s.bbox_height = first ? 0.0 : r.height();
    return s;
  };
  auto success = [&]() {
    if (!scope.pig_ids.empty()) {
      for (const auto& id : scope.pig_ids)
        if (sim.find(id)) return false;
      return true;
    }
    return area_ratio() < scope.collapse_ratio;
  };

  std::vector<std::string> targets = scope.aim_ids;
  if (!strategy.left_to_right) std::reverse(targets.begin(), targets.end());

  size_t next_target = 0;
  for (int shot_i = 0;
       shot_i < max_shots && !sim.birds_remaining().empty(); shot_i++) {
    const Body* tgt = nullptr;
    double angle = 0.0;
    for (size_t probe = 0; probe < targets.size() && !tgt; probe++) {
      size_t idx = (next_target + probe) % targets.size();
      const Body* cand = sim.find(targets[idx]);
      if (!cand) continue;
      auto angles = launch_solutions(sim.slingshot(), cfg.launch_speed,
                                     cand->pos, cfg.gravity);
      if (angles.empty()) continue;
      angle = strategy.high_arc ? angles.back() : angles.front();
      tgt = cand;
      next_target = idx + 1;
    }
    if (!tgt) break;

    Shot shot;
    shot.release_angle = angle;
    shot.launch_speed = cfg.launch_speed;
    shot.target_ref = tgt->id;
    shot.target_point = tgt->pos;
    if (strategy.tap_fraction && bird_has_power(sim.birds_remaining().front()))
      shot.tap_fraction = strategy.tap_fraction;

    InteractionRecord rec;
    rec.before = snapshot();
    InteractionOutcome outcome = execute_shot(sim, shot, &scope.original_box);
    if (outcome.first_hit) {
      rec.force_magnitude = outcome.first_hit->impulse;
      rec.force_location = outcome.first_hit->point;
    }
    rec.exited = outcome.exits;
    rec.after = snapshot();
    rec.settled = outcome.settled;
    run.records.push_back(rec);
    run.shots.push_back(shot);

    if (!outcome.settled) {
      run.inconclusive = true;
      break;
    }
    run.birds_used = shot_i + 1;
    if (success()) {
      run.solved = true;
      break;
    }
  }
  run.area_ratio = area_ratio();
  if (!run.solved) run.birds_used = 0;
  return run;
}

StrategyCatalog enumerate_strategies(const PhysicalEntity& entity,
                                     const Config& cfg) {
  (void)cfg;
  StrategyCatalog catalog;
  auto orders = [](size_t n) {
    return n >= 2 ? std::vector<bool>{true, false} : std::vector<bool>{true};
  };
  for (Tactic t : {Tactic::PigShots, Tactic::TntShots, Tactic::BlockShots}) {
    auto targets = tactic_targets(entity.objects, t);
    if (targets.empty()) continue;
    for (bool ltr : orders(targets.size()))
      for (bool high : {false, true})
        catalog.strategies.push_back({t, ltr, high, std::nullopt, BirdType::Red});
  }
  auto power_targets = tactic_targets(entity.objects, Tactic::PowerShots);
  if (!power_targets.empty()) {
    for (BirdType bird :
         {BirdType::Blue, BirdType::Yellow, BirdType::Black, BirdType::White})
      for (double frac : kTapFractions)
        for (bool ltr : orders(power_targets.size()))
          for (bool high : {false, true})
            catalog.strategies.push_back(
                {Tactic::PowerShots, ltr, high, frac, bird});
  }
  return catalog;
}

EntityMetadata analyze_entity(const PhysicalEntity& entity,
                              const StrategyCatalog& catalog,
                              const Config& cfg) {
  EntityMetadata meta;
  const int pigs = entity.pig_count();
  const int budget = pigs + cfg.extra_birds_per_strategy;

  StrategyScope scope;
  scope.original_box = entity.bounding_box;
  scope.collapse_ratio = cfg.collapse_ratio;
  for (const auto& o : entity.objects) {
    scope.area_ids.push_back(o.id);
    if (o.kind == ObjectKind::Pig) scope.pig_ids.push_back(o.id);
  }

  for (const Strategy& strategy : catalog.strategies) {
    std::vector<BirdType> birds(budget, strategy.bird);
    SimState sim(sandbox_level(entity, birds), cfg);

    StrategyScope s = scope;
    s.aim_ids = tactic_targets(entity.objects, strategy.tactic);
    StrategyRun run = run_strategy(sim, strategy, s, budget, cfg);

    StrategyResult res;
    res.strategy = strategy;
    res.records = std::move(run.records);
    res.solved = run.solved;
    res.birds_used = run.birds_used;
    res.inconclusive = run.inconclusive;
    res.area_ratio = run.area_ratio;
    meta.results.push_back(std::move(res));
  }

  meta.oss = compute_oss(meta);
  return meta;
}

std::optional<int> compute_oss(const EntityMetadata& metadata) {
  // Variants of one (tactic, bird) family count as one strategy; the
  // minimum is outperforming only when a single family attains it.
  std::optional<int> best;
  std::set<std::pair<Tactic, BirdType>> at_min;
  for (size_t i = 0; i < metadata.results.size(); i++) {
    const auto& r = metadata.results[i];
    if (!r.solved) continue;
    int best_birds = best ? metadata.results[*best].birds_used : 0;
    if (!best || r.birds_used < best_birds) {
      best = int(i);
      at_min = {{r.strategy.tactic, r.strategy.bird}};
    } else if (r.birds_used == best_birds) {
      at_min.insert({r.strategy.tactic, r.strategy.bird});
    }
  }
  if (at_min.size() > 1) return std::nullopt;
  return best;
}

std::vector<ExitEvent> ejecta_profile(const EntityMetadata& metadata,
                                      int strategy_index) {
  if (strategy_index < 0 || strategy_index >= int(metadata.results.size()))
    throw ModelError("unknown strategy index " + std::to_string(strategy_index));
  std::vector<ExitEvent> out;
  for (const auto& rec : metadata.results[strategy_index].records)
    for (const auto& e : rec.exited) out.push_back(e);
  std::sort(out.begin(), out.end(),
            [](const ExitEvent& a, const ExitEvent& b) { return a.time < b.time; });
  return out;
}

namespace {

json strategy_to_json(const Strategy& s) {
  json j{{"tactic", to_string(s.tactic)},
         {"order", s.left_to_right ? "lr" : "rl"},
         {"arc", s.high_arc ? "high" : "low"},
         {"bird", to_string(s.bird)}};
  if (s.tap_fraction) j["tap_fraction"] = *s.tap_fraction;
  return j;
}

Strategy strategy_from_json(const json& j) {
  Strategy s;
  auto t = tactic_from_string(j.at("tactic").get<std::string>());
  auto b = bird_from_string(j.at("bird").get<std::string>());
  if (!t || !b) throw ModelError("bad strategy in metadata document");
  s.tactic = *t;
  s.bird = *b;
  s.left_to_right = j.at("order").get<std::string>() == "lr";
  s.high_arc = j.at("arc").get<std::string>() == "high";
  if (j.contains("tap_fraction")) s.tap_fraction = j["tap_fraction"].get<double>();
  return s;
}

json snapshot_to_json(const EntitySnapshot& s) {
  return json{{"objects", s.object_count},
              {"bbox", {s.bbox_width, s.bbox_height}}};
}

EntitySnapshot snapshot_from_json(const json& j) {
  EntitySnapshot s;
  s.object_count = j.at("objects").get<int>();
  s.bbox_width = j.at("bbox")[0].get<double>();
  s.bbox_height = j.at("bbox")[1].get<double>();
  return s;
}

}  // namespace

std::string metadata_to_json(const EntityMetadata& m) {
  json j;
  j["schema_version"] = m.schema_version;
  j["entity_hash"] = m.entity_hash;
  json results = json::array();
  for (const auto& r : m.results) {
    json jr;
    jr["strategy"] = strategy_to_json(r.strategy);
    jr["solved"] = r.solved;
    jr["birds_used"] = r.birds_used;
    jr["inconclusive"] = r.inconclusive;
    jr["area_ratio"] = r.area_ratio;
    json records = json::array();
    for (const auto& rec : r.records) {
      json exits = json::array();
      for (const auto& e : rec.exited)
        exits.push_back(json{{"id", e.id},
                             {"position", {e.position.x, e.position.y}},
                             {"velocity", {e.velocity.x, e.velocity.y}},
                             {"time", e.time}});
      records.push_back(
          json{{"before", snapshot_to_json(rec.before)},
               {"interaction",
                {{"force", rec.force_magnitude},
                 {"location", {rec.force_location.x, rec.force_location.y}}}},
               {"dynamic", {{"exited", exits}}},
               {"after", snapshot_to_json(rec.after)},
               {"settled", rec.settled}});
    }
    jr["records"] = records;
    results.push_back(jr);
  }
  j["results"] = results;
  json sols = json::array();
  for (const auto& [idx, birds] : m.solutions())
    sols.push_back(json{{"strategy", idx}, {"birds", birds}});
  j["solutions"] = sols;
  if (m.oss)
    j["oss"] = *m.oss;
  else
    j["oss"] = nullptr;
  return j.dump(2);
}

EntityMetadata metadata_from_json(const std::string& text) {
  json j = json::parse(text);
  if (!j.contains("schema_version"))
    throw ModelError("metadata document missing schema_version");
  EntityMetadata m;
  m.schema_version = j["schema_version"].get<int>();
  m.entity_hash = j.value("entity_hash", "");
  for (const auto& jr : j.at("results")) {
    StrategyResult r;
    r.strategy = strategy_from_json(jr.at("strategy"));
    r.solved = jr.at("solved").get<bool>();
    r.birds_used = jr.at("birds_used").get<int>();
    r.inconclusive = jr.value("inconclusive", false);
    r.area_ratio = jr.value("area_ratio", 1.0);
    for (const auto& jrec : jr.at("records")) {
      InteractionRecord rec;
      rec.before = snapshot_from_json(jrec.at("before"));
      rec.force_magnitude = jrec.at("interaction").at("force").get<double>();
      rec.force_location = {jrec.at("interaction").at("location")[0].get<double>(),
                            jrec.at("interaction").at("location")[1].get<double>()};
      for (const auto& je : jrec.at("dynamic").at("exited")) {
        ExitEvent e;
        e.id = je.at("id").get<std::string>();
        e.position = {je.at("position")[0].get<double>(),
                      je.at("position")[1].get<double>()};
        e.velocity = {je.at("velocity")[0].get<double>(),
                      je.at("velocity")[1].get<double>()};
        e.time = je.at("time").get<double>();
        rec.exited.push_back(e);
      }
      rec.after = snapshot_from_json(jrec.at("after"));
      rec.settled = jrec.value("settled", true);
      r.records.push_back(rec);
    }
    m.results.push_back(std::move(r));
  }
  if (j.contains("oss") && !j["oss"].is_null()) m.oss = j["oss"].get<int>();
  return m;
}

}  // namespace dlg
