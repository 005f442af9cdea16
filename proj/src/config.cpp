#include "dlg/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace dlg {
namespace {

struct Field {
  std::function<double(const Config&)> get;
  std::function<void(Config&, double)> set;
};

std::map<std::string, Field> field_table() {
  std::map<std::string, Field> t;
  auto add = [&](const std::string& name, double Config::*member) {
    t[name] = {[member](const Config& c) { return c.*member; },
               [member](Config& c, double v) { c.*member = v; }};
  };
  auto add_int = [&](const std::string& name, int Config::*member) {
    t[name] = {[member](const Config& c) { return double(c.*member); },
               [member](Config& c, double v) { c.*member = int(v); }};
  };
  add("dt", &Config::dt);
  add("gravity", &Config::gravity);
  add("launch_speed", &Config::launch_speed);
  add("restitution", &Config::restitution);
  add("friction", &Config::friction);
  add("rest_linear_eps", &Config::rest_linear_eps);
  add("rest_angular_eps", &Config::rest_angular_eps);
  add("rest_window", &Config::rest_window);
  add("sim_time_cap", &Config::sim_time_cap);
  add("contact_tolerance", &Config::contact_tolerance);
  add("damage_threshold", &Config::damage_threshold);
  add("damage_scale", &Config::damage_scale);
  add("impact_speed_min", &Config::impact_speed_min);
  add("strong_multiplier", &Config::strong_multiplier);
  add("wood_health_density", &Config::wood_health_density);
  add("stone_health_density", &Config::stone_health_density);
  add("ice_health_density", &Config::ice_health_density);
  add("wood_density", &Config::wood_density);
  add("stone_density", &Config::stone_density);
  add("ice_density", &Config::ice_density);
  add("pig_health", &Config::pig_health);
  add("pig_density", &Config::pig_density);
  add("tnt_health", &Config::tnt_health);
  add("bird_radius", &Config::bird_radius);
  add("bird_mass", &Config::bird_mass);
  add("yellow_boost", &Config::yellow_boost);
  add("blue_split_angle", &Config::blue_split_angle);
  add("blue_split_mass_frac", &Config::blue_split_mass_frac);
  add("black_blast_radius", &Config::black_blast_radius);
  add("black_blast_damage", &Config::black_blast_damage);
  add("black_blast_impulse", &Config::black_blast_impulse);
  add("white_egg_radius", &Config::white_egg_radius);
  add("white_egg_blast_radius", &Config::white_egg_blast_radius);
  add("white_egg_blast_damage", &Config::white_egg_blast_damage);
  add("white_egg_blast_impulse", &Config::white_egg_blast_impulse);
  add("tnt_blast_radius", &Config::tnt_blast_radius);
  add("tnt_blast_damage", &Config::tnt_blast_damage);
  add("tnt_blast_impulse", &Config::tnt_blast_impulse);
  add("analysis_anchor_x", &Config::analysis_anchor_x);
  add("collapse_ratio", &Config::collapse_ratio);
  add_int("extra_birds_per_strategy", &Config::extra_birds_per_strategy);
  add("hit_tolerance", &Config::hit_tolerance);
  add("min_entity_gap", &Config::min_entity_gap);
  add_int("max_attempts", &Config::max_attempts);
  add("placement_step", &Config::placement_step);
  add("placement_min_x", &Config::placement_min_x);
  add("placement_max_x", &Config::placement_max_x);
  add_int("max_alternate_solves", &Config::max_alternate_solves);
  return t;
}

}  // namespace

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open config file: " + path);
  Config cfg;
  auto fields = field_table();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string key, eq, trimmed;
    std::istringstream ls(line);
    if (!(ls >> key)) continue;
    auto eqpos = key.find('=');
    double value;
    if (eqpos != std::string::npos) {
      value = std::stod(key.substr(eqpos + 1));
      key = key.substr(0, eqpos);
    } else {
      char c;
      if (!(ls >> c) || c != '=' || !(ls >> value))
        throw ModelError(path + ":" + std::to_string(lineno) +
                         ": expected key = value");
    }
    auto it = fields.find(key);
    if (it == fields.end())
      throw ModelError(path + ":" + std::to_string(lineno) +
                       ": unknown config key '" + key + "'");
    it->second.set(cfg, value);
  }
  if (cfg.dt <= 0 || cfg.contact_tolerance <= 0 || cfg.min_entity_gap <= 0 ||
      cfg.collapse_ratio <= 0 || cfg.max_attempts < 1)
    throw ModelError("config: thresholds must be positive");
  return cfg;
}

void save_config(const Config& cfg, const std::string& path) {
  std::ofstream out(path);
  out << "# pipeline configuration (version 1)\n";
  for (const auto& [name, field] : field_table())
    out << name << " = " << field.get(cfg) << "\n";
}

double material_density(const Config& cfg, Material m) {
  switch (m) {
    case Material::Wood: return cfg.wood_density;
    case Material::Stone: return cfg.stone_density;
    case Material::Ice: return cfg.ice_density;
  }
  return 1.0;
}

double material_health_density(const Config& cfg, Material m) {
  switch (m) {
    case Material::Wood: return cfg.wood_health_density;
    case Material::Stone: return cfg.stone_health_density;
    case Material::Ice: return cfg.ice_health_density;
  }
  return 1.0;
}

double block_health(const Config& cfg, const std::string& type, Material m) {
  auto entry = catalog_lookup(ObjectKind::Block, type);
  if (!entry) throw ModelError("unknown block type: " + type);
  return entry->width * entry->height * material_health_density(cfg, m);
}

double damage_multiplier(const Config& cfg, BirdType attacker,
                         Material victim) {
  if ((attacker == BirdType::Yellow && victim == Material::Wood) ||
      (attacker == BirdType::Blue && victim == Material::Ice) ||
      (attacker == BirdType::Black && victim == Material::Stone))
    return cfg.strong_multiplier;
  return 1.0;
}

}  // namespace dlg
