#pragma once

#include <string>

#include "dlg/model.hpp"

namespace dlg {

// All tunable constants for the pipeline: physics integration, the damage
// table, the analysis catalog, and the template thresholds. Loaded once from
// a key=value file and treated as immutable afterwards.
struct Config {
  // physics
  double dt = 1.0 / 120.0;
  double gravity = 9.8;
  double launch_speed = 20.0;
  double restitution = 0.05;
  double friction = 0.7;
  double rest_linear_eps = 0.05;   // units/s
  double rest_angular_eps = 0.05;  // rad/s
  double rest_window = 2.0;        // s
  double sim_time_cap = 30.0;      // s, per shot
  double contact_tolerance = 0.01; // delta_c, support-graph vertical gap

  // damage model: delta = damage_scale * max(0, impulse - threshold) * mult
  double damage_threshold = 2.0;
  double damage_scale = 1.0;
  double impact_speed_min = 0.5;  // closing speed below which contacts deal no damage
  double strong_multiplier = 3.0;  // Yellow/wood, Blue/ice, Black/stone

  // per-material block health per unit area and density
  double wood_health_density = 30.0;
  double stone_health_density = 80.0;
  double ice_health_density = 22.0;
  double wood_density = 1.2;
  double stone_density = 3.0;
  double ice_density = 0.9;

  double pig_health = 10.0;
  double pig_density = 1.0;
  double tnt_health = 1.0;
  double bird_radius = 0.35;
  double bird_mass = 1.0;

  // tap powers
  double yellow_boost = 1.6;
  double blue_split_angle = 0.21;  // rad, fan half-angle
  double blue_split_mass_frac = 0.4;
  double black_blast_radius = 3.0;
  double black_blast_damage = 80.0;
  double black_blast_impulse = 25.0;
  double white_egg_radius = 0.3;
  double white_egg_blast_radius = 2.0;
  double white_egg_blast_damage = 60.0;
  double white_egg_blast_impulse = 15.0;
  double tnt_blast_radius = 2.8;
  double tnt_blast_damage = 70.0;
  double tnt_blast_impulse = 50.0;

  // analysis
  double analysis_anchor_x = 25.0;  // canonical entity center offset
  double collapse_ratio = 0.5;      // rho: "substantially collapsed"
  int extra_birds_per_strategy = 2; // bird budget = pigs + this
  double hit_tolerance = 0.6;       // eps_hit, ballistic cross-check

  // templates
  double min_entity_gap = 2.0;  // gamma
  int max_attempts = 50;
  double placement_step = 0.5;
  double placement_min_x = 14.0;
  double placement_max_x = 42.0;
  int max_alternate_solves = 1; // portfolio screening during generation

  Config() = default;
};

// Parses the documented key=value format. Unknown keys are an error; '#'
// starts a comment. Missing file is an error.
Config load_config(const std::string& path);
void save_config(const Config& cfg, const std::string& path);

double material_density(const Config& cfg, Material m);
double material_health_density(const Config& cfg, Material m);
double block_health(const Config& cfg, const std::string& type, Material m);

// Strong-against table: Yellow/wood, Blue/ice, Black/stone.
double damage_multiplier(const Config& cfg, BirdType attacker, Material victim);

}  // namespace dlg
