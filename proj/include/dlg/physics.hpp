#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dlg/config.hpp"
#include "dlg/model.hpp"

namespace dlg {

// One slingshot action. The tap fraction is measured along the ballistic
// path length towards the target ("tap at x%").
struct Shot {
  double release_angle = 0.0;  // radians from horizontal
  double launch_speed = 20.0;
  std::optional<double> tap_fraction;       // (0,1], powered birds only
  std::optional<std::string> target_ref;    // advisory
  std::optional<Vec2> target_point;         // tap-length + reachability anchor
};

enum class BodyRole { LevelObject, Bird, Egg };

struct Body {
  std::string id;
  BodyRole role = BodyRole::LevelObject;
  ObjectKind kind = ObjectKind::Block;
  BirdType bird = BirdType::Red;
  Material material = Material::Wood;
  bool is_circle = false;
  bool is_static = false;
  double radius = 0.0;  // circles
  double hw = 0.5, hh = 0.5;
  Vec2 pos, vel;
  double angle = 0.0, omega = 0.0;
  double mass = 1.0, inv_mass = 1.0, inv_inertia = 1.0;
  double health = 0.0;
  bool tapped = false;
  bool contacted = false;  // birds: power expires on first impact

  Rect bounds() const;
};

struct ContactEvent {
  std::string a;
  std::string b;
  double impulse = 0.0;  // accumulated normal impulse for the step
  Vec2 point;
  double time = 0.0;
};

// A level object crossing out of a watched region mid-shot.
struct ExitEvent {
  std::string id;
  Vec2 position;
  Vec2 velocity;
  double time = 0.0;
};

struct InteractionOutcome {
  bool settled = false;
  double time_used = 0.0;
  std::vector<ContactEvent> events;        // damage-relevant contacts
  std::vector<std::string> destroyed;      // ids removed during the shot
  std::optional<ContactEvent> first_hit;   // bird's first contact
  std::vector<ExitEvent> exits;            // watched-region crossings
};

// Deterministic fixed-timestep rigid-body world. One instance is confined
// to a single task; copies are independent. No RNG anywhere.
class SimState {
 public:
  SimState(const Level& level, const Config& cfg);

  const Config& config() const { return cfg_; }
  double time() const { return time_; }
  const std::vector<Body>& bodies() const { return bodies_; }
  const Body* find(const std::string& id) const;
  int pig_count() const;
  Vec2 slingshot() const { return slingshot_; }
  const std::vector<BirdType>& birds_remaining() const { return birds_; }

  // Advances one fixed timestep; returns contacts whose accumulated normal
  // impulse exceeded the damage threshold.
  std::vector<ContactEvent> step();

  // Instantaneous: every dynamic body below both rest thresholds.
  bool at_rest() const;

  // Per-step line-delimited state records for debugging.
  void set_trace(std::ostream* os) { trace_ = os; }

  void spawn_bird(BirdType type, const Vec2& pos, const Vec2& vel);
  bool bird_in_flight() const;
  const Body* flying_bird() const;
  void remove_projectiles();  // birds and eggs vanish between shots

  friend void apply_tap(SimState& state);
  friend InteractionOutcome execute_shot(SimState& state, const Shot& shot,
                                         const Rect* watch_exit);

 private:
  struct Contact;
  void find_contacts(std::vector<Contact>& contacts) const;
  void solve(std::vector<Contact>& contacts);
  void apply_damage(const std::vector<Contact>& contacts,
                    std::vector<ContactEvent>& events);
  void detonate(const Vec2& center, double radius, double damage,
                double impulse, std::optional<BirdType> attacker,
                std::vector<std::string>& destroyed_queue);
  void process_destroyed(std::vector<std::string>& queue);

  Config cfg_;
  std::vector<Body> bodies_;
  std::vector<BirdType> birds_;
  Vec2 slingshot_;
  double time_ = 0.0;
  int spawn_counter_ = 0;
  std::ostream* trace_ = nullptr;
  std::vector<std::string> destroyed_log_;
  std::vector<ContactEvent> pending_events_;  // explosions etc.

 public:
  const std::vector<std::string>& destroyed_log() const {
    return destroyed_log_;
  }
};

// Activates the in-flight bird's power. Throws ModelError for Red or when
// no bird is in flight; a bird that already hit something is a no-op.
void apply_tap(SimState& state);

// Spawns the next queued bird at the slingshot, simulates with the tap at
// the requested path fraction, and runs until rest or the time cap.
// Consumes one bird. Throws ModelError when no birds remain. When
// `watch_exit` is given, level objects whose centers leave that region are
// reported with their state at the crossing step.
InteractionOutcome execute_shot(SimState& state, const Shot& shot,
                                const Rect* watch_exit = nullptr);

// Simulates a copy of `state` for `window` seconds and reports whether all
// dynamic bodies are below the rest thresholds at the end.
bool is_at_rest(const SimState& state, double window);

// Low-arc / high-arc release angles that hit `target`; empty when out of
// range. Angles are sorted ascending.
std::vector<double> launch_solutions(const Vec2& slingshot, double speed,
                                     const Vec2& target, double gravity);

// delta = scale * max(0, impulse - threshold) * multiplier(attacker, victim)
double damage_from_contact(const Config& cfg, double impulse,
                           std::optional<BirdType> attacker, Material victim);

// Ballistic arc length from `from` with velocity (speed, angle) up to
// reaching x = target.x (or ground when no target).
double ballistic_path_length(const Vec2& from, double speed, double angle,
                             std::optional<Vec2> target, double gravity);

constexpr const char* kGroundId = "__ground";

}  // namespace dlg
