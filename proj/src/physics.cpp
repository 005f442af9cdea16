#include "dlg/physics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace dlg {
namespace {

constexpr int kSolverIterations = 10;
constexpr double kBaumgarte = 0.2;
constexpr double kSlop = 0.01;
constexpr double kRestitutionSpeed = 1.0;  // below this, contacts don't bounce
constexpr double kSettleWindow = 0.5;      // sustained-rest time inside a shot

struct ManifoldPoint {
  Vec2 p;
  double pen = 0.0;
};

struct Manifold {
  Vec2 normal;  // from a to b
  ManifoldPoint pts[2];
  int count = 0;
};

bool collide_circle_circle(const Body& a, const Body& b, Manifold& m) {
  Vec2 d = b.pos - a.pos;
  double r = a.radius + b.radius;
  double dist_sq = d.length_sq();
  if (dist_sq >= r * r) return false;
  double dist = std::sqrt(dist_sq);
  m.normal = dist > 1e-9 ? d * (1.0 / dist) : Vec2{0, 1};
  m.pts[0].p = a.pos + m.normal * a.radius;
  m.pts[0].pen = r - dist;
  m.count = 1;
  return true;
}

// a is the box, b the circle; normal still points from a to b.
bool collide_box_circle(const Body& a, const Body& b, Manifold& m) {
  Vec2 local = rotate(b.pos - a.pos, -a.angle);
  Vec2 clamped{std::clamp(local.x, -a.hw, a.hw),
               std::clamp(local.y, -a.hh, a.hh)};
  bool inside = (local.x == clamped.x && local.y == clamped.y);
  if (inside) {
    // push out along the nearest face
    double dx = a.hw - std::abs(local.x);
    double dy = a.hh - std::abs(local.y);
    if (dx < dy)
      clamped.x = local.x > 0 ? a.hw : -a.hw;
    else
      clamped.y = local.y > 0 ? a.hh : -a.hh;
  }
  Vec2 diff = local - clamped;
  double dist_sq = diff.length_sq();
  if (!inside && dist_sq >= b.radius * b.radius) return false;
  double dist = std::sqrt(dist_sq);
  Vec2 normal_local;
  double pen;
  if (inside) {
    // center inside the box: push the circle out through the nearest face
    Vec2 outward = clamped - local;
    normal_local = outward.length() > 1e-9 ? outward.normalized() : Vec2{0, 1};
    pen = b.radius + outward.length();
  } else {
    normal_local = dist > 1e-9 ? diff * (1.0 / dist) : Vec2{0, 1};
    pen = b.radius - dist;
  }
  m.normal = rotate(normal_local, a.angle);
  m.pts[0].p = a.pos + rotate(clamped, a.angle);
  m.pts[0].pen = pen;
  m.count = 1;
  return true;
}

struct BoxFace {
  Vec2 v1, v2;   // endpoints
  Vec2 normal;   // outward
};

BoxFace best_face(const Body& box, const Vec2& dir) {
  Vec2 ax = rotate({1, 0}, box.angle);
  Vec2 ay = rotate({0, 1}, box.angle);
  struct Cand {
    Vec2 n;
    Vec2 c;
    Vec2 t;
    double e;
  };
  Cand cands[4] = {
      {ax, box.pos + ax * box.hw, ay, box.hh},
      {-ax, box.pos - ax * box.hw, ay, box.hh},
      {ay, box.pos + ay * box.hh, ax, box.hw},
      {-ay, box.pos - ay * box.hh, ax, box.hw},
  };
  const Cand* best = &cands[0];
  for (const Cand& c : cands)
    if (c.n.dot(dir) > best->n.dot(dir)) best = &c;
  return {best->c + best->t * best->e, best->c - best->t * best->e, best->n};
}

int clip_segment(Vec2 v[2], const Vec2& n, double offset) {
  // keep points with dot(n, v) - offset <= 0
  double d0 = n.dot(v[0]) - offset;
  double d1 = n.dot(v[1]) - offset;
  Vec2 out[2];
  int count = 0;
  if (d0 <= 0) out[count++] = v[0];
  if (d1 <= 0) out[count++] = v[1];
  if (d0 * d1 < 0 && count < 2) {
    double t = d0 / (d0 - d1);
    out[count++] = v[0] + (v[1] - v[0]) * t;
  }
  v[0] = out[0];
  v[1] = count > 1 ? out[1] : out[0];
  return count;
}

bool collide_box_box(const Body& a, const Body& b, Manifold& m) {
  // SAT over both boxes' axes
  Vec2 axes[4] = {rotate({1, 0}, a.angle), rotate({0, 1}, a.angle),
                  rotate({1, 0}, b.angle), rotate({0, 1}, b.angle)};
  Vec2 d = b.pos - a.pos;
  double best_overlap = 1e30;
  int best_axis = -1;
  double best_sign = 1.0;
  for (int i = 0; i < 4; i++) {
    const Vec2& ax = axes[i];
    double proj_a = a.hw * std::abs(ax.dot(axes[0])) +
                    a.hh * std::abs(ax.dot(axes[1]));
    double proj_b = b.hw * std::abs(ax.dot(axes[2])) +
                    b.hh * std::abs(ax.dot(axes[3]));
    double dist = ax.dot(d);
    double overlap = proj_a + proj_b - std::abs(dist);
    if (overlap <= 0) return false;
    if (overlap < best_overlap) {
      best_overlap = overlap;
      best_axis = i;
      best_sign = dist >= 0 ? 1.0 : -1.0;
    }
  }

  Vec2 normal = axes[best_axis] * best_sign;  // from a to b
  const Body& ref = best_axis < 2 ? a : b;
  const Body& inc = best_axis < 2 ? b : a;
  Vec2 ref_dir = best_axis < 2 ? normal : -normal;

  BoxFace ref_face = best_face(ref, ref_dir);
  BoxFace inc_face = best_face(inc, -ref_dir);

  Vec2 pts[2] = {inc_face.v1, inc_face.v2};
  Vec2 side = (ref_face.v2 - ref_face.v1).normalized();
  // clip to the reference face's side planes
  if (clip_segment(pts, -side, -side.dot(ref_face.v1)) < 2) return false;
  if (clip_segment(pts, side, side.dot(ref_face.v2)) < 2) return false;

  m.normal = normal;
  m.count = 0;
  for (int i = 0; i < 2; i++) {
    double sep = ref_face.normal.dot(pts[i] - ref_face.v1);
    if (sep <= 0) {
      m.pts[m.count].p = pts[i];
      m.pts[m.count].pen = -sep;
      m.count++;
    }
  }
  return m.count > 0;
}

double box_inertia(double mass, double w, double h) {
  return mass * (w * w + h * h) / 12.0;
}

}  // namespace

Rect Body::bounds() const {
  if (is_circle)
    return {{pos.x - radius, pos.y - radius}, {pos.x + radius, pos.y + radius}};
  return obb_bounds(pos, hw, hh, angle);
}

struct SimState::Contact {
  int a, b;
  Vec2 normal;
  int count = 0;
  double approach = 0.0;  // pre-solve closing speed, gates damage
  struct Point {
    Vec2 p;
    Vec2 ra, rb;
    double pen = 0.0;
    double mass_n = 0.0, mass_t = 0.0;
    double bias = 0.0, bounce = 0.0;
    double accum_n = 0.0, accum_t = 0.0;
  } pts[2];
};

SimState::SimState(const Level& level, const Config& cfg)
    : cfg_(cfg), birds_(level.birds), slingshot_(level.slingshot) {
  // ground plane as a wide static box with its top edge at y = 0
  Body ground;
  ground.id = kGroundId;
  ground.kind = ObjectKind::Platform;
  ground.is_static = true;
  ground.hw = 10000.0;
  ground.hh = 5.0;
  ground.pos = {0.0, -5.0};
  ground.mass = 0.0;
  ground.inv_mass = 0.0;
  ground.inv_inertia = 0.0;
  bodies_.push_back(ground);

  for (const auto& o : level.objects) {
    Body b;
    b.id = o.id;
    b.kind = o.kind;
    b.material = o.material;
    b.pos = o.position;
    b.angle = o.rotation;
    b.health = o.health;
    if (o.kind == ObjectKind::Pig) {
      b.is_circle = true;
      b.radius = o.width * 0.5;
      b.mass = 3.14159265358979 * b.radius * b.radius * cfg.pig_density;
      b.inv_mass = 1.0 / b.mass;
      b.inv_inertia = 2.0 / (b.mass * b.radius * b.radius);
    } else {
      b.hw = o.width * 0.5;
      b.hh = o.height * 0.5;
      if (o.kind == ObjectKind::Platform) {
        b.is_static = true;
        b.inv_mass = 0.0;
        b.inv_inertia = 0.0;
        b.mass = 0.0;
      } else {
        double density = o.kind == ObjectKind::Block
                             ? material_density(cfg, o.material)
                             : 1.0;
        b.mass = o.width * o.height * density;
        b.inv_mass = 1.0 / b.mass;
        b.inv_inertia = 1.0 / box_inertia(b.mass, o.width, o.height);
      }
    }
    bodies_.push_back(b);
  }
}

const Body* SimState::find(const std::string& id) const {
  for (const auto& b : bodies_)
    if (b.id == id) return &b;
  return nullptr;
}

int SimState::pig_count() const {
  int n = 0;
  for (const auto& b : bodies_)
    if (b.kind == ObjectKind::Pig && b.role == BodyRole::LevelObject) n++;
  return n;
}

bool SimState::at_rest() const {
  for (const auto& b : bodies_) {
    if (b.is_static) continue;
    if (b.vel.length() >= cfg_.rest_linear_eps) return false;
    if (std::abs(b.omega) >= cfg_.rest_angular_eps) return false;
  }
  return true;
}

void SimState::spawn_bird(BirdType type, const Vec2& pos, const Vec2& vel) {
  Body b;
  b.id = "bird_" + std::to_string(spawn_counter_++);
  b.role = BodyRole::Bird;
  b.bird = type;
  b.is_circle = true;
  b.radius = cfg_.bird_radius;
  b.mass = cfg_.bird_mass;
  b.inv_mass = 1.0 / b.mass;
  b.inv_inertia = 2.0 / (b.mass * b.radius * b.radius);
  b.pos = pos;
  b.vel = vel;
  bodies_.push_back(b);
}

bool SimState::bird_in_flight() const { return flying_bird() != nullptr; }

const Body* SimState::flying_bird() const {
  for (const auto& b : bodies_)
    if (b.role == BodyRole::Bird && !b.contacted) return &b;
  return nullptr;
}

void SimState::remove_projectiles() {
  bodies_.erase(std::remove_if(bodies_.begin(), bodies_.end(),
                               [](const Body& b) {
                                 return b.role != BodyRole::LevelObject;
                               }),
                bodies_.end());
}

void SimState::find_contacts(std::vector<Contact>& contacts) const {
  for (size_t i = 0; i < bodies_.size(); i++) {
    for (size_t j = i + 1; j < bodies_.size(); j++) {
      const Body& a = bodies_[i];
      const Body& b = bodies_[j];
      if (a.is_static && b.is_static) continue;
      // projectiles pass through each other (split birds, eggs)
      if (a.role != BodyRole::LevelObject && b.role != BodyRole::LevelObject)
        continue;
      if (!a.bounds().expanded(0.05).overlaps(b.bounds())) continue;
      Manifold m;
      bool hit;
      if (a.is_circle && b.is_circle) {
        hit = collide_circle_circle(a, b, m);
      } else if (a.is_circle) {
        hit = collide_box_circle(b, a, m);
        m.normal = -m.normal;
      } else if (b.is_circle) {
        hit = collide_box_circle(a, b, m);
      } else {
        hit = collide_box_box(a, b, m);
      }
      if (!hit) continue;
      Contact c;
      c.a = int(i);
      c.b = int(j);
      c.normal = m.normal;
      c.count = m.count;
      for (int k = 0; k < m.count; k++) {
        c.pts[k].p = m.pts[k].p;
        c.pts[k].pen = m.pts[k].pen;
      }
      contacts.push_back(c);
    }
  }
}

void SimState::solve(std::vector<Contact>& contacts) {
  double inv_dt = 1.0 / cfg_.dt;
  for (Contact& c : contacts) {
    Body& a = bodies_[c.a];
    Body& b = bodies_[c.b];
    for (int k = 0; k < c.count; k++) {
      auto& pt = c.pts[k];
      pt.ra = pt.p - a.pos;
      pt.rb = pt.p - b.pos;
      double rna = pt.ra.cross(c.normal);
      double rnb = pt.rb.cross(c.normal);
      double kn = a.inv_mass + b.inv_mass + a.inv_inertia * rna * rna +
                  b.inv_inertia * rnb * rnb;
      pt.mass_n = kn > 0 ? 1.0 / kn : 0.0;
      Vec2 tangent = c.normal.perp();
      double rta = pt.ra.cross(tangent);
      double rtb = pt.rb.cross(tangent);
      double kt = a.inv_mass + b.inv_mass + a.inv_inertia * rta * rta +
                  b.inv_inertia * rtb * rtb;
      pt.mass_t = kt > 0 ? 1.0 / kt : 0.0;
      pt.bias = kBaumgarte * inv_dt * std::max(0.0, pt.pen - kSlop);
      Vec2 rel = b.vel + Vec2{-b.omega * pt.rb.y, b.omega * pt.rb.x} - a.vel -
                 Vec2{-a.omega * pt.ra.y, a.omega * pt.ra.x};
      double vn = rel.dot(c.normal);
      pt.bounce = vn < -kRestitutionSpeed ? -cfg_.restitution * vn : 0.0;
      c.approach = std::max(c.approach, -vn);
    }
  }

  for (int iter = 0; iter < kSolverIterations; iter++) {
    for (Contact& c : contacts) {
      Body& a = bodies_[c.a];
      Body& b = bodies_[c.b];
      for (int k = 0; k < c.count; k++) {
        auto& pt = c.pts[k];
        Vec2 rel = b.vel + Vec2{-b.omega * pt.rb.y, b.omega * pt.rb.x} -
                   a.vel - Vec2{-a.omega * pt.ra.y, a.omega * pt.ra.x};
        double vn = rel.dot(c.normal);
        double lambda = -(vn - pt.bias - pt.bounce) * pt.mass_n;
        double new_accum = std::max(pt.accum_n + lambda, 0.0);
        lambda = new_accum - pt.accum_n;
        pt.accum_n = new_accum;
        Vec2 impulse = c.normal * lambda;
        a.vel -= impulse * a.inv_mass;
        a.omega -= a.inv_inertia * pt.ra.cross(impulse);
        b.vel += impulse * b.inv_mass;
        b.omega += b.inv_inertia * pt.rb.cross(impulse);

        rel = b.vel + Vec2{-b.omega * pt.rb.y, b.omega * pt.rb.x} - a.vel -
              Vec2{-a.omega * pt.ra.y, a.omega * pt.ra.x};
        Vec2 tangent = c.normal.perp();
        double vt = rel.dot(tangent);
        double lt = -vt * pt.mass_t;
        double max_t = cfg_.friction * pt.accum_n;
        double new_t = std::clamp(pt.accum_t + lt, -max_t, max_t);
        lt = new_t - pt.accum_t;
        pt.accum_t = new_t;
        Vec2 fimp = tangent * lt;
        a.vel -= fimp * a.inv_mass;
        a.omega -= a.inv_inertia * pt.ra.cross(fimp);
        b.vel += fimp * b.inv_mass;
        b.omega += b.inv_inertia * pt.rb.cross(fimp);
      }
    }
  }
}

double damage_from_contact(const Config& cfg, double impulse,
                           std::optional<BirdType> attacker, Material victim) {
  double mult = attacker ? damage_multiplier(cfg, *attacker, victim) : 1.0;
  return cfg.damage_scale * std::max(0.0, impulse - cfg.damage_threshold) *
         mult;
}

void SimState::detonate(const Vec2& center, double radius, double damage,
                        double impulse, std::optional<BirdType> attacker,
                        std::vector<std::string>& destroyed_queue) {
  for (auto& b : bodies_) {
    if (b.is_static || b.role != BodyRole::LevelObject) continue;
    Vec2 d = b.pos - center;
    double dist = d.length();
    if (dist >= radius) continue;
    double falloff = 1.0 - dist / radius;
    Vec2 dir = dist > 1e-9 ? d * (1.0 / dist) : Vec2{0, 1};
    b.vel += dir * (impulse * falloff * b.inv_mass);
    double mult = 1.0;
    if (b.kind == ObjectKind::Block && attacker)
      mult = damage_multiplier(cfg_, *attacker, b.material);
    b.health -= damage * falloff * mult;
    if (trace_)
      *trace_ << time_ << " blast@" << center.x << "," << center.y << " hits "
              << b.id << " dmg " << damage * falloff * mult << " health "
              << b.health << "\n";
    if (b.health <= 0) destroyed_queue.push_back(b.id);
  }
}

void SimState::process_destroyed(std::vector<std::string>& queue) {
  while (!queue.empty()) {
    std::string id = queue.front();
    queue.erase(queue.begin());
    auto it = std::find_if(bodies_.begin(), bodies_.end(),
                           [&](const Body& b) { return b.id == id; });
    if (it == bodies_.end()) continue;
    bool was_tnt = it->kind == ObjectKind::Tnt;
    Vec2 pos = it->pos;
    destroyed_log_.push_back(id);
    bodies_.erase(it);
    if (was_tnt)
      detonate(pos, cfg_.tnt_blast_radius, cfg_.tnt_blast_damage,
               cfg_.tnt_blast_impulse, std::nullopt, queue);
  }
}

void SimState::apply_damage(const std::vector<Contact>& contacts,
                            std::vector<ContactEvent>& events) {
  std::vector<std::string> destroyed_queue;
  std::vector<std::string> exploders;  // black birds / eggs that hit

  for (const Contact& c : contacts) {
    double total = 0.0;
    Vec2 point = c.pts[0].p;
    for (int k = 0; k < c.count; k++) total += c.pts[k].accum_n;
    if (total <= 1e-3) continue;
    Body& a = bodies_[c.a];
    Body& b = bodies_[c.b];
    events.push_back({a.id, b.id, total, point, time_});

    auto hurt = [&](Body& victim, const Body& other) {
      if (victim.is_static || victim.role != BodyRole::LevelObject) return;
      // resting loads do not wear blocks down; pigs and tnt still feel
      // sustained pressure (crush kills, hair triggers)
      if (victim.kind == ObjectKind::Block &&
          c.approach < cfg_.impact_speed_min)
        return;
      std::optional<BirdType> attacker;
      if (other.role == BodyRole::Bird) attacker = other.bird;
      // material multipliers only exist for blocks
      double delta =
          victim.kind == ObjectKind::Block
              ? damage_from_contact(cfg_, total, attacker, victim.material)
              : cfg_.damage_scale *
                    std::max(0.0, total - cfg_.damage_threshold);
      if (delta <= 0) return;
      victim.health -= delta;
      if (trace_)
        *trace_ << time_ << " hit " << victim.id << " by " << other.id << " J "
                << total << " dmg " << delta << " health " << victim.health
                << "\n";
      if (victim.health <= 0 &&
          std::find(destroyed_queue.begin(), destroyed_queue.end(),
                    victim.id) == destroyed_queue.end())
        destroyed_queue.push_back(victim.id);
    };
    hurt(a, b);
    hurt(b, a);

    for (Body* bird : {&a, &b}) {
      if (bird->role == BodyRole::LevelObject) continue;
      if (!bird->contacted) {
        bird->contacted = true;
        if ((bird->role == BodyRole::Bird && bird->bird == BirdType::Black &&
             !bird->tapped) ||
            bird->role == BodyRole::Egg)
          exploders.push_back(bird->id);
      }
    }
  }

  for (const auto& id : exploders) {
    auto it = std::find_if(bodies_.begin(), bodies_.end(),
                           [&](const Body& b) { return b.id == id; });
    if (it == bodies_.end()) continue;
    Vec2 pos = it->pos;
    bool egg = it->role == BodyRole::Egg;
    BirdType attacker = egg ? BirdType::White : it->bird;
    bodies_.erase(it);
    if (egg)
      detonate(pos, cfg_.white_egg_blast_radius, cfg_.white_egg_blast_damage,
               cfg_.white_egg_blast_impulse, attacker, destroyed_queue);
    else
      detonate(pos, cfg_.black_blast_radius, cfg_.black_blast_damage,
               cfg_.black_blast_impulse, attacker, destroyed_queue);
  }

  process_destroyed(destroyed_queue);
}

std::vector<ContactEvent> SimState::step() {
  for (auto& b : bodies_) {
    if (b.is_static) continue;
    b.vel.y -= cfg_.gravity * cfg_.dt;
  }

  std::vector<Contact> contacts;
  find_contacts(contacts);
  solve(contacts);

  for (auto& b : bodies_) {
    if (b.is_static) continue;
    b.pos += b.vel * cfg_.dt;
    b.angle += b.omega * cfg_.dt;
    b.omega *= 0.995;
  }

  // rolling resistance: bodies touching something shed speed so endless
  // rollers come to rest; free flight stays undamped
  for (const Contact& c : contacts) {
    bodies_[c.a].vel = bodies_[c.a].vel * 0.99;
    bodies_[c.b].vel = bodies_[c.b].vel * 0.99;
  }

  std::vector<ContactEvent> events;
  apply_damage(contacts, events);

  // spent projectiles and debris far outside the scene cannot come back;
  // drop them so the world can settle (after damage: contact indices above
  // must stay valid)
  bodies_.erase(std::remove_if(bodies_.begin(), bodies_.end(),
                               [](const Body& b) {
                                 return !b.is_static &&
                                        (b.pos.x < -25.0 || b.pos.x > 85.0 ||
                                         b.pos.y < -20.0);
                               }),
                bodies_.end());
  time_ += cfg_.dt;

  if (trace_) {
    for (const auto& b : bodies_) {
      if (b.is_static) continue;
      *trace_ << time_ << " " << b.id << " " << b.pos.x << " " << b.pos.y
              << " " << b.angle << " " << b.vel.x << " " << b.vel.y << " "
              << b.omega << "\n";
    }
  }
  return events;
}

void apply_tap(SimState& state) {
  Body* bird = nullptr;
  for (auto& b : state.bodies_)
    if (b.role == BodyRole::Bird && !b.contacted) {
      bird = &b;
      break;
    }
  if (!bird) throw ModelError("no bird in flight");
  if (bird->bird == BirdType::Red)
    throw ModelError("red bird has no tap power");
  if (bird->tapped) throw ModelError("tap already used");
  const Config& cfg = state.cfg_;
  switch (bird->bird) {
    case BirdType::Yellow:
      bird->vel = bird->vel * cfg.yellow_boost;
      bird->tapped = true;
      break;
    case BirdType::Blue: {
      bird->tapped = true;
      double speed = bird->vel.length();
      Vec2 dir = bird->vel.normalized();
      bird->mass = cfg.bird_mass * cfg.blue_split_mass_frac;
      bird->inv_mass = 1.0 / bird->mass;
      bird->inv_inertia = 2.0 / (bird->mass * bird->radius * bird->radius);
      Vec2 pos = bird->pos;
      std::string base = bird->id;
      for (int s = -1; s <= 1; s += 2) {
        Body split = *bird;
        split.id = base + (s < 0 ? "_a" : "_b");
        split.vel = rotate(dir, s * cfg.blue_split_angle) * speed;
        split.pos = pos;
        state.bodies_.push_back(split);
      }
      break;
    }
    case BirdType::Black: {
      Vec2 pos = bird->pos;
      std::vector<std::string> queue;
      std::string id = bird->id;
      state.bodies_.erase(
          std::find_if(state.bodies_.begin(), state.bodies_.end(),
                       [&](const Body& b) { return b.id == id; }));
      state.detonate(pos, cfg.black_blast_radius, cfg.black_blast_damage,
                     cfg.black_blast_impulse, BirdType::Black, queue);
      state.process_destroyed(queue);
      break;
    }
    case BirdType::White: {
      bird->tapped = true;
      Body egg;
      egg.id = bird->id + "_egg";
      egg.role = BodyRole::Egg;
      egg.is_circle = true;
      egg.radius = cfg.white_egg_radius;
      egg.mass = 0.5;
      egg.inv_mass = 2.0;
      egg.inv_inertia = 2.0 / (egg.mass * egg.radius * egg.radius);
      egg.pos = bird->pos - Vec2{0, bird->radius + egg.radius + 0.05};
      egg.vel = {bird->vel.x * 0.2, std::min(bird->vel.y, 0.0) - 5.0};
      bird->vel = {bird->vel.x, bird->vel.y + 6.0};  // recoil upwards
      state.bodies_.push_back(egg);
      break;
    }
    case BirdType::Red:
      break;
  }
}

double ballistic_path_length(const Vec2& from, double speed, double angle,
                             std::optional<Vec2> target, double gravity) {
  double vx = speed * std::cos(angle);
  double vy = speed * std::sin(angle);
  double t_end;
  if (target && vx > 1e-9 && target->x > from.x) {
    t_end = (target->x - from.x) / vx;
  } else {
    // until return to ground
    double disc = vy * vy + 2.0 * gravity * std::max(from.y, 0.0);
    t_end = (vy + std::sqrt(disc)) / gravity;
  }
  const int n = 400;
  double len = 0.0;
  Vec2 prev = from;
  for (int i = 1; i <= n; i++) {
    double t = t_end * i / n;
    Vec2 p{from.x + vx * t, from.y + vy * t - 0.5 * gravity * t * t};
    len += (p - prev).length();
    prev = p;
  }
  return len;
}

std::vector<double> launch_solutions(const Vec2& slingshot, double speed,
                                     const Vec2& target, double gravity) {
  double dx = target.x - slingshot.x;
  double dy = target.y - slingshot.y;
  if (dx <= 1e-9) return {};
  double v2 = speed * speed;
  double disc = v2 * v2 - gravity * (gravity * dx * dx + 2.0 * dy * v2);
  if (disc < 0) return {};
  double root = std::sqrt(disc);
  double low = std::atan2(v2 - root, gravity * dx);
  double high = std::atan2(v2 + root, gravity * dx);
  if (std::abs(low - high) < 1e-9) return {low};
  return {low, high};
}

InteractionOutcome execute_shot(SimState& state, const Shot& shot,
                                const Rect* watch_exit) {
  if (state.birds_.empty()) throw ModelError("no birds remaining");
  BirdType type = state.birds_.front();
  state.birds_.erase(state.birds_.begin());

  const Config& cfg = state.cfg_;
  double speed = shot.launch_speed > 0 ? shot.launch_speed : cfg.launch_speed;
  Vec2 launch = state.slingshot_;
  Vec2 vel{speed * std::cos(shot.release_angle),
           speed * std::sin(shot.release_angle)};
  state.spawn_bird(type, launch, vel);
  std::string bird_id = "bird_" + std::to_string(state.spawn_counter_ - 1);

  bool tap_pending = shot.tap_fraction.has_value() && bird_has_power(type);
  double tap_at = 0.0;
  if (tap_pending) {
    double total = ballistic_path_length(launch, speed, shot.release_angle,
                                         shot.target_point, cfg.gravity);
    tap_at = *shot.tap_fraction * total;
  }

  InteractionOutcome out;
  size_t destroyed_before = state.destroyed_log_.size();
  double swept = 0.0;
  Vec2 prev = launch;
  double rest_time = 0.0;
  double start_time = state.time_;
  std::vector<std::string> already_exited;
  if (watch_exit)
    for (const auto& b : state.bodies_)
      if (b.role == BodyRole::LevelObject && !b.is_static &&
          !watch_exit->contains(b.pos))
        already_exited.push_back(b.id);

  while (state.time_ - start_time < cfg.sim_time_cap) {
    if (tap_pending) {
      const Body* bird = state.find(bird_id);
      if (!bird || bird->contacted) {
        tap_pending = false;  // power expired
      } else {
        swept += (bird->pos - prev).length();
        prev = bird->pos;
        if (swept >= tap_at) {
          apply_tap(state);
          tap_pending = false;
        }
      }
    } else {
      const Body* bird = state.find(bird_id);
      if (bird) {
        swept += (bird->pos - prev).length();
        prev = bird->pos;
      }
    }

    auto events = state.step();
    for (const auto& e : events) {
      if (!out.first_hit && (e.a == bird_id || e.b == bird_id)) {
        out.first_hit = e;
        if (e.a == bird_id) std::swap(out.first_hit->a, out.first_hit->b);
      }
      if (e.impulse > cfg.damage_threshold) out.events.push_back(e);
    }

    if (watch_exit) {
      for (const auto& b : state.bodies_) {
        if (b.role != BodyRole::LevelObject || b.is_static) continue;
        if (watch_exit->contains(b.pos)) continue;
        if (std::find(already_exited.begin(), already_exited.end(), b.id) !=
            already_exited.end())
          continue;
        already_exited.push_back(b.id);
        out.exits.push_back({b.id, b.pos, b.vel, state.time_});
      }
    }

    if (state.at_rest()) {
      rest_time += cfg.dt;
      if (rest_time >= kSettleWindow) {
        out.settled = true;
        break;
      }
    } else {
      rest_time = 0.0;
    }
  }

  out.time_used = state.time_ - start_time;
  for (size_t i = destroyed_before; i < state.destroyed_log_.size(); i++)
    out.destroyed.push_back(state.destroyed_log_[i]);
  state.remove_projectiles();
  return out;
}

bool is_at_rest(const SimState& state, double window) {
  SimState copy = state;
  int steps = int(window / copy.config().dt + 0.5);
  for (int i = 0; i < steps; i++) copy.step();
  return copy.at_rest();
}

}  // namespace dlg
