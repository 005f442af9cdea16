#include "dlg/render.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace dlg {

namespace {

constexpr double kScale = 12.0;

const char* fill_for(const GameObject& o) {
  switch (o.kind) {
    case ObjectKind::Pig: return "#6abe30";
    case ObjectKind::Tnt: return "#e04b3a";
    case ObjectKind::Platform: return "#5a4632";
    case ObjectKind::Block:
      switch (o.material) {
        case Material::Wood: return "#c8913a";
        case Material::Stone: return "#8b8b8b";
        case Material::Ice: return "#a8d8f0";
      }
  }
  return "#000000";
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

bool projectile_id(const std::string& id) {
  return id.rfind("bird_", 0) == 0 || id.rfind("egg", 0) == 0;
}

}  // namespace

std::string render_level(const Level& level, const SolutionStrategy* solution,
                         const Config& cfg) {
  const Rect& b = level.bounds;
  auto sx = [&](double x) { return (x - b.min.x) * kScale; };
  auto sy = [&](double y) { return (b.max.y - y) * kScale; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
      << num(b.width() * kScale) << "\" height=\"" << num(b.height() * kScale)
      << "\" viewBox=\"0 0 " << num(b.width() * kScale) << " "
      << num(b.height() * kScale) << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"#e8f4ff\"/>\n";
  // ground
  svg << "<rect x=\"0\" y=\"" << num(sy(0.0)) << "\" width=\""
      << num(b.width() * kScale) << "\" height=\"" << num(b.max.y * 0 + 8)
      << "\" fill=\"#7a5b36\"/>\n";
  // slingshot
  svg << "<line x1=\"" << num(sx(level.slingshot.x)) << "\" y1=\""
      << num(sy(0.0)) << "\" x2=\"" << num(sx(level.slingshot.x)) << "\" y2=\""
      << num(sy(level.slingshot.y)) << "\" stroke=\"#5a3d1e\" "
      << "stroke-width=\"4\"/>\n";

  for (const auto& o : level.objects) {
    if (o.is_circle()) {
      svg << "<circle cx=\"" << num(sx(o.position.x)) << "\" cy=\""
          << num(sy(o.position.y)) << "\" r=\"" << num(o.width * 0.5 * kScale)
          << "\" fill=\"" << fill_for(o)
          << "\" stroke=\"#333\" stroke-width=\"1\"/>\n";
      continue;
    }
    double w = o.width * kScale, h = o.height * kScale;
    svg << "<rect x=\"" << num(sx(o.position.x) - w * 0.5) << "\" y=\""
        << num(sy(o.position.y) - h * 0.5) << "\" width=\"" << num(w)
        << "\" height=\"" << num(h) << "\" fill=\"" << fill_for(o)
        << "\" stroke=\"#333\" stroke-width=\"1\"";
    if (o.rotation != 0.0)
      svg << " transform=\"rotate(" << num(-o.rotation * 180.0 / M_PI) << " "
          << num(sx(o.position.x)) << " " << num(sy(o.position.y)) << ")\"";
    svg << "/>\n";
  }

  if (solution) {
    SimState sim(level, cfg);
    for (size_t i = 0; i < solution->shots.size(); i++) {
      const Shot& shot = solution->shots[i];
      if (sim.birds_remaining().empty()) break;

      std::ostringstream trace;
      sim.set_trace(&trace);
      execute_shot(sim, shot);
      sim.set_trace(nullptr);

      std::map<std::string, std::vector<Vec2>> paths;
      std::istringstream in(trace.str());
      double t, x, y, angle, vx, vy, omega;
      std::string id;
      while (in >> t >> id >> x >> y >> angle >> vx >> vy >> omega)
        paths[id].push_back({x, y});

      auto polyline = [&](const std::vector<Vec2>& pts, const char* stroke,
                          const char* dash) {
        svg << "<polyline fill=\"none\" stroke=\"" << stroke
            << "\" stroke-width=\"2\"";
        if (dash) svg << " stroke-dasharray=\"" << dash << "\"";
        svg << " points=\"";
        for (size_t k = 0; k < pts.size(); k += 4)
          svg << num(sx(pts[k].x)) << "," << num(sy(pts[k].y)) << " ";
        svg << "\"/>\n";
      };

      for (const auto& [pid, pts] : paths) {
        if (pts.size() < 2) continue;
        if (projectile_id(pid)) {
          polyline(pts, "#d4322b", "6 4");  // shot arc, dashed
        } else {
          double travel = 0.0;
          for (size_t k = 1; k < pts.size(); k++)
            travel += (pts[k] - pts[k - 1]).length();
          if (travel > 1.5)
            polyline(pts, "#2a6fd6", nullptr);  // displaced object path
        }
      }

      // shot-order numeral near the launch point
      svg << "<text x=\"" << num(sx(level.slingshot.x) + 8.0 + 14.0 * double(i))
          << "\" y=\"" << num(sy(level.slingshot.y) - 1.0)
          << "\" font-size=\"14\" fill=\"#d4322b\">" << (i + 1) << "</text>\n";

      if (shot.tap_fraction) {
        // label at the tap fraction of the bird's flight path
        Vec2 at = level.slingshot;
        for (const auto& [pid, pts] : paths) {
          if (!projectile_id(pid) || pid.rfind("bird_", 0) != 0) continue;
          double total = ballistic_path_length(
              level.slingshot, shot.launch_speed, shot.release_angle,
              shot.target_point, cfg.gravity);
          double want = *shot.tap_fraction * total, walked = 0.0;
          at = pts.front();
          for (size_t k = 1; k < pts.size() && walked < want; k++) {
            walked += (pts[k] - pts[k - 1]).length();
            at = pts[k];
          }
          break;
        }
        svg << "<text x=\"" << num(sx(at.x) + 4.0) << "\" y=\""
            << num(sy(at.y) - 4.0) << "\" font-size=\"12\" fill=\"#1d3f8f\">"
            << "Tap at " << int(std::lround(*shot.tap_fraction * 100.0))
            << "%</text>\n";
      }
    }
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace dlg
