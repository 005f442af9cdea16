#pragma once

#include <algorithm>
#include <array>
#include <cmath>

namespace dlg {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  Vec2& operator-=(const Vec2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double length() const { return std::sqrt(x * x + y * y); }
  double length_sq() const { return x * x + y * y; }
  Vec2 normalized() const {
    double len = length();
    return len > 0.0 ? Vec2{x / len, y / len} : Vec2{};
  }
  Vec2 perp() const { return {-y, x}; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

// Counter-clockwise rotation by `angle` radians.
inline Vec2 rotate(const Vec2& v, double angle) {
  double c = std::cos(angle), s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

struct Rect {
  Vec2 min;
  Vec2 max;

  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
  double area() const { return width() * height(); }
  Vec2 center() const { return {(min.x + max.x) * 0.5, (min.y + max.y) * 0.5}; }

  bool contains(const Vec2& p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
  }
  bool overlaps(const Rect& o) const {
    return min.x <= o.max.x && max.x >= o.min.x && min.y <= o.max.y &&
           max.y >= o.min.y;
  }
  Rect united(const Rect& o) const {
    return {{std::min(min.x, o.min.x), std::min(min.y, o.min.y)},
            {std::max(max.x, o.max.x), std::max(max.y, o.max.y)}};
  }
  Rect expanded(double m) const {
    return {{min.x - m, min.y - m}, {max.x + m, max.y + m}};
  }
};

// Axis-aligned bounds of a rectangle of half-extents (hw, hh) rotated by
// `angle` about `center`.
inline Rect obb_bounds(const Vec2& center, double hw, double hh, double angle) {
  double c = std::abs(std::cos(angle)), s = std::abs(std::sin(angle));
  double ex = hw * c + hh * s;
  double ey = hw * s + hh * c;
  return {{center.x - ex, center.y - ey}, {center.x + ex, center.y + ey}};
}

inline std::array<Vec2, 4> obb_corners(const Vec2& center, double hw, double hh,
                                       double angle) {
  Vec2 ax = rotate({1, 0}, angle);
  Vec2 ay = rotate({0, 1}, angle);
  return {center + ax * hw + ay * hh, center - ax * hw + ay * hh,
          center - ax * hw - ay * hh, center + ax * hw - ay * hh};
}

}  // namespace dlg
