#pragma once

#include <cmath>

namespace rbc {

/// Planar coordinate in meters.
struct Point {
  double x{0.0};
  double y{0.0};

  friend bool operator==(const Point&, const Point&) = default;
};

inline double squared_distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Axis-aligned region [0, length] x [0, width], meters.
struct Region {
  double length{25.0};
  double width{20.0};

  bool contains(Point p) const {
    return p.x >= 0.0 && p.x <= length && p.y >= 0.0 && p.y <= width;
  }
  double diagonal() const { return std::hypot(length, width); }
  void validate() const;

  friend bool operator==(const Region&, const Region&) = default;
};

}  // namespace rbc
