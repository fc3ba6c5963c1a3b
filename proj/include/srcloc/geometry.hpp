#pragma once

#include <cmath>
#include <stdexcept>

namespace srcloc {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Euclidean distance. Uses sqrt(dx^2 + dy^2) rather than hypot so that
/// scaling all coordinates by an exact power of two scales the result
/// exactly (hypot's internal rescaling does not guarantee that).
inline double distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

inline double squared_distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

/// Axis-aligned deployment area [0, width] x [0, height].
class AreaBounds {
 public:
  AreaBounds(double width, double height) : width_(width), height_(height) {
    if (!(width > 0.0) || !(height > 0.0)) {
      throw std::invalid_argument("AreaBounds: width and height must be positive");
    }
  }

  double width() const { return width_; }
  double height() const { return height_; }

  bool contains(Point p) const {
    return p.x >= 0.0 && p.x <= width_ && p.y >= 0.0 && p.y <= height_;
  }

 private:
  double width_;
  double height_;
};

}  // namespace srcloc
