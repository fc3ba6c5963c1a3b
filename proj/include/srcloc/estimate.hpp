#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>

#include "srcloc/geometry.hpp"

namespace srcloc {

/// A single location estimate in area coordinates.
struct LocationEstimate {
  double x = 0.0;
  double y = 0.0;

  Point point() const { return {x, y}; }
};

inline double estimate_error(LocationEstimate e, Point truth) {
  return distance(e.point(), truth);
}

/// Uniform grid of candidate locations over a deployment area. Cells are
/// cell_size squares; a partial last row/column is clipped to the area so
/// every candidate (cell center) stays inside the bounds.
class GridSpec {
 public:
  explicit GridSpec(const AreaBounds& bounds, double cell_size = 1.0)
      : bounds_(bounds), cell_size_(cell_size) {
    if (!(cell_size > 0.0)) {
      throw std::invalid_argument("GridSpec: cell_size must be positive");
    }
    cols_ = static_cast<int>(std::ceil(bounds.width() / cell_size));
    rows_ = static_cast<int>(std::ceil(bounds.height() / cell_size));
    cols_ = std::max(cols_, 1);
    rows_ = std::max(rows_, 1);
  }

  int cols() const { return cols_; }
  int rows() const { return rows_; }
  int cell_count() const { return cols_ * rows_; }
  double cell_size() const { return cell_size_; }
  const AreaBounds& bounds() const { return bounds_; }

  /// Center of cell (col, row), clipped to the area for partial cells.
  Point center(int col, int row) const {
    const double x0 = col * cell_size_;
    const double x1 = std::min((col + 1) * cell_size_, bounds_.width());
    const double y0 = row * cell_size_;
    const double y1 = std::min((row + 1) * cell_size_, bounds_.height());
    return {0.5 * (x0 + x1), 0.5 * (y0 + y1)};
  }

  Point center(int index) const { return center(index % cols_, index / cols_); }

 private:
  AreaBounds bounds_;
  double cell_size_;
  int cols_ = 0;
  int rows_ = 0;
};

}  // namespace srcloc
