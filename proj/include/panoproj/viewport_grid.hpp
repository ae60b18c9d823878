#pragma once

#include "panoproj/projection.hpp"

namespace panoproj {

/// Affine map between grid coordinates and viewport plane coordinates.
/// Grid coordinates cover [0, cols] x [0, rows]; the sample position of
/// cell (row n, col m) is (m + 0.5, n + 0.5). Plane y points up, grid y
/// points down:
///   x = 2 hw (gx/cols - 1/2),  y = 2 hh (1/2 - gy/rows).
struct PlaneGrid {
  int cols = 0;
  int rows = 0;
  double half_width = 0.0;
  double half_height = 0.0;

  PlanePoint to_plane(double gx, double gy) const {
    return {2.0 * half_width * (gx / cols - 0.5),
            2.0 * half_height * (0.5 - gy / rows)};
  }

  Vec2 to_grid(PlanePoint q) const {
    return {cols * (q.x / (2.0 * half_width) + 0.5),
            rows * (0.5 - q.y / (2.0 * half_height))};
  }
};

PlaneGrid make_plane_grid(PanniniParams params, double hfov, int cols, int rows,
                          double aspect);

/// Plane coordinates of cell (row, col); sample position is the cell center.
PlanePoint grid_to_plane(int row, int col, PanniniParams params, double hfov,
                         int cols, int rows, double aspect);

}  // namespace panoproj
