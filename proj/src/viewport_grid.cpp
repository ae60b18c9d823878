#include "panoproj/viewport_grid.hpp"

#include <stdexcept>

namespace panoproj {

PlaneGrid make_plane_grid(PanniniParams params, double hfov, int cols, int rows,
                          double aspect) {
  if (cols < 1 || rows < 1)
    throw std::invalid_argument("make_plane_grid: grid must be at least 1x1");
  const PlaneExtent extent = viewport_plane_extent(params, hfov, aspect);
  return {cols, rows, extent.half_width, extent.half_height};
}

PlanePoint grid_to_plane(int row, int col, PanniniParams params, double hfov,
                         int cols, int rows, double aspect) {
  if (row < 0 || row >= rows || col < 0 || col >= cols)
    throw std::out_of_range("grid_to_plane: index outside the grid");
  const PlaneGrid grid = make_plane_grid(params, hfov, cols, rows, aspect);
  return grid.to_plane(col + 0.5, row + 0.5);
}

}  // namespace panoproj
