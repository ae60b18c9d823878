#pragma once

#include <vector>

#include "panoproj/raster.hpp"
#include "panoproj/viewport_grid.hpp"

namespace panoproj {

/// Grid of 2D vertices in grid-index space. The undeformed mesh places
/// vertex (row, col) at (col + 0.5, row + 0.5), inside [0, cols] x [0, rows].
struct VertexMesh {
  int cols = 0;
  int rows = 0;
  std::vector<Vec2> v;

  VertexMesh() = default;
  VertexMesh(int c, int r) : cols(c), rows(r), v(static_cast<std::size_t>(c) * r) {}

  Vec2& at(int row, int col) { return v[static_cast<std::size_t>(row) * cols + col]; }
  Vec2 at(int row, int col) const { return v[static_cast<std::size_t>(row) * cols + col]; }
  int index(int row, int col) const { return row * cols + col; }
  int vertex_count() const { return cols * rows; }
};

VertexMesh uniform_mesh(int cols, int rows);

/// Bilinear interpolation of vertex values at lattice coordinates
/// (sx, sy) where vertex (row, col) sits at (col, row); clamped at edges.
Vec2 mesh_sample(const VertexMesh& mesh, double sx, double sy);

/// Background mesh (uniform grid over the globally optimized viewport) and
/// the foreground mesh: the same sphere content reprojected with the
/// foreground parameters, expressed in the background grid-index space.
struct MeshPair {
  VertexMesh background;
  VertexMesh foreground;
  std::vector<std::uint8_t> clamped;  // per-vertex: sphere point left the forward domain

  int cols() const { return background.cols; }
  int rows() const { return background.rows; }
};

MeshPair build_meshes(PanniniParams background, PanniniParams foreground,
                      const ViewportSpec& spec, int mesh_cols, int mesh_rows);

/// Sigmoid correction strength of a vertex: 0.01 at the mesh center,
/// 0.5 at half the center-to-corner distance, 0.99 at the corner.
double correction_strength(int row, int col, int cols, int rows);

/// The same sigmoid as a function of radial distance.
double correction_strength_at(double radius, double max_radius);

/// Binary mask of viewport pixels whose vertex displacement between the
/// two meshes exceeds `threshold` grid units.
LabelMap flow_mask(const VertexMesh& base, const VertexMesh& optimized, int out_w,
                   int out_h, double threshold);

}  // namespace panoproj
