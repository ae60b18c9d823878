#include "panoproj/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace panoproj {

VertexMesh uniform_mesh(int cols, int rows) {
  if (cols < 2 || rows < 2)
    throw std::invalid_argument("uniform_mesh: mesh must be at least 2x2");
  VertexMesh mesh(cols, rows);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) mesh.at(r, c) = {c + 0.5, r + 0.5};
  return mesh;
}

Vec2 mesh_sample(const VertexMesh& mesh, double sx, double sy) {
  // Outside the vertex hull the edge cells extend linearly, so the outer
  // half-cell band extrapolates instead of flattening.
  const int c0 = std::clamp(static_cast<int>(std::floor(sx)), 0, mesh.cols - 2);
  const int r0 = std::clamp(static_cast<int>(std::floor(sy)), 0, mesh.rows - 2);
  const double fx = sx - c0;
  const double fy = sy - r0;

  const Vec2 v00 = mesh.at(r0, c0);
  const Vec2 v10 = mesh.at(r0, c0 + 1);
  const Vec2 v01 = mesh.at(r0 + 1, c0);
  const Vec2 v11 = mesh.at(r0 + 1, c0 + 1);
  return {(1.0 - fy) * ((1.0 - fx) * v00.x + fx * v10.x) +
              fy * ((1.0 - fx) * v01.x + fx * v11.x),
          (1.0 - fy) * ((1.0 - fx) * v00.y + fx * v10.y) +
              fy * ((1.0 - fx) * v01.y + fx * v11.y)};
}

MeshPair build_meshes(PanniniParams background, PanniniParams foreground,
                      const ViewportSpec& spec, int mesh_cols, int mesh_rows) {
  background.validate();
  foreground.validate();
  spec.validate();

  MeshPair pair;
  pair.background = uniform_mesh(mesh_cols, mesh_rows);
  pair.foreground = VertexMesh(mesh_cols, mesh_rows);
  pair.clamped.assign(static_cast<std::size_t>(mesh_cols) * mesh_rows, 0);

  const double aspect = spec.aspect();
  const PlaneGrid fg_grid = make_plane_grid(foreground, spec.hfov, mesh_cols, mesh_rows, aspect);
  const PlaneGrid bg_grid = make_plane_grid(background, spec.hfov, mesh_cols, mesh_rows, aspect);

  // Largest longitude/latitude the background projection can represent.
  const double phi_limit =
      std::min(std::acos(std::clamp(kDomainEpsilon * 2.0 - background.d, -1.0, 1.0)),
               kPi - 2.0 * kDomainEpsilon);
  const double theta_limit = kPi / 2.0 - 2.0 * kDomainEpsilon;

  for (int r = 0; r < mesh_rows; ++r) {
    for (int c = 0; c < mesh_cols; ++c) {
      const PlanePoint fg_plane = fg_grid.to_plane(c + 0.5, r + 0.5);
      SpherePoint sphere = pannini_backward(fg_plane, foreground);
      if (std::abs(sphere.phi) > phi_limit) {
        sphere.phi = std::copysign(phi_limit, sphere.phi);
        pair.clamped[pair.background.index(r, c)] = 1;
      }
      if (std::abs(sphere.theta) > theta_limit) {
        sphere.theta = std::copysign(theta_limit, sphere.theta);
        pair.clamped[pair.background.index(r, c)] = 1;
      }
      const PlanePoint bg_plane = pannini_forward(sphere, background);
      pair.foreground.at(r, c) = bg_grid.to_grid(bg_plane);
    }
  }
  return pair;
}

double correction_strength_at(double radius, double max_radius) {
  if (!(max_radius > 0.0))
    throw std::invalid_argument("correction_strength_at: max_radius must be positive");
  // r1, r2 chosen so the sigmoid hits 0.01 at the center and 0.99 at the corner.
  const double r1 = max_radius / 2.0;
  const double r2 = max_radius / (2.0 * std::log(99.0));
  return 1.0 / (1.0 + std::exp(-(radius - r1) / r2));
}

double correction_strength(int row, int col, int cols, int rows) {
  if (cols < 2 || rows < 2)
    throw std::invalid_argument("correction_strength: mesh must be at least 2x2");
  if (row < 0 || row >= rows || col < 0 || col >= cols)
    throw std::out_of_range("correction_strength: index outside the grid");

  const double cx = cols / 2.0;
  const double cy = rows / 2.0;
  const double r_max = std::hypot((cols - 1) / 2.0, (rows - 1) / 2.0);
  const double r_i = std::hypot(col + 0.5 - cx, row + 0.5 - cy);
  return correction_strength_at(r_i, r_max);
}

LabelMap flow_mask(const VertexMesh& base, const VertexMesh& optimized, int out_w,
                   int out_h, double threshold) {
  if (base.cols != optimized.cols || base.rows != optimized.rows)
    throw std::invalid_argument("flow_mask: mesh dimensions do not match");

  VertexMesh magnitude(base.cols, base.rows);
  for (std::size_t i = 0; i < magnitude.v.size(); ++i)
    magnitude.v[i] = {(optimized.v[i] - base.v[i]).norm(), 0.0};

  LabelMap mask(out_w, out_h);
  for (int y = 0; y < out_h; ++y) {
    const double sy = (y + 0.5) * base.rows / out_h - 0.5;
    for (int x = 0; x < out_w; ++x) {
      const double sx = (x + 0.5) * base.cols / out_w - 0.5;
      mask.at(x, y) = mesh_sample(magnitude, sx, sy).x > threshold ? 1 : 0;
    }
  }
  return mask;
}

}  // namespace panoproj
