#pragma once

#include "panoproj/mesh.hpp"

namespace panoproj {

/// Per-pixel source positions for backward warping, in pixel units.
struct WarpField {
  int width = 0;
  int height = 0;
  std::vector<Vec2> src;

  Vec2 at(int x, int y) const { return src[static_cast<std::size_t>(y) * width + x]; }
};

/// Bilinearly upsamples mesh vertex positions to a per-pixel mapping,
/// rescaled from grid-index space to pixel space.
WarpField upsample_mesh(const VertexMesh& mesh, int out_w, int out_h);

/// Backward warp: each output pixel samples `src` at the mapped position
/// with bilinear interpolation; out-of-bounds samples replicate the border.
Image warp_image(const Image& src, const WarpField& field);

}  // namespace panoproj
