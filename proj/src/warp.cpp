#include "panoproj/warp.hpp"

#include <stdexcept>

#include "panoproj/sampling.hpp"

namespace panoproj {

WarpField upsample_mesh(const VertexMesh& mesh, int out_w, int out_h) {
  if (out_w < mesh.cols || out_h < mesh.rows)
    throw std::invalid_argument("upsample_mesh: output must be at least the mesh size");

  WarpField field;
  field.width = out_w;
  field.height = out_h;
  field.src.resize(static_cast<std::size_t>(out_w) * out_h);

  const double sx_scale = static_cast<double>(mesh.cols) / out_w;
  const double sy_scale = static_cast<double>(mesh.rows) / out_h;
  for (int y = 0; y < out_h; ++y) {
    const double sy = (y + 0.5) * sy_scale - 0.5;
    for (int x = 0; x < out_w; ++x) {
      const double sx = (x + 0.5) * sx_scale - 0.5;
      const Vec2 g = mesh_sample(mesh, sx, sy);
      field.src[static_cast<std::size_t>(y) * out_w + x] = {g.x / sx_scale - 0.5,
                                                            g.y / sy_scale - 0.5};
    }
  }
  return field;
}

Image warp_image(const Image& src, const WarpField& field) {
  if (field.width < 1 || field.height < 1)
    throw std::invalid_argument("warp_image: empty warp field");

  Image out(field.width, field.height);
  for (int y = 0; y < field.height; ++y) {
    for (int x = 0; x < field.width; ++x) {
      const Vec2 s = field.at(x, y);
      const Rgb rgb = sample_bilinear_clamp(src, s.x, s.y);
      for (int c = 0; c < 3; ++c) out.at(x, y, c) = quantize(rgb[c]);
    }
  }
  return out;
}

}  // namespace panoproj
