#pragma once

#include "panoproj/raster.hpp"
#include "panoproj/sampling.hpp"
#include "panoproj/viewport_grid.hpp"

namespace panoproj {

/// Raised when a viewport pixel cannot be rendered; carries the pixel.
struct RenderError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Sphere <-> viewport-plane mapping used by the renderer. GPP shares the
/// Pannini horizon extent, so both use the same plane grid.
struct GppParams {
  double d = 0.0;
};

Image render_viewport(const Image& eri, const ViewportSpec& spec, PanniniParams params);
LabelMap render_viewport(const LabelMap& eri, const ViewportSpec& spec, PanniniParams params);

Image render_viewport_gpp(const Image& eri, const ViewportSpec& spec, GppParams params);
LabelMap render_viewport_gpp(const LabelMap& eri, const ViewportSpec& spec, GppParams params);

CubeFaces eri_to_cube(const Image& eri, int face_px);
LabelCubeFaces eri_to_cube(const LabelMap& eri, int face_px);

Image cube_to_eri(const CubeFaces& faces, int out_w, int out_h);
LabelMap cube_to_eri(const LabelCubeFaces& faces, int out_w, int out_h);

/// Viewing direction at the center of a cube face.
SpherePoint cube_face_direction(CubeFace f);

}  // namespace panoproj
