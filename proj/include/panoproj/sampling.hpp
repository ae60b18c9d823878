#pragma once

#include <array>

#include "panoproj/projection.hpp"
#include "panoproj/raster.hpp"

namespace panoproj {

enum class Interp { Nearest, Bilinear };

using Rgb = std::array<double, 3>;

/// Continuous pixel coordinates of a sphere point on a full equirectangular
/// raster: u = (phi/2pi + 1/2) W - 1/2, v = (1/2 - theta/pi) H - 1/2.
/// u wraps horizontally, v clamps vertically.
Vec2 eri_coords(SpherePoint p, int width, int height);

Rgb sample_eri(const Image& eri, SpherePoint p, Interp interp = Interp::Bilinear);

/// Label rasters must be sampled with nearest neighbor; requesting
/// bilinear interpolation is a contract violation.
std::int32_t sample_eri(const LabelMap& eri, SpherePoint p, Interp interp = Interp::Nearest);

/// Bilinear sample with horizontal wrap and vertical clamp.
Rgb sample_bilinear_wrap(const Image& img, double u, double v);
/// Bilinear sample clamped to the image borders on both axes.
Rgb sample_bilinear_clamp(const Image& img, double u, double v);

Rgb pixel_rgb(const Image& img, int x, int y);
std::uint8_t quantize(double v);

}  // namespace panoproj
