#include "panoproj/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace panoproj {

namespace {

double wrap_u(double u, int width) {
  u = std::fmod(u, width);
  if (u < 0.0) u += width;
  return u < width ? u : 0.0;  // fmod may return exactly `width` after rounding
}

int wrap_index(int i, int width) {
  i %= width;
  return i < 0 ? i + width : i;
}

}  // namespace

Vec2 eri_coords(SpherePoint p, int width, int height) {
  const SpherePoint n = normalized(p);
  return {(n.phi / (2.0 * kPi) + 0.5) * width - 0.5,
          (0.5 - n.theta / kPi) * height - 0.5};
}

Rgb pixel_rgb(const Image& img, int x, int y) {
  return {static_cast<double>(img.at(x, y, 0)), static_cast<double>(img.at(x, y, 1)),
          static_cast<double>(img.at(x, y, 2))};
}

std::uint8_t quantize(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

Rgb sample_bilinear_wrap(const Image& img, double u, double v) {
  const double uw = wrap_u(u, img.width);
  const int x0 = static_cast<int>(std::floor(uw));
  const int x1 = wrap_index(x0 + 1, img.width);
  const double fx = uw - x0;

  const double vc = std::clamp(v, 0.0, static_cast<double>(img.height - 1));
  const int y0 = static_cast<int>(std::floor(vc));
  const int y1 = std::min(y0 + 1, img.height - 1);
  const double fy = vc - y0;

  Rgb out;
  for (int c = 0; c < 3; ++c) {
    const double top = (1.0 - fx) * img.at(x0, y0, c) + fx * img.at(x1, y0, c);
    const double bot = (1.0 - fx) * img.at(x0, y1, c) + fx * img.at(x1, y1, c);
    out[c] = (1.0 - fy) * top + fy * bot;
  }
  return out;
}

Rgb sample_bilinear_clamp(const Image& img, double u, double v) {
  const double uc = std::clamp(u, 0.0, static_cast<double>(img.width - 1));
  const double vc = std::clamp(v, 0.0, static_cast<double>(img.height - 1));
  const int x0 = static_cast<int>(std::floor(uc));
  const int x1 = std::min(x0 + 1, img.width - 1);
  const int y0 = static_cast<int>(std::floor(vc));
  const int y1 = std::min(y0 + 1, img.height - 1);
  const double fx = uc - x0;
  const double fy = vc - y0;

  Rgb out;
  for (int c = 0; c < 3; ++c) {
    const double top = (1.0 - fx) * img.at(x0, y0, c) + fx * img.at(x1, y0, c);
    const double bot = (1.0 - fx) * img.at(x0, y1, c) + fx * img.at(x1, y1, c);
    out[c] = (1.0 - fy) * top + fy * bot;
  }
  return out;
}

Rgb sample_eri(const Image& eri, SpherePoint p, Interp interp) {
  const Vec2 uv = eri_coords(p, eri.width, eri.height);
  if (interp == Interp::Bilinear) return sample_bilinear_wrap(eri, uv.x, uv.y);

  const int x = wrap_index(static_cast<int>(std::lround(uv.x)), eri.width);
  const int y = std::clamp(static_cast<int>(std::lround(uv.y)), 0, eri.height - 1);
  return pixel_rgb(eri, x, y);
}

std::int32_t sample_eri(const LabelMap& eri, SpherePoint p, Interp interp) {
  if (interp == Interp::Bilinear)
    throw std::invalid_argument("label rasters require nearest-neighbor sampling");
  const Vec2 uv = eri_coords(p, eri.width, eri.height);
  const int x = wrap_index(static_cast<int>(std::lround(uv.x)), eri.width);
  const int y = std::clamp(static_cast<int>(std::lround(uv.y)), 0, eri.height - 1);
  return eri.at(x, y);
}

}  // namespace panoproj
