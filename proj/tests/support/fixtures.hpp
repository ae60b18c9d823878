#pragma once

#include <cstdint>

#include "panoproj/raster.hpp"
#include "panoproj/geometry.hpp"

namespace panoproj::testing {

Image constant_image(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b);

/// Smooth deterministic color pattern over the whole sphere.
Image gradient_eri(int w, int h);

/// White ERI with one black great circle of the given plane normal painted
/// `half_width_rad` thick.
Image great_circle_eri(int w, int h, Vec3 normal, double half_width_rad);

/// White ERI with several black great circles through the view axis plus
/// pitched horizontal circles (structured background for warping tests).
Image lined_eri(int w, int h);

/// Adds a filled disc of `cls` around sphere direction (phi0, theta0) with
/// angular radius `radius_rad` to a class-label map.
void paint_disc(LabelMap& labels, double phi0, double theta0, double radius_rad,
                std::int32_t cls);

/// Paints the disc in image color space instead.
void paint_disc(Image& eri, double phi0, double theta0, double radius_rad, std::uint8_t r,
                std::uint8_t g, std::uint8_t b);

/// Deterministic pseudo-random label rectangles (same-class blobs allowed
/// to touch the horizontal seam).
LabelMap random_label_raster(int w, int h, int classes, std::uint32_t seed);

/// Small xorshift generator for reproducible fixtures.
struct Rng {
  std::uint32_t state;
  explicit Rng(std::uint32_t seed) : state(seed ? seed : 1) {}
  std::uint32_t next() {
    state ^= state << 13;
    state ^= state >> 17;
    state ^= state << 5;
    return state;
  }
  double uniform() { return next() / 4294967296.0; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint32_t>(n)); }
};

}  // namespace panoproj::testing
