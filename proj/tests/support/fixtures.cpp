#include "support/fixtures.hpp"

#include <cmath>

#include "panoproj/projection.hpp"
#include "panoproj/sampling.hpp"

namespace panoproj::testing {

namespace {

SpherePoint pixel_direction(int x, int y, int w, int h) {
  return {((x + 0.5) / w - 0.5) * 2.0 * kPi, (0.5 - (y + 0.5) / h) * kPi};
}

double angular_distance(SpherePoint a, SpherePoint b) {
  const Vec3 va = sphere_to_unit(a);
  const Vec3 vb = sphere_to_unit(b);
  const double dot = va.x * vb.x + va.y * vb.y + va.z * vb.z;
  return std::acos(std::clamp(dot, -1.0, 1.0));
}

}  // namespace

Image constant_image(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  Image img(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      img.at(x, y, 0) = r;
      img.at(x, y, 1) = g;
      img.at(x, y, 2) = b;
    }
  return img;
}

Image gradient_eri(int w, int h) {
  Image img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const SpherePoint p = pixel_direction(x, y, w, h);
      img.at(x, y, 0) = static_cast<std::uint8_t>(127.5 * (1.0 + std::sin(p.phi)));
      img.at(x, y, 1) = static_cast<std::uint8_t>(127.5 * (1.0 + std::sin(2.0 * p.theta)));
      img.at(x, y, 2) = static_cast<std::uint8_t>(127.5 * (1.0 + std::cos(p.phi) * std::cos(p.theta)));
    }
  }
  return img;
}

Image great_circle_eri(int w, int h, Vec3 normal, double half_width_rad) {
  const double len = std::sqrt(normal.x * normal.x + normal.y * normal.y + normal.z * normal.z);
  Image img = constant_image(w, h, 255, 255, 255);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const Vec3 v = sphere_to_unit(pixel_direction(x, y, w, h));
      const double d = std::abs(v.x * normal.x + v.y * normal.y + v.z * normal.z) / len;
      if (std::asin(std::min(d, 1.0)) < half_width_rad) {
        img.at(x, y, 0) = 0;
        img.at(x, y, 1) = 0;
        img.at(x, y, 2) = 0;
      }
    }
  }
  return img;
}

Image lined_eri(int w, int h) {
  Image img = constant_image(w, h, 230, 230, 230);
  const double thick = deg_to_rad(0.6);
  auto stroke = [&](Vec3 n) {
    const double len = std::sqrt(n.x * n.x + n.y * n.y + n.z * n.z);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const Vec3 v = sphere_to_unit(pixel_direction(x, y, w, h));
        const double d = std::abs(v.x * n.x + v.y * n.y + v.z * n.z) / len;
        if (std::asin(std::min(d, 1.0)) < thick) {
          img.at(x, y, 0) = 30;
          img.at(x, y, 1) = 30;
          img.at(x, y, 2) = 30;
        }
      }
    }
  };
  // Circles through the view axis rolled at several angles, plus pitched
  // horizontal circles.
  for (double deg : {0.0, 30.0, 60.0, 90.0, 120.0, 150.0}) {
    const double a = deg_to_rad(deg);
    stroke({std::sin(a), std::cos(a), 0.0});
  }
  for (double deg : {-30.0, 30.0}) {
    const double a = deg_to_rad(deg);
    stroke({0.0, std::cos(a), std::sin(a)});
  }
  return img;
}

void paint_disc(LabelMap& labels, double phi0, double theta0, double radius_rad,
                std::int32_t cls) {
  for (int y = 0; y < labels.height; ++y) {
    for (int x = 0; x < labels.width; ++x) {
      const SpherePoint p = pixel_direction(x, y, labels.width, labels.height);
      if (angular_distance(p, {phi0, theta0}) < radius_rad) labels.at(x, y) = cls;
    }
  }
}

void paint_disc(Image& eri, double phi0, double theta0, double radius_rad, std::uint8_t r,
                std::uint8_t g, std::uint8_t b) {
  for (int y = 0; y < eri.height; ++y) {
    for (int x = 0; x < eri.width; ++x) {
      const SpherePoint p = pixel_direction(x, y, eri.width, eri.height);
      if (angular_distance(p, {phi0, theta0}) < radius_rad) {
        eri.at(x, y, 0) = r;
        eri.at(x, y, 1) = g;
        eri.at(x, y, 2) = b;
      }
    }
  }
}

LabelMap random_label_raster(int w, int h, int classes, std::uint32_t seed) {
  Rng rng(seed);
  LabelMap labels(w, h);
  const int blobs = 3 + rng.below(6);
  for (int i = 0; i < blobs; ++i) {
    const std::int32_t cls = 1 + rng.below(classes);
    const int bw = 1 + rng.below(w / 2);
    const int bh = 1 + rng.below(h / 2);
    const int x0 = rng.below(w);  // may wrap past the seam
    const int y0 = rng.below(h - bh + 1);
    for (int y = y0; y < y0 + bh; ++y)
      for (int x = x0; x < x0 + bw; ++x) labels.at(x % w, y) = cls;
  }
  return labels;
}

}  // namespace panoproj::testing
