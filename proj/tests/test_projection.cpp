#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "panoproj/projection.hpp"
#include "support/fixtures.hpp"

using namespace panoproj;
using panoproj::testing::Rng;

TEST_CASE("pannini forward maps the view axis to the origin") {
  for (double d : {0.0, 0.3, 0.7, 1.0, 1.2}) {
    for (double vc : {0.0, 0.5, 1.0}) {
      const PlanePoint q = pannini_forward({0.0, 0.0}, {d, vc});
      CHECK(q.x == 0.0);
      CHECK(q.y == 0.0);
    }
  }
}

TEST_CASE("pannini forward hand-evaluated point") {
  // S = 1.5/(0.5 + cos 60) = 1.5, x = 1.5 sin 60.
  const PlanePoint q = pannini_forward({kPi / 3.0, 0.0}, {0.5, 0.0});
  CHECK(q.x == doctest::Approx(1.299038105676658).epsilon(1e-12));
  CHECK(q.y == 0.0);
}

TEST_CASE("pannini with d=0 reduces to rectilinear") {
  const PlanePoint p = pannini_forward({0.7, 0.4}, {0.0, 0.0});
  const PlanePoint r = rectilinear_forward({0.7, 0.4});
  CHECK(p.x == doctest::Approx(r.x).epsilon(1e-15));
  CHECK(p.y == doctest::Approx(r.y).epsilon(1e-15));
  CHECK(r.x == doctest::Approx(0.8422883804630794).epsilon(1e-12));
  CHECK(r.y == doctest::Approx(0.5527849087917803).epsilon(1e-12));
}

TEST_CASE("pannini forward domain errors") {
  CHECK_THROWS_AS(pannini_forward({deg_to_rad(170.0), 0.0}, {0.2, 0.0}), DomainError);
  CHECK_THROWS_AS(pannini_forward({0.0, kPi / 2.0}, {0.5, 0.0}), DomainError);
  CHECK_THROWS_AS(pannini_forward({kPi, 0.0}, {1.2, 0.0}), DomainError);
}

TEST_CASE("pannini backward inverts the forward map") {
  const PanniniParams params{0.7, 0.3};
  const SpherePoint p{1.0, 0.5};
  const SpherePoint back = pannini_backward(pannini_forward(p, params), params);
  CHECK(back.phi == doctest::Approx(p.phi).epsilon(1e-9));
  CHECK(back.theta == doctest::Approx(p.theta).epsilon(1e-9));

  const SpherePoint origin = pannini_backward({0.0, 0.0}, {0.9, 0.8});
  CHECK(origin.phi == 0.0);
  CHECK(origin.theta == 0.0);

  const SpherePoint inv = pannini_backward({1.299038105676658, 0.0}, {0.5, 0.0});
  CHECK(inv.phi == doctest::Approx(kPi / 3.0).epsilon(1e-12));
  CHECK(inv.theta == 0.0);
}

TEST_CASE("pannini round trip over the parameter grid") {
  Rng rng(20240811);
  double worst = 0.0;
  for (int i = 0; i < 4000; ++i) {
    const PanniniParams params{rng.uniform(0.0, 1.2), rng.uniform(0.0, 1.0)};
    const SpherePoint p{rng.uniform(-deg_to_rad(80.0), deg_to_rad(80.0)),
                        rng.uniform(-deg_to_rad(60.0), deg_to_rad(60.0))};
    const SpherePoint back = pannini_backward(pannini_forward(p, params), params);
    worst = std::max({worst, std::abs(back.phi - p.phi), std::abs(back.theta - p.theta)});
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("pannini backward domain error when the ray misses the sphere") {
  // d > 1: discriminant goes negative for large |x|.
  CHECK_THROWS_AS(pannini_backward({8.0, 0.0}, {1.2, 0.0}), DomainError);
}

TEST_CASE("rectilinear basics") {
  const PlanePoint q = rectilinear_forward({kPi / 4.0, 0.0});
  CHECK(q.x == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(q.y == 0.0);
  CHECK_THROWS_AS(rectilinear_forward({kPi / 2.0, 0.0}), DomainError);
  CHECK_THROWS_AS(rectilinear_forward({0.0, -kPi / 2.0}), DomainError);
}

TEST_CASE("gpp specializations") {
  const PlanePoint origin = gpp_forward({0.0, 0.0}, 0.4);
  CHECK(origin.x == 0.0);
  CHECK(origin.y == 0.0);

  Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    const SpherePoint p{rng.uniform(-deg_to_rad(80.0), deg_to_rad(80.0)),
                        rng.uniform(-deg_to_rad(60.0), deg_to_rad(60.0))};
    const PlanePoint g = gpp_forward(p, 0.0);
    const PlanePoint r = rectilinear_forward(p);
    CHECK(std::abs(g.x - r.x) < 1e-12);
    CHECK(std::abs(g.y - r.y) < 1e-12);

    // Stereographic: x = 2 Px / (Pz + 1).
    const Vec3 v = sphere_to_unit(p);
    const PlanePoint s = gpp_forward(p, 1.0);
    CHECK(std::abs(s.x - 2.0 * v.x / (v.z + 1.0)) < 1e-12);
    CHECK(std::abs(s.y - 2.0 * v.y / (v.z + 1.0)) < 1e-12);
    const PlanePoint s2 = stereographic_forward(p);
    CHECK(s2.x == s.x);
    CHECK(s2.y == s.y);
  }

  const PlanePoint equator = gpp_forward({kPi / 2.0, 0.0}, 1.0);
  CHECK(equator.x == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(equator.y == 0.0);

  CHECK_THROWS_AS(gpp_forward({kPi, 0.0}, 0.5), DomainError);
}

TEST_CASE("gpp backward inverts gpp forward") {
  Rng rng(99);
  for (int i = 0; i < 500; ++i) {
    const double d = rng.uniform(0.0, 1.2);
    const SpherePoint p{rng.uniform(-deg_to_rad(80.0), deg_to_rad(80.0)),
                        rng.uniform(-deg_to_rad(60.0), deg_to_rad(60.0))};
    const SpherePoint back = gpp_backward(gpp_forward(p, d), d);
    CHECK(std::abs(back.phi - p.phi) < 1e-9);
    CHECK(std::abs(back.theta - p.theta) < 1e-9);
  }
}

TEST_CASE("view rotation") {
  const SpherePoint p{0.35, -0.2};
  const SpherePoint same = rotate_to_view(p, {0.0, 0.0});
  CHECK(same.phi == doctest::Approx(p.phi).epsilon(1e-15));
  CHECK(same.theta == doctest::Approx(p.theta).epsilon(1e-15));

  const SpherePoint center = rotate_to_view({0.0, 0.0}, {1.2, -0.3});
  CHECK(center.phi == doctest::Approx(1.2).epsilon(1e-12));
  CHECK(center.theta == doctest::Approx(-0.3).epsilon(1e-12));

  Rng rng(20210101);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const SpherePoint q{rng.uniform(-kPi, kPi), rng.uniform(-kPi / 2.0, kPi / 2.0)};
    const SpherePoint vd{rng.uniform(-kPi, kPi), rng.uniform(-kPi / 2.0, kPi / 2.0)};
    const SpherePoint back = rotate_from_view(rotate_to_view(q, vd), vd);
    worst = std::max({worst, std::abs(back.phi - q.phi), std::abs(back.theta - q.theta)});
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("viewport plane extent") {
  const PlaneExtent e = viewport_plane_extent({0.5, 0.0}, deg_to_rad(150.0), 16.0 / 9.0);
  CHECK(e.half_width == doctest::Approx(1.9093995449703685).epsilon(1e-12));
  CHECK(e.half_height == doctest::Approx(1.0740372440458323).epsilon(1e-12));
  CHECK(rad_to_deg(e.vfov) == doctest::Approx(94.08885727353088).epsilon(1e-10));
  CHECK(e.half_height * (16.0 / 9.0) == e.half_width);  // exact at this configuration
  CHECK(std::tan(e.vfov / 2.0) == doctest::Approx(e.half_height).epsilon(1e-14));

  // Identity across parameters, allowing one rounding step.
  for (double d : {0.1, 0.4, 0.8, 1.2}) {
    for (double ar : {1.0, 1.5, 16.0 / 9.0, 2.37}) {
      const PlaneExtent x = viewport_plane_extent({d, 0.0}, deg_to_rad(150.0), ar);
      CHECK(x.half_height * ar == doctest::Approx(x.half_width).epsilon(1e-15));
    }
  }

  // Extreme aspect ratio collapses the vertical FoV.
  const PlaneExtent wide = viewport_plane_extent({0.5, 0.0}, deg_to_rad(150.0), 1e9);
  CHECK(wide.vfov < 1e-8);

  CHECK_THROWS_AS(viewport_plane_extent({0.0, 0.0}, deg_to_rad(200.0), 1.0), DomainError);
}

TEST_CASE("vertical lines stay vertical") {
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    const PanniniParams params{rng.uniform(0.0, 1.2), rng.uniform(0.0, 1.0)};
    const double phi = rng.uniform(-deg_to_rad(80.0), deg_to_rad(80.0));
    double mean = 0.0;
    std::vector<double> xs;
    for (int k = 0; k <= 40; ++k) {
      const double theta = -deg_to_rad(60.0) + k * deg_to_rad(120.0) / 40.0;
      xs.push_back(pannini_forward({phi, theta}, params).x);
      mean += xs.back();
    }
    mean /= xs.size();
    double variance = 0.0;
    for (double x : xs) variance += (x - mean) * (x - mean);
    variance /= xs.size();
    CHECK(variance < 1e-18);
  }
}

TEST_CASE("odd symmetry and monotonicity") {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const PanniniParams params{rng.uniform(0.0, 1.2), rng.uniform(0.0, 1.0)};
    const SpherePoint p{rng.uniform(0.01, deg_to_rad(80.0)), rng.uniform(0.01, deg_to_rad(60.0))};
    const PlanePoint q = pannini_forward(p, params);
    const PlanePoint mirrored_phi = pannini_forward({-p.phi, p.theta}, params);
    const PlanePoint mirrored_theta = pannini_forward({p.phi, -p.theta}, params);
    CHECK(mirrored_phi.x == doctest::Approx(-q.x).epsilon(1e-15));
    CHECK(mirrored_theta.y == doctest::Approx(-q.y).epsilon(1e-15));
  }

  for (double d : {0.0, 0.5, 1.0, 1.2}) {
    double prev = -1e30;
    for (int k = 0; k <= 60; ++k) {
      const double phi = -deg_to_rad(80.0) + k * deg_to_rad(160.0) / 60.0;
      const double x = pannini_forward({phi, 0.2}, {d, 0.3}).x;
      CHECK(x > prev);
      prev = x;
    }
  }
}

TEST_CASE("sphere point normalization") {
  const SpherePoint wrapped = normalized({3.0 * kPi / 2.0, 0.1});
  CHECK(wrapped.phi == doctest::Approx(-kPi / 2.0).epsilon(1e-12));
  const SpherePoint clamped = normalized({0.0, 2.0});
  CHECK(clamped.theta == kPi / 2.0);
}

TEST_CASE("parameter validation") {
  const PanniniParams negative_d{-0.1, 0.0};
  const PanniniParams vc_out_of_range{0.5, 1.5};
  const PanniniParams valid{1.2, 1.0};
  CHECK_THROWS_AS(negative_d.validate(), std::invalid_argument);
  CHECK_THROWS_AS(vc_out_of_range.validate(), std::invalid_argument);
  CHECK_NOTHROW(valid.validate());
}
