#pragma once

#include <stdexcept>
#include <string>

#include "panoproj/geometry.hpp"

namespace panoproj {

// Guard width for trigonometric domain edges, in radians.
inline constexpr double kDomainEpsilon = 1e-6;

// Thrown when a point lies outside a projection's valid domain.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Longitude/latitude on the unit viewing sphere, radians.
/// phi in (-pi, pi], theta in [-pi/2, pi/2].
struct SpherePoint {
  double phi = 0.0;
  double theta = 0.0;
};

/// Wraps phi into (-pi, pi] and clamps theta to [-pi/2, pi/2].
SpherePoint normalized(SpherePoint p);

/// Cartesian coordinates on the viewport plane, in length units,
/// origin at the plane center (the tangency point).
struct PlanePoint {
  double x = 0.0;
  double y = 0.0;
};

/// Pannini projection parameters: center distance d >= 0 and
/// vertical compression strength vc in [0, 1]. d = 0 is rectilinear,
/// d = 1 is quasi-stereographic.
struct PanniniParams {
  double d = 0.0;
  double vc = 0.0;

  void validate() const;
};

/// Viewport definition: viewing direction, horizontal FoV (radians)
/// and output resolution in pixels.
struct ViewportSpec {
  SpherePoint view_dir;
  double hfov = deg_to_rad(150.0);
  int width = 1816;
  int height = 1020;

  double aspect() const { return static_cast<double>(width) / height; }
  void validate() const;
};

/// Pannini forward projection:
///   x = S sin(phi),  y = (1 - vc) S tan(theta) + vc tan(theta)/cos(phi),
///   S = (d + 1) / (d + cos(phi)).
PlanePoint pannini_forward(SpherePoint p, PanniniParams params);

/// Inverse of pannini_forward. cos(phi) is the root of
///   (k+1) cos^2(phi) + 2kd cos(phi) + (kd^2 - 1) = 0,  k = x^2/(d+1)^2,
/// chosen in (-d, 1]; then tan(theta) = y / ((1-vc) S + vc/cos(phi)).
SpherePoint pannini_backward(PlanePoint q, PanniniParams params);

/// x = tan(phi), y = tan(theta)/cos(phi). Pannini with d = 0.
PlanePoint rectilinear_forward(SpherePoint p);

/// Generalized perspective projection with center distance d:
/// x = (1+d) Px/(Pz+d), y = (1+d) Py/(Pz+d) for the unit direction P.
/// d = 0 is rectilinear, d = 1 is stereographic.
PlanePoint gpp_forward(SpherePoint p, double d);
SpherePoint gpp_backward(PlanePoint q, double d);

PlanePoint stereographic_forward(SpherePoint p);

/// Rotation taking the view axis (0, 0) to view_dir (yaw/pitch, no roll).
SpherePoint rotate_to_view(SpherePoint p, SpherePoint view_dir);
/// Inverse of rotate_to_view.
SpherePoint rotate_from_view(SpherePoint p, SpherePoint view_dir);

Vec3 sphere_to_unit(SpherePoint p);
SpherePoint unit_to_sphere(Vec3 v);

/// Viewport plane extent for a Pannini projection:
///   half_width = (d+1) sin(hfov/2) / (d + cos(hfov/2)),
///   vfov = 2 atan(half_width / aspect), half_height = half_width / aspect.
struct PlaneExtent {
  double half_width = 0.0;
  double half_height = 0.0;
  double vfov = 0.0;
};

PlaneExtent viewport_plane_extent(PanniniParams params, double hfov, double aspect);

}  // namespace panoproj
