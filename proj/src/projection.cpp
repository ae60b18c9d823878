#include "panoproj/projection.hpp"

#include <algorithm>
#include <cmath>

namespace panoproj {

namespace {

[[noreturn]] void domain_error(const std::string& what) { throw DomainError(what); }

}  // namespace

SpherePoint normalized(SpherePoint p) {
  double phi = std::fmod(p.phi, 2.0 * kPi);
  if (phi > kPi) phi -= 2.0 * kPi;
  if (phi <= -kPi) phi += 2.0 * kPi;
  double theta = std::clamp(p.theta, -kPi / 2.0, kPi / 2.0);
  return {phi, theta};
}

void PanniniParams::validate() const {
  if (!std::isfinite(d) || d < 0.0)
    throw std::invalid_argument("pannini parameter d must be finite and >= 0");
  if (!std::isfinite(vc) || vc < 0.0 || vc > 1.0)
    throw std::invalid_argument("pannini parameter vc must lie in [0, 1]");
}

void ViewportSpec::validate() const {
  if (!(hfov > 0.0) || !(hfov < 2.0 * kPi))
    throw std::invalid_argument("viewport hfov must lie in (0, 2*pi)");
  if (width < 2 || height < 2)
    throw std::invalid_argument("viewport resolution must be at least 2x2");
}

PlanePoint pannini_forward(SpherePoint p, PanniniParams params) {
  const double cos_phi = std::cos(p.phi);
  if (std::abs(p.phi) >= kPi - kDomainEpsilon)
    domain_error("pannini_forward: |phi| too close to pi");
  if (params.d + cos_phi <= kDomainEpsilon)
    domain_error("pannini_forward: point behind the projection center (d + cos(phi) <= 0)");
  if (std::abs(p.theta) >= kPi / 2.0 - kDomainEpsilon)
    domain_error("pannini_forward: |theta| too close to pi/2");

  const double s = (params.d + 1.0) / (params.d + cos_phi);
  const double tan_theta = std::tan(p.theta);
  PlanePoint q;
  q.x = s * std::sin(p.phi);
  q.y = (1.0 - params.vc) * (s * tan_theta) + params.vc * (tan_theta / cos_phi);
  return q;
}

SpherePoint pannini_backward(PlanePoint q, PanniniParams params) {
  const double d = params.d;
  const double k = (q.x * q.x) / ((d + 1.0) * (d + 1.0));
  const double disc = k * (1.0 - d * d) + 1.0;
  if (disc < 0.0)
    domain_error("pannini_backward: no intersection with the viewing sphere");

  // Root with cos(phi) in (-d, 1]; the other root is the antipodal
  // intersection of the projection ray.
  const double cos_phi = (-k * d + std::sqrt(disc)) / (k + 1.0);
  if (d + cos_phi <= kDomainEpsilon)
    domain_error("pannini_backward: point outside the forward domain");
  if (params.vc > 0.0 && cos_phi <= kDomainEpsilon)
    domain_error("pannini_backward: vertical compression undefined at |phi| >= pi/2");

  const double phi = std::copysign(std::acos(std::clamp(cos_phi, -1.0, 1.0)), q.x);
  const double s = (d + 1.0) / (d + cos_phi);
  const double denom = (1.0 - params.vc) * s + params.vc / cos_phi;
  const double theta = std::atan(q.y / denom);
  return {phi, theta};
}

PlanePoint rectilinear_forward(SpherePoint p) {
  if (std::abs(p.phi) >= kPi / 2.0 - kDomainEpsilon)
    domain_error("rectilinear_forward: |phi| too close to pi/2");
  if (std::abs(p.theta) >= kPi / 2.0 - kDomainEpsilon)
    domain_error("rectilinear_forward: |theta| too close to pi/2");
  return {std::tan(p.phi), std::tan(p.theta) / std::cos(p.phi)};
}

PlanePoint gpp_forward(SpherePoint p, double d) {
  const Vec3 v = sphere_to_unit(p);
  const double denom = v.z + d;
  if (denom <= kDomainEpsilon)
    domain_error("gpp_forward: point behind the projection center");
  return {(1.0 + d) * v.x / denom, (1.0 + d) * v.y / denom};
}

SpherePoint gpp_backward(PlanePoint q, double d) {
  const double rho2 = q.x * q.x + q.y * q.y;
  const double a = rho2 / ((1.0 + d) * (1.0 + d));
  const double disc = a * (1.0 - d * d) + 1.0;
  if (disc < 0.0)
    domain_error("gpp_backward: no intersection with the viewing sphere");
  const double z = (-a * d + std::sqrt(disc)) / (a + 1.0);
  if (z + d <= kDomainEpsilon)
    domain_error("gpp_backward: point outside the forward domain");
  const double scale = (z + d) / (1.0 + d);
  return unit_to_sphere({q.x * scale, q.y * scale, z});
}

PlanePoint stereographic_forward(SpherePoint p) { return gpp_forward(p, 1.0); }

Vec3 sphere_to_unit(SpherePoint p) {
  const double cos_theta = std::cos(p.theta);
  return {cos_theta * std::sin(p.phi), std::sin(p.theta), cos_theta * std::cos(p.phi)};
}

SpherePoint unit_to_sphere(Vec3 v) {
  return {std::atan2(v.x, v.z), std::asin(std::clamp(v.y, -1.0, 1.0))};
}

namespace {

Vec3 pitch_up(Vec3 v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {v.x, v.y * c + v.z * s, -v.y * s + v.z * c};
}

Vec3 yaw(Vec3 v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {v.x * c + v.z * s, v.y, -v.x * s + v.z * c};
}

}  // namespace

SpherePoint rotate_to_view(SpherePoint p, SpherePoint view_dir) {
  Vec3 v = sphere_to_unit(p);
  v = pitch_up(v, view_dir.theta);
  v = yaw(v, view_dir.phi);
  return unit_to_sphere(v);
}

SpherePoint rotate_from_view(SpherePoint p, SpherePoint view_dir) {
  Vec3 v = sphere_to_unit(p);
  v = yaw(v, -view_dir.phi);
  v = pitch_up(v, -view_dir.theta);
  return unit_to_sphere(v);
}

PlaneExtent viewport_plane_extent(PanniniParams params, double hfov, double aspect) {
  if (!(hfov > 0.0) || !(hfov < 2.0 * kPi))
    throw std::invalid_argument("viewport_plane_extent: hfov must lie in (0, 2*pi)");
  if (!(aspect > 0.0))
    throw std::invalid_argument("viewport_plane_extent: aspect ratio must be positive");
  const double denom = params.d + std::cos(hfov / 2.0);
  if (denom <= 0.0)
    domain_error("viewport_plane_extent: d + cos(hfov/2) <= 0");

  PlaneExtent e;
  e.half_width = (params.d + 1.0) * std::sin(hfov / 2.0) / denom;
  e.vfov = 2.0 * std::atan(e.half_width / aspect);
  e.half_height = e.half_width / aspect;
  return e;
}

}  // namespace panoproj
