#include "panoproj/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace panoproj {

double pannini_area_scale(SpherePoint p, PanniniParams params) {
  const double h = 1e-5;
  const PlanePoint px0 = pannini_forward({p.phi - h, p.theta}, params);
  const PlanePoint px1 = pannini_forward({p.phi + h, p.theta}, params);
  const PlanePoint py0 = pannini_forward({p.phi, p.theta - h}, params);
  const PlanePoint py1 = pannini_forward({p.phi, p.theta + h}, params);

  const double dx_dphi = (px1.x - px0.x) / (2.0 * h);
  const double dy_dphi = (px1.y - px0.y) / (2.0 * h);
  const double dx_dtheta = (py1.x - py0.x) / (2.0 * h);
  const double dy_dtheta = (py1.y - py0.y) / (2.0 * h);

  const double det = dx_dphi * dy_dtheta - dy_dphi * dx_dtheta;
  return std::abs(det) / std::cos(p.theta);
}

double TissotAreaStretching::score(const LabelMap& seg_vp, const ViewportSpec& spec,
                                   PanniniParams params) const {
  const PlaneGrid grid =
      make_plane_grid(params, spec.hfov, seg_vp.width, seg_vp.height, spec.aspect());
  const double log_center = std::log(pannini_area_scale({0.0, 0.0}, params));

  double sum = 0.0;
  long count = 0;
  for (int y = 0; y < seg_vp.height; ++y) {
    for (int x = 0; x < seg_vp.width; ++x) {
      if (seg_vp.at(x, y) <= 0) continue;
      const PlanePoint q = grid.to_plane(x + 0.5, y + 0.5);
      const SpherePoint p = pannini_backward(q, params);
      sum += std::abs(std::log(pannini_area_scale(p, params)) - log_center);
      ++count;
    }
  }
  if (count == 0) return 0.0;
  const double s = sum / static_cast<double>(count);
  return s / (1.0 + s);
}

ArcStraightnessBending::ArcStraightnessBending(int samples_per_arc)
    : samples_(std::max(samples_per_arc, 16)) {}

namespace {

// Great-circle direction at horizon angle t: a pitched equator with apex
// latitude alpha, or the equator rolled by gamma about the view axis.
Vec3 pitched_circle(double t, double alpha) {
  return {std::sin(t), std::sin(alpha) * std::cos(t), std::cos(alpha) * std::cos(t)};
}

Vec3 rolled_circle(double t, double gamma) {
  return {std::cos(gamma) * std::sin(t), std::sin(gamma) * std::sin(t), std::cos(t)};
}

double arc_score(const std::vector<Vec2>& pts, double min_chord) {
  if (pts.size() < 3) return -1.0;
  const Vec2 a = pts.front();
  const Vec2 b = pts.back();
  const Vec2 chord = b - a;
  const double len = chord.norm();
  if (len < min_chord) return -1.0;

  const Vec2 dir{chord.x / len, chord.y / len};
  double max_dev = 0.0;
  for (const Vec2& p : pts) max_dev = std::max(max_dev, std::abs(cross(p - a, dir)));
  return max_dev / len;
}

}  // namespace

double ArcStraightnessBending::score(const ViewportSpec& spec, PanniniParams params) const {
  const PlaneExtent extent = viewport_plane_extent(params, spec.hfov, spec.aspect());
  const double min_chord = 0.1 * 2.0 * extent.half_width;
  const double half = spec.hfov / 2.0;

  std::vector<std::pair<double, bool>> battery;  // (angle, is_pitched)
  for (double deg : {-45.0, -30.0, -15.0, 15.0, 30.0, 45.0}) battery.push_back({deg, true});
  for (double deg : {-30.0, 30.0}) battery.push_back({deg, false});

  double total = 0.0;
  int scored = 0;
  const int center = samples_ / 2;
  for (const auto& [deg, pitched] : battery) {
    const double angle = deg_to_rad(deg);

    // Project the contiguous in-domain run around the arc center.
    std::vector<Vec2> pts;
    auto project = [&](int k) -> bool {
      const double t = -half + spec.hfov * k / (samples_ - 1);
      const Vec3 dir = pitched ? pitched_circle(t, angle) : rolled_circle(t, angle);
      try {
        const PlanePoint q = pannini_forward(unit_to_sphere(dir), params);
        pts.push_back({q.x, q.y});
        return true;
      } catch (const DomainError&) {
        return false;
      }
    };
    for (int k = center; k >= 0; --k)
      if (!project(k)) break;
    std::reverse(pts.begin(), pts.end());
    for (int k = center + 1; k < samples_; ++k)
      if (!project(k)) break;

    const double s = arc_score(pts, min_chord);
    if (s < 0.0) continue;
    total += s;
    ++scored;
  }

  if (scored == 0) return 0.0;
  return std::clamp(total / scored, 0.0, 1.0);
}

double stretching_score(const LabelMap& seg_vp, const ViewportSpec& spec, PanniniParams params) {
  return TissotAreaStretching().score(seg_vp, spec, params);
}

double bending_score(const ViewportSpec& spec, PanniniParams params) {
  return ArcStraightnessBending().score(spec, params);
}

}  // namespace panoproj
