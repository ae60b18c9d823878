#pragma once

#include "panoproj/raster.hpp"
#include "panoproj/viewport_grid.hpp"

namespace panoproj {

/// Normalized viewport distortion scores, both in [0, 1].
struct DistortionScore {
  double stretching = 0.0;
  double bending = 0.0;
};

/// Pluggable stretching measure over the viewport segmentation.
class StretchingMeasure {
 public:
  virtual ~StretchingMeasure() = default;
  virtual double score(const LabelMap& seg_vp, const ViewportSpec& spec,
                       PanniniParams params) const = 0;
};

/// Pluggable bending measure over the projection geometry.
class BendingMeasure {
 public:
  virtual ~BendingMeasure() = default;
  virtual double score(const ViewportSpec& spec, PanniniParams params) const = 0;
};

/// Tissot-style object stretching: the local area scale a = |J| / cos(theta)
/// of the sphere-to-plane map is evaluated at every object pixel, scored as
/// |log a - log a_center|, pooled over objects weighted by pixel count and
/// squashed to [0, 1) by s/(1+s). Returns 0 with no objects.
class TissotAreaStretching : public StretchingMeasure {
 public:
  double score(const LabelMap& seg_vp, const ViewportSpec& spec,
               PanniniParams params) const override;
};

/// Line bending over a fixed battery of great circles: six pitched circles
/// whose apex latitude is +-15/30/45 degrees plus two circles rolled +-30
/// degrees about the view axis, each sampled across the horizontal FoV and
/// scored by max point-to-chord distance over chord length. Arcs leaving
/// the projection domain are truncated; arcs shorter than 10% of the
/// viewport width are skipped. The mean over arcs is clamped to [0, 1].
class ArcStraightnessBending : public BendingMeasure {
 public:
  explicit ArcStraightnessBending(int samples_per_arc = 385);
  double score(const ViewportSpec& spec, PanniniParams params) const override;

 private:
  int samples_;
};

/// Local area scale of the Pannini map at a sphere point (central
/// differences on the sphere parameterization).
double pannini_area_scale(SpherePoint p, PanniniParams params);

double stretching_score(const LabelMap& seg_vp, const ViewportSpec& spec, PanniniParams params);
double bending_score(const ViewportSpec& spec, PanniniParams params);

}  // namespace panoproj
