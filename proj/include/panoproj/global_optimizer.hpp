#pragma once

#include <string>
#include <vector>

#include "panoproj/distortion.hpp"
#include "panoproj/segmentation.hpp"

namespace panoproj {

struct GridPoint {
  PanniniParams params;
  double stretching = 0.0;
  double bending = 0.0;
  double cost = 0.0;
};

/// Exhaustive search result over d in {0.1..1.0}, vc in {0.0..1.0},
/// steps 0.1 (110 points, d-major ordering).
struct GridSearchResult {
  PanniniParams best;
  std::vector<GridPoint> surface;
};

struct GlobalOptimizerOptions {
  double beta = 0.17;  // stretching-to-bending ratio
  /// Measures run on a viewport downscaled by this factor.
  int resolution_divisor = 4;
  /// Min-max normalize S and B over the grid before combining, instead of
  /// the absolute squashing built into the measures.
  bool per_grid_normalization = false;
  const StretchingMeasure* stretching = nullptr;  // defaults when null
  const BendingMeasure* bending = nullptr;
};

/// Minimizes beta * S(d, vc) + B(d, vc) over the parameter grid. Ties fall
/// to the smallest vc, then the smallest d.
GridSearchResult optimize_global(const SegmentationMap& eri_seg, const ViewportSpec& spec,
                                 const GlobalOptimizerOptions& options = {});

void write_cost_surface_csv(const std::string& path, const GridSearchResult& result);

}  // namespace panoproj
