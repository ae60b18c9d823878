#include "panoproj/global_optimizer.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace panoproj {

GridSearchResult optimize_global(const SegmentationMap& eri_seg, const ViewportSpec& spec,
                                 const GlobalOptimizerOptions& options) {
  if (!(options.beta > 0.0))
    throw std::invalid_argument("optimize_global: beta must be positive");
  if (options.resolution_divisor < 1)
    throw std::invalid_argument("optimize_global: resolution divisor must be >= 1");

  const TissotAreaStretching default_stretching;
  const ArcStraightnessBending default_bending;
  const StretchingMeasure& stretching =
      options.stretching ? *options.stretching : default_stretching;
  const BendingMeasure& bending = options.bending ? *options.bending : default_bending;

  ViewportSpec eval = spec;
  eval.width = std::max(2, spec.width / options.resolution_divisor);
  eval.height = std::max(2, spec.height / options.resolution_divisor);

  GridSearchResult result;
  result.surface.reserve(110);
  for (int di = 1; di <= 10; ++di) {
    for (int vi = 0; vi <= 10; ++vi) {
      GridPoint pt;
      pt.params = {di * 0.1, vi * 0.1};
      const LabelMap seg_vp = render_seg_viewport(eri_seg, eval, pt.params);
      pt.stretching = stretching.score(seg_vp, eval, pt.params);
      pt.bending = bending.score(eval, pt.params);
      result.surface.push_back(pt);
    }
  }

  if (options.per_grid_normalization) {
    auto normalize = [](auto get, auto set, std::vector<GridPoint>& pts) {
      double lo = get(pts.front()), hi = lo;
      for (const GridPoint& p : pts) {
        lo = std::min(lo, get(p));
        hi = std::max(hi, get(p));
      }
      const double range = hi - lo;
      for (GridPoint& p : pts) set(p, range > 0.0 ? (get(p) - lo) / range : 0.0);
    };
    normalize([](const GridPoint& p) { return p.stretching; },
              [](GridPoint& p, double v) { p.stretching = v; }, result.surface);
    normalize([](const GridPoint& p) { return p.bending; },
              [](GridPoint& p, double v) { p.bending = v; }, result.surface);
  }

  const GridPoint* best = nullptr;
  for (GridPoint& pt : result.surface) {
    pt.cost = options.beta * pt.stretching + pt.bending;
    const bool better =
        !best || pt.cost < best->cost ||
        (pt.cost == best->cost && (pt.params.vc < best->params.vc ||
                                   (pt.params.vc == best->params.vc && pt.params.d < best->params.d)));
    if (better) best = &pt;
  }
  result.best = best->params;
  return result;
}

void write_cost_surface_csv(const std::string& path, const GridSearchResult& result) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "d,vc,S,B,cost\n";
  for (const GridPoint& pt : result.surface) {
    out << pt.params.d << ',' << pt.params.vc << ',' << pt.stretching << ',' << pt.bending
        << ',' << pt.cost << '\n';
  }
}

}  // namespace panoproj
