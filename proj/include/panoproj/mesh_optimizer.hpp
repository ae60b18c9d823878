#pragma once

#include <string>

#include "panoproj/energy.hpp"

namespace panoproj {

struct MeshOptimizationOptions {
  int iterations = 100;
  double learning_rate = 0.02;
  SmoothnessMode smoothness_mode = SmoothnessMode::EdgePreserve;
  /// Objects smaller than this fraction of viewport pixels are excluded
  /// from the conformality term.
  double min_object_fraction = 0.0005;
};

struct MeshOptimizationResult {
  VertexMesh mesh;
  std::vector<EnergyTerms> trace;  // per iteration, entry 0 is the start
  EnergyWeights weights;
  double initial_energy = 0.0;
  double final_energy = 0.0;
};

/// Minimizes the mesh energy starting from the background mesh and returns
/// the best-energy iterate; aborts when the energy exceeds ten times its
/// initial value.
MeshOptimizationResult optimize_mesh(const MeshPair& pair, const LabelMap& seg_vp,
                                     const EnergyWeights& weights,
                                     const MeshOptimizationOptions& options = {});

void write_energy_trace_csv(const std::string& path, const MeshOptimizationResult& result);

}  // namespace panoproj
