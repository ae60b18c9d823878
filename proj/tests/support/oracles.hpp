#pragma once

#include <string>
#include <vector>

#include "panoproj/energy.hpp"
#include "panoproj/raster.hpp"

namespace panoproj::testing {

/// Flood-fill (BFS) connected components, independent of the union-find
/// path: returns an object-id raster with ids in raster-scan order.
LabelMap flood_fill_components(const LabelMap& class_labels, bool wrap_horizontal);

/// True when two object-id rasters describe the same partition (ids may
/// differ, the pixel equivalence classes may not).
bool same_partition(const LabelMap& a, const LabelMap& b);

/// Central finite differences of the weighted total energy.
std::vector<Vec2> finite_difference_gradient(const MeshEnergy& energy, const VertexMesh& mesh,
                                             double h);

/// Strict-cycle count over all permutations of stimulus triples; ties
/// break no cycles. `winner(a, b)` returns +1, -1 or 0.
long brute_force_circular_triads(int n, const std::vector<std::vector<int>>& outcome);

}  // namespace panoproj::testing
