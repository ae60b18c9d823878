#pragma once

#include "panoproj/mesh.hpp"

namespace panoproj {

struct EnergyWeights {
  double conformality = 0.3;
  double line = 1.5;
  double smoothness = 0.5;
  double boundary = 3.0;
};

/// Smoothness penalty form: EdgeShrink penalizes the squared edge length
/// |v_i - v_j|^2; EdgePreserve penalizes the deviation from the rest edge
/// |(v_i - v_j) - (b_i - b_j)|^2.
enum class SmoothnessMode { EdgeShrink, EdgePreserve };

/// Raw (unweighted) values of the four energy terms.
struct EnergyTerms {
  double conformality = 0.0;
  double line = 0.0;
  double smoothness = 0.0;
  double boundary = 0.0;

  double total(const EnergyWeights& w) const {
    return w.conformality * conformality + w.line * line + w.smoothness * smoothness +
           w.boundary * boundary;
  }
};

/// Per-vertex object assignment and correction strength, derived from the
/// viewport segmentation: a vertex belongs to object k when the nearest
/// segmentation pixel under its rest position carries id k. Objects with
/// fewer than min_object_px pixels are ignored.
struct VertexAttributes {
  std::vector<std::int32_t> object_id;  // 0 = background
  std::vector<double> strength;
};

VertexAttributes assign_vertices(const MeshPair& pair, const LabelMap& seg_vp,
                                 long min_object_px);

/// Mesh deformation energy: conformality pulls object vertices toward the
/// foreground mesh, the line term penalizes edge components perpendicular
/// to the rest edge direction, smoothness couples 4-way neighbors, and the
/// boundary term penalizes boundary vertices moved inward past their rest
/// coordinates. Evaluation follows the ordered-pair double sum, so each
/// undirected edge contributes twice.
class MeshEnergy {
 public:
  MeshEnergy(const MeshPair& pair, VertexAttributes attrs, EnergyWeights weights,
             SmoothnessMode mode = SmoothnessMode::EdgePreserve);

  EnergyTerms evaluate(const VertexMesh& v) const;
  /// Also fills `gradient` (one entry per vertex) with d(total)/d(vertex).
  EnergyTerms evaluate(const VertexMesh& v, std::vector<Vec2>& gradient) const;

  const EnergyWeights& weights() const { return weights_; }
  const VertexAttributes& attributes() const { return attrs_; }
  const MeshPair& meshes() const { return *pair_; }

 private:
  EnergyTerms accumulate(const VertexMesh& v, std::vector<Vec2>* gradient) const;

  const MeshPair* pair_;
  VertexAttributes attrs_;
  EnergyWeights weights_;
  SmoothnessMode mode_;
};

}  // namespace panoproj
