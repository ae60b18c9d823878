#include "panoproj/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace panoproj {

VertexAttributes assign_vertices(const MeshPair& pair, const LabelMap& seg_vp,
                                 long min_object_px) {
  const int cols = pair.cols();
  const int rows = pair.rows();

  std::unordered_map<std::int32_t, long> object_px;
  for (std::int32_t id : seg_vp.data)
    if (id > 0) ++object_px[id];

  VertexAttributes attrs;
  attrs.object_id.assign(static_cast<std::size_t>(cols) * rows, 0);
  attrs.strength.assign(static_cast<std::size_t>(cols) * rows, 0.0);

  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const Vec2 b = pair.background.at(r, c);
      const int px = std::clamp(
          static_cast<int>(std::lround(b.x * seg_vp.width / cols - 0.5)), 0, seg_vp.width - 1);
      const int py = std::clamp(
          static_cast<int>(std::lround(b.y * seg_vp.height / rows - 0.5)), 0, seg_vp.height - 1);
      const std::int32_t id = seg_vp.at(px, py);
      if (id <= 0) continue;
      const auto it = object_px.find(id);
      if (it == object_px.end() || it->second < min_object_px) continue;
      const int i = pair.background.index(r, c);
      attrs.object_id[i] = id;
      attrs.strength[i] = correction_strength(r, c, cols, rows);
    }
  }
  return attrs;
}

MeshEnergy::MeshEnergy(const MeshPair& pair, VertexAttributes attrs, EnergyWeights weights,
                       SmoothnessMode mode)
    : pair_(&pair), attrs_(std::move(attrs)), weights_(weights), mode_(mode) {
  const std::size_t n = static_cast<std::size_t>(pair.cols()) * pair.rows();
  if (attrs_.object_id.size() != n || attrs_.strength.size() != n)
    throw std::invalid_argument("MeshEnergy: vertex attributes do not match the mesh");
  if (weights_.conformality < 0 || weights_.line < 0 || weights_.smoothness < 0 ||
      weights_.boundary < 0)
    throw std::invalid_argument("MeshEnergy: weights must be non-negative");
}

EnergyTerms MeshEnergy::evaluate(const VertexMesh& v) const { return accumulate(v, nullptr); }

EnergyTerms MeshEnergy::evaluate(const VertexMesh& v, std::vector<Vec2>& gradient) const {
  gradient.assign(v.v.size(), Vec2{});
  return accumulate(v, &gradient);
}

EnergyTerms MeshEnergy::accumulate(const VertexMesh& v, std::vector<Vec2>* gradient) const {
  const VertexMesh& b = pair_->background;
  const VertexMesh& f = pair_->foreground;
  const int cols = b.cols;
  const int rows = b.rows;
  if (v.cols != cols || v.rows != rows)
    throw std::invalid_argument("MeshEnergy: mesh dimensions do not match");

  EnergyTerms terms;

  // Conformality: sum_k sum_{i in I_k} m_i |v_i - f_i|^2.
  for (int i = 0; i < b.vertex_count(); ++i) {
    if (attrs_.object_id[i] == 0) continue;
    const double m = attrs_.strength[i];
    const Vec2 diff = v.v[i] - f.v[i];
    terms.conformality += m * (diff.x * diff.x + diff.y * diff.y);
    if (gradient) {
      (*gradient)[i].x += weights_.conformality * 2.0 * m * diff.x;
      (*gradient)[i].y += weights_.conformality * 2.0 * m * diff.y;
    }
  }

  // Line and smoothness terms over ordered neighbor pairs.
  constexpr int kDr[4] = {0, 0, -1, 1};
  constexpr int kDc[4] = {-1, 1, 0, 0};
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int i = b.index(r, c);
      for (int k = 0; k < 4; ++k) {
        const int rj = r + kDr[k];
        const int cj = c + kDc[k];
        if (rj < 0 || rj >= rows || cj < 0 || cj >= cols) continue;
        const int j = b.index(rj, cj);

        const Vec2 rest = b.v[i] - b.v[j];
        const double rest_len = rest.norm();
        const Vec2 e{rest.x / rest_len, rest.y / rest_len};
        const Vec2 diff = v.v[i] - v.v[j];

        const double perp = cross(diff, e);
        terms.line += perp * perp;

        const Vec2 s = mode_ == SmoothnessMode::EdgeShrink ? diff : diff - rest;
        terms.smoothness += s.x * s.x + s.y * s.y;

        if (gradient) {
          // d(perp^2)/dv_i = 2 perp (e.y, -e.x); v_j gets the negation.
          const double gl = weights_.line * 2.0 * perp;
          (*gradient)[i].x += gl * e.y;
          (*gradient)[i].y -= gl * e.x;
          (*gradient)[j].x -= gl * e.y;
          (*gradient)[j].y += gl * e.x;

          const double gs = weights_.smoothness * 2.0;
          (*gradient)[i].x += gs * s.x;
          (*gradient)[i].y += gs * s.y;
          (*gradient)[j].x -= gs * s.x;
          (*gradient)[j].y -= gs * s.y;
        }
      }
    }
  }

  // Boundary terms: quadratic penalty when a boundary vertex moves inward
  // past its rest coordinate, normalized by the opposite mesh dimension.
  const double left_x = b.at(0, 0).x;
  const double right_x = b.at(0, cols - 1).x;
  const double top_y = b.at(0, 0).y;
  const double bottom_y = b.at(rows - 1, 0).y;

  for (int r = 0; r < rows; ++r) {
    const int il = b.index(r, 0);
    double t = v.v[il].x - left_x;
    if (t > 0.0) {
      terms.boundary += t * t / rows;
      if (gradient) (*gradient)[il].x += weights_.boundary * 2.0 * t / rows;
    }
    const int ir = b.index(r, cols - 1);
    t = v.v[ir].x - right_x;
    if (t < 0.0) {
      terms.boundary += t * t / rows;
      if (gradient) (*gradient)[ir].x += weights_.boundary * 2.0 * t / rows;
    }
  }
  for (int c = 0; c < cols; ++c) {
    const int it = b.index(0, c);
    double t = v.v[it].y - top_y;
    if (t > 0.0) {
      terms.boundary += t * t / cols;
      if (gradient) (*gradient)[it].y += weights_.boundary * 2.0 * t / cols;
    }
    const int ib = b.index(rows - 1, c);
    t = v.v[ib].y - bottom_y;
    if (t < 0.0) {
      terms.boundary += t * t / cols;
      if (gradient) (*gradient)[ib].y += weights_.boundary * 2.0 * t / cols;
    }
  }

  return terms;
}

}  // namespace panoproj
