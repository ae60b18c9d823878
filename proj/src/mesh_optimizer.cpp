#include "panoproj/mesh_optimizer.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "panoproj/adam.hpp"

namespace panoproj {

MeshOptimizationResult optimize_mesh(const MeshPair& pair, const LabelMap& seg_vp,
                                     const EnergyWeights& weights,
                                     const MeshOptimizationOptions& options) {
  if (options.iterations < 1)
    throw std::invalid_argument("optimize_mesh: iterations must be >= 1");
  if (!(options.learning_rate > 0.0))
    throw std::invalid_argument("optimize_mesh: learning rate must be positive");

  const long min_px = static_cast<long>(
      options.min_object_fraction * static_cast<double>(seg_vp.width) * seg_vp.height);
  const VertexAttributes attrs = assign_vertices(pair, seg_vp, min_px);
  const MeshEnergy energy(pair, attrs, weights, options.smoothness_mode);

  MeshOptimizationResult result;
  result.weights = weights;
  result.mesh = pair.background;

  const int n = result.mesh.vertex_count();
  std::vector<double> x(2 * n);
  for (int i = 0; i < n; ++i) {
    x[2 * i] = result.mesh.v[i].x;
    x[2 * i + 1] = result.mesh.v[i].y;
  }

  VertexMesh current = result.mesh;
  std::vector<Vec2> gradient;
  std::vector<double> flat_grad(2 * n);
  AdamOptimizer adam(options.learning_rate);

  EnergyTerms terms = energy.evaluate(current, gradient);
  result.trace.push_back(terms);
  result.initial_energy = terms.total(weights);

  double best_energy = result.initial_energy;

  for (int iter = 1; iter <= options.iterations; ++iter) {
    for (int i = 0; i < n; ++i) {
      flat_grad[2 * i] = gradient[i].x;
      flat_grad[2 * i + 1] = gradient[i].y;
    }
    adam.step(x, flat_grad);
    for (int i = 0; i < n; ++i) current.v[i] = {x[2 * i], x[2 * i + 1]};

    terms = energy.evaluate(current, gradient);
    result.trace.push_back(terms);

    const double total = terms.total(weights);
    if (!std::isfinite(total) || total > 10.0 * result.initial_energy)
      throw std::runtime_error("optimize_mesh: diverged at iteration " + std::to_string(iter) +
                               " (energy " + std::to_string(total) + ", initial " +
                               std::to_string(result.initial_energy) + ")");
    if (total < best_energy) {
      best_energy = total;
      result.mesh = current;
    }
  }

  result.final_energy = best_energy;
  return result;
}

void write_energy_trace_csv(const std::string& path, const MeshOptimizationResult& result) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "iter,E_c,E_ld,E_s,E_a,E_t\n";
  for (std::size_t i = 0; i < result.trace.size(); ++i) {
    const EnergyTerms& t = result.trace[i];
    out << i << ',' << t.conformality << ',' << t.line << ',' << t.smoothness << ','
        << t.boundary << ',' << t.total(result.weights) << '\n';
  }
}

}  // namespace panoproj
