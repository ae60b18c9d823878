#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "panoproj/global_optimizer.hpp"
#include "panoproj/mesh_optimizer.hpp"
#include "panoproj/pairwise.hpp"
#include "panoproj/render.hpp"

namespace panoproj {

/// A pipeline stage failure; carries the stage name and whether the cause
/// was a projection domain violation.
struct PipelineError : std::runtime_error {
  enum class Kind { Domain, Other };

  std::string stage;
  Kind kind;

  PipelineError(std::string stage_name, Kind k, const std::string& what)
      : std::runtime_error(stage_name + ": " + what), stage(std::move(stage_name)), kind(k) {}
};

/// Raised for malformed configuration (unknown keys, unparsable values).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ProjectionMode { Glap, Global, Pannini, Gpp, Rectilinear, Stereographic };

const char* projection_mode_name(ProjectionMode mode);
ProjectionMode parse_projection_mode(const std::string& name);

/// Full render configuration. Angles are degrees at this interface and
/// converted to radians internally. Values load from a key-value file and
/// command-line overrides; the emitted manifest echoes every key and can
/// be re-run as a config file.
struct RenderConfig {
  std::string eri_path;
  std::string labels_path;
  std::string out_dir = ".";
  std::string prefix = "viewport";
  ProjectionMode mode = ProjectionMode::Glap;

  double vd_phi_deg = 0.0;
  double vd_theta_deg = 0.0;
  double hfov_deg = 150.0;
  int width = 1816;
  int height = 1020;

  double d = 0.5;  // fixed-parameter pannini/gpp modes
  double vc = 0.0;

  double beta = 0.17;
  EnergyWeights weights;
  int iterations = 100;
  double learning_rate = 0.02;
  int mesh_divisor = 10;
  double foreground_d_offset = 0.2;
  double foreground_vc = 0.0;
  int measure_resolution_divisor = 4;
  bool per_grid_normalization = false;
  SmoothnessMode smoothness_mode = SmoothnessMode::EdgePreserve;
  double min_object_fraction = 0.0005;
  double flow_threshold = 0.5;
  bool flow_overlay = false;

  /// Applies key-value settings; keys prefixed "result." are ignored so a
  /// manifest can be fed back in. Unknown keys raise ConfigError.
  void apply(const std::map<std::string, std::string>& kv);
  std::map<std::string, std::string> to_map() const;

  ViewportSpec spec() const;
  void validate() const;
};

struct RenderResult {
  PanniniParams background;
  PanniniParams foreground;
  bool optimized = false;         // background came from the grid search
  bool locally_optimized = false; // mesh stage ran
  std::optional<GridSearchResult> surface;
  std::optional<MeshOptimizationResult> mesh;
  std::vector<std::string> warnings;
  std::map<std::string, std::string> manifest;
  std::map<std::string, std::string> outputs;  // kind -> path
  std::string output_path;                     // the final viewport image
};

/// Runs the configured pipeline end to end and writes all outputs
/// (viewport, cost surface, energy trace, flow mask, manifest).
RenderResult run_render(const RenderConfig& config);

/// Renders every listed projection mode for one scene and writes a
/// labeled side-by-side sheet.
struct CompareConfig {
  RenderConfig base;
  std::vector<ProjectionMode> modes;
  std::string out_path = "compare.png";
};

std::string run_compare(const CompareConfig& config);

struct EvalConfig {
  std::string votes_path;
  std::string out_dir = ".";
  std::string prefix = "pc";
};

struct EvalResult {
  std::vector<TransitivityReport> observers;
  std::vector<std::string> excluded;
  std::vector<std::string> files;
};

/// Outlier screening, preference probabilities and Bradley-Terry scores
/// over a vote CSV; writes one report per stage.
EvalResult run_eval(const EvalConfig& config);

}  // namespace panoproj
