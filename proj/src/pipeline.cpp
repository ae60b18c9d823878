#include "panoproj/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "panoproj/image_io.hpp"
#include "panoproj/keyvalue.hpp"
#include "panoproj/montage.hpp"
#include "panoproj/warp.hpp"

namespace panoproj {

namespace {

namespace fs = std::filesystem;

// Shortest decimal representation that parses back to the same double.
std::string format_double(double v) {
  char buf[64];
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    std::snprintf(buf, sizeof(buf), "%.0f", v);
    return buf;
  }
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as a number");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': cannot parse '" + value + "' as an integer");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true") return true;
  if (value == "0" || value == "false") return false;
  throw ConfigError("config key '" + key + "': expected 0/1/true/false, got '" + value + "'");
}

template <typename F>
auto run_stage(const std::string& stage, F&& f) {
  try {
    return f();
  } catch (const PipelineError&) {
    throw;
  } catch (const ConfigError&) {
    throw;
  } catch (const IoError&) {
    throw;  // unreadable inputs are configuration problems
  } catch (const DomainError& e) {
    throw PipelineError(stage, PipelineError::Kind::Domain, e.what());
  } catch (const RenderError& e) {
    throw PipelineError(stage, PipelineError::Kind::Domain, e.what());
  } catch (const std::exception& e) {
    throw PipelineError(stage, PipelineError::Kind::Other, e.what());
  }
}

}  // namespace

const char* projection_mode_name(ProjectionMode mode) {
  switch (mode) {
    case ProjectionMode::Glap: return "glap";
    case ProjectionMode::Global: return "global";
    case ProjectionMode::Pannini: return "pannini";
    case ProjectionMode::Gpp: return "gpp";
    case ProjectionMode::Rectilinear: return "rectilinear";
    case ProjectionMode::Stereographic: return "stereographic";
  }
  return "?";
}

ProjectionMode parse_projection_mode(const std::string& name) {
  for (ProjectionMode mode :
       {ProjectionMode::Glap, ProjectionMode::Global, ProjectionMode::Pannini,
        ProjectionMode::Gpp, ProjectionMode::Rectilinear, ProjectionMode::Stereographic}) {
    if (name == projection_mode_name(mode)) return mode;
  }
  throw ConfigError("unknown projection '" + name +
                    "' (expected glap, global, pannini, gpp, rectilinear or stereographic)");
}

void RenderConfig::apply(const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    if (key.rfind("result.", 0) == 0) continue;  // manifest echo, not configuration
    if (key == "eri") eri_path = value;
    else if (key == "labels") labels_path = value;
    else if (key == "out_dir") out_dir = value;
    else if (key == "prefix") prefix = value;
    else if (key == "projection") mode = parse_projection_mode(value);
    else if (key == "vd_phi_deg") vd_phi_deg = parse_double(key, value);
    else if (key == "vd_theta_deg") vd_theta_deg = parse_double(key, value);
    else if (key == "hfov_deg") hfov_deg = parse_double(key, value);
    else if (key == "width") width = parse_int(key, value);
    else if (key == "height") height = parse_int(key, value);
    else if (key == "d") d = parse_double(key, value);
    else if (key == "vc") vc = parse_double(key, value);
    else if (key == "beta") beta = parse_double(key, value);
    else if (key == "lambda_c") weights.conformality = parse_double(key, value);
    else if (key == "lambda_b") weights.line = parse_double(key, value);
    else if (key == "lambda_s") weights.smoothness = parse_double(key, value);
    else if (key == "lambda_a") weights.boundary = parse_double(key, value);
    else if (key == "iterations") iterations = parse_int(key, value);
    else if (key == "learning_rate") learning_rate = parse_double(key, value);
    else if (key == "mesh_divisor") mesh_divisor = parse_int(key, value);
    else if (key == "foreground_d_offset") foreground_d_offset = parse_double(key, value);
    else if (key == "foreground_vc") foreground_vc = parse_double(key, value);
    else if (key == "measure_resolution_divisor")
      measure_resolution_divisor = parse_int(key, value);
    else if (key == "per_grid_normalization") per_grid_normalization = parse_bool(key, value);
    else if (key == "smoothness_mode") {
      if (value == "shrink") smoothness_mode = SmoothnessMode::EdgeShrink;
      else if (value == "preserve") smoothness_mode = SmoothnessMode::EdgePreserve;
      else throw ConfigError("config key 'smoothness_mode': expected shrink or preserve");
    }
    else if (key == "min_object_fraction") min_object_fraction = parse_double(key, value);
    else if (key == "flow_threshold") flow_threshold = parse_double(key, value);
    else if (key == "flow_overlay") flow_overlay = parse_bool(key, value);
    else throw ConfigError("unknown config key '" + key + "'");
  }
}

std::map<std::string, std::string> RenderConfig::to_map() const {
  std::map<std::string, std::string> kv;
  kv["eri"] = eri_path;
  kv["labels"] = labels_path;
  kv["out_dir"] = out_dir;
  kv["prefix"] = prefix;
  kv["projection"] = projection_mode_name(mode);
  kv["vd_phi_deg"] = format_double(vd_phi_deg);
  kv["vd_theta_deg"] = format_double(vd_theta_deg);
  kv["hfov_deg"] = format_double(hfov_deg);
  kv["width"] = std::to_string(width);
  kv["height"] = std::to_string(height);
  kv["d"] = format_double(d);
  kv["vc"] = format_double(vc);
  kv["beta"] = format_double(beta);
  kv["lambda_c"] = format_double(weights.conformality);
  kv["lambda_b"] = format_double(weights.line);
  kv["lambda_s"] = format_double(weights.smoothness);
  kv["lambda_a"] = format_double(weights.boundary);
  kv["iterations"] = std::to_string(iterations);
  kv["learning_rate"] = format_double(learning_rate);
  kv["mesh_divisor"] = std::to_string(mesh_divisor);
  kv["foreground_d_offset"] = format_double(foreground_d_offset);
  kv["foreground_vc"] = format_double(foreground_vc);
  kv["measure_resolution_divisor"] = std::to_string(measure_resolution_divisor);
  kv["per_grid_normalization"] = per_grid_normalization ? "1" : "0";
  kv["smoothness_mode"] = smoothness_mode == SmoothnessMode::EdgeShrink ? "shrink" : "preserve";
  kv["min_object_fraction"] = format_double(min_object_fraction);
  kv["flow_threshold"] = format_double(flow_threshold);
  kv["flow_overlay"] = flow_overlay ? "1" : "0";
  return kv;
}

ViewportSpec RenderConfig::spec() const {
  ViewportSpec s;
  s.view_dir = {deg_to_rad(vd_phi_deg), deg_to_rad(vd_theta_deg)};
  s.hfov = deg_to_rad(hfov_deg);
  s.width = width;
  s.height = height;
  return s;
}

void RenderConfig::validate() const {
  if (eri_path.empty()) throw ConfigError("no input image configured (key 'eri')");
  spec().validate();
  if (!(beta > 0.0)) throw ConfigError("beta must be positive");
  if (iterations < 1) throw ConfigError("iterations must be >= 1");
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be positive");
  if (mesh_divisor < 1) throw ConfigError("mesh_divisor must be >= 1");
  if (measure_resolution_divisor < 1) throw ConfigError("measure_resolution_divisor must be >= 1");
  if (mode == ProjectionMode::Pannini) PanniniParams{d, vc}.validate();
  if (mode == ProjectionMode::Gpp && !(d >= 0.0))
    throw ConfigError("gpp parameter d must be >= 0");
}

namespace {

struct PipelineRun {
  ProjectionMode effective = ProjectionMode::Glap;
  PanniniParams background;
  PanniniParams foreground;
  bool optimized = false;
  bool locally_optimized = false;
  std::optional<GridSearchResult> surface;
  std::optional<MeshOptimizationResult> mesh;
  std::optional<LabelMap> seg_vp;
  Image vp_b;
  Image vp_out;
  int mesh_cols = 0;
  int mesh_rows = 0;
};

PipelineRun execute_pipeline(const RenderConfig& config, const Image& eri,
                             const SegmentationMap* seg, ProjectionMode mode,
                             std::vector<std::string>& warnings) {
  PipelineRun run;
  run.effective = mode;
  const ViewportSpec spec = config.spec();

  if (mode == ProjectionMode::Glap && (!seg || seg->objects.empty())) {
    warnings.push_back(seg ? "label map contains no objects; rendering global-only viewport"
                           : "no label map supplied; rendering global-only viewport");
    run.effective = mode = ProjectionMode::Global;
  }

  // Global parameter selection.
  if (mode == ProjectionMode::Glap || mode == ProjectionMode::Global) {
    run_stage("global optimization", [&] {
      GlobalOptimizerOptions opts;
      opts.beta = config.beta;
      opts.resolution_divisor = config.measure_resolution_divisor;
      opts.per_grid_normalization = config.per_grid_normalization;
      if (seg) {
        run.surface = optimize_global(*seg, spec, opts);
      } else {
        SegmentationMap blank;
        blank.labels = LabelMap(eri.width, eri.height);
        run.surface = optimize_global(blank, spec, opts);
      }
      run.background = run.surface->best;
      run.optimized = true;
      return 0;
    });
  } else if (mode == ProjectionMode::Pannini) {
    run.background = {config.d, config.vc};
  } else if (mode == ProjectionMode::Gpp) {
    run.background = {config.d, 0.0};
  } else if (mode == ProjectionMode::Stereographic) {
    run.background = {1.0, 0.0};
  } else {
    run.background = {0.0, 0.0};
  }
  run.foreground = {run.background.d + config.foreground_d_offset, config.foreground_vc};

  // Globally projected viewport.
  run_stage("viewport rendering", [&] {
    if (mode == ProjectionMode::Gpp || mode == ProjectionMode::Stereographic)
      run.vp_b = render_viewport_gpp(eri, spec, GppParams{run.background.d});
    else
      run.vp_b = render_viewport(eri, spec, run.background);
    return 0;
  });

  if (mode != ProjectionMode::Glap) {
    run.vp_out = run.vp_b;
    return run;
  }

  // Local conformality correction.
  run_stage("segmentation viewport", [&] {
    run.seg_vp = render_seg_viewport(*seg, spec, run.background);
    return 0;
  });

  run.mesh_cols = std::max(2, spec.width / config.mesh_divisor);
  run.mesh_rows = std::max(2, spec.height / config.mesh_divisor);

  const MeshPair pair = run_stage("mesh construction", [&] {
    return build_meshes(run.background, run.foreground, spec, run.mesh_cols, run.mesh_rows);
  });

  run.mesh = run_stage("mesh optimization", [&] {
    MeshOptimizationOptions opts;
    opts.iterations = config.iterations;
    opts.learning_rate = config.learning_rate;
    opts.smoothness_mode = config.smoothness_mode;
    opts.min_object_fraction = config.min_object_fraction;
    return optimize_mesh(pair, *run.seg_vp, config.weights, opts);
  });

  run_stage("warping", [&] {
    const WarpField field = upsample_mesh(run.mesh->mesh, spec.width, spec.height);
    run.vp_out = warp_image(run.vp_b, field);
    return 0;
  });
  run.locally_optimized = true;
  return run;
}

Image overlay_mask(const Image& base, const LabelMap& mask) {
  Image out = base;
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < out.width; ++x) {
      if (mask.at(x, y) == 0) continue;
      out.at(x, y, 0) = static_cast<std::uint8_t>(out.at(x, y, 0) / 2);
      out.at(x, y, 1) = static_cast<std::uint8_t>(out.at(x, y, 1) / 2 + 128);
      out.at(x, y, 2) = static_cast<std::uint8_t>(out.at(x, y, 2) / 2);
    }
  }
  return out;
}

}  // namespace

RenderResult run_render(const RenderConfig& config) {
  config.validate();

  RenderResult result;
  const Image eri = run_stage("input", [&] { return read_image_png(config.eri_path); });

  std::optional<SegmentationMap> seg;
  if (!config.labels_path.empty()) {
    seg = run_stage("segmentation", [&] {
      const LabelMap classes = read_label_map(config.labels_path);
      if (classes.width != eri.width || classes.height != eri.height)
        throw std::runtime_error("label map size does not match the input image");
      return connected_components(classes);
    });
  }

  PipelineRun run =
      execute_pipeline(config, eri, seg ? &*seg : nullptr, config.mode, result.warnings);

  result.background = run.background;
  result.foreground = run.foreground;
  result.optimized = run.optimized;
  result.locally_optimized = run.locally_optimized;
  result.surface = std::move(run.surface);
  result.mesh = std::move(run.mesh);

  run_stage("output", [&] {
    fs::create_directories(config.out_dir);
    auto path = [&](const std::string& suffix) {
      return (fs::path(config.out_dir) / (config.prefix + suffix)).string();
    };

    result.output_path = path("_out.png");
    write_image_png(result.output_path, run.vp_out);
    result.outputs["viewport"] = result.output_path;

    if (run.locally_optimized) {
      write_image_png(path("_vpb.png"), run.vp_b);
      result.outputs["vp_b"] = path("_vpb.png");
      write_label_pgm(path("_vpseg.pgm"), *run.seg_vp);
      result.outputs["vp_seg"] = path("_vpseg.pgm");
      write_energy_trace_csv(path("_energy_trace.csv"), *result.mesh);
      result.outputs["energy_trace"] = path("_energy_trace.csv");
    }
    if (result.surface) {
      write_cost_surface_csv(path("_cost_surface.csv"), *result.surface);
      result.outputs["cost_surface"] = path("_cost_surface.csv");
    }
    if (seg) {
      write_object_table_csv(path("_objects.csv"), *seg);
      result.outputs["objects"] = path("_objects.csv");
    }
    if (config.flow_overlay && run.locally_optimized) {
      const int mc = result.mesh->mesh.cols;
      const int mr = result.mesh->mesh.rows;
      const VertexMesh base = uniform_mesh(mc, mr);
      const LabelMap mask = flow_mask(base, result.mesh->mesh, run.vp_out.width,
                                      run.vp_out.height, config.flow_threshold);
      write_label_png(path("_flow_mask.png"), mask);
      result.outputs["flow_mask"] = path("_flow_mask.png");
      write_image_png(path("_flow_overlay.png"), overlay_mask(run.vp_b, mask));
      result.outputs["flow_overlay"] = path("_flow_overlay.png");
    }

    // Manifest: the effective configuration plus run results; feeding it
    // back as a config reproduces the run bit for bit.
    std::map<std::string, std::string> manifest = config.to_map();
    manifest["result.projection_effective"] = projection_mode_name(run.effective);
    manifest["result.d_b"] = format_double(run.background.d);
    manifest["result.vc_b"] = format_double(run.background.vc);
    manifest["result.d_f"] = format_double(run.foreground.d);
    manifest["result.vc_f"] = format_double(run.foreground.vc);
    if (run.locally_optimized) {
      manifest["result.mesh_cols"] = std::to_string(run.mesh_cols);
      manifest["result.mesh_rows"] = std::to_string(run.mesh_rows);
      manifest["result.energy_initial"] = format_double(result.mesh->initial_energy);
      manifest["result.energy_final"] = format_double(result.mesh->final_energy);
    }
    if (seg) manifest["result.object_count"] = std::to_string(seg->objects.size());
    for (std::size_t i = 0; i < result.warnings.size(); ++i)
      manifest["result.warning_" + std::to_string(i)] = result.warnings[i];

    result.manifest = manifest;
    write_key_value_file(path("_manifest.txt"), manifest);
    result.outputs["manifest"] = path("_manifest.txt");
    return 0;
  });

  return result;
}

std::string run_compare(const CompareConfig& config) {
  if (config.modes.empty()) throw ConfigError("compare: no projections listed");
  config.base.validate();

  const Image eri = run_stage("input", [&] { return read_image_png(config.base.eri_path); });
  std::optional<SegmentationMap> seg;
  if (!config.base.labels_path.empty()) {
    seg = run_stage("segmentation", [&] {
      const LabelMap classes = read_label_map(config.base.labels_path);
      if (classes.width != eri.width || classes.height != eri.height)
        throw std::runtime_error("label map size does not match the input image");
      return connected_components(classes);
    });
  }

  std::vector<std::pair<std::string, Image>> tiles;
  for (ProjectionMode mode : config.modes) {
    std::vector<std::string> warnings;
    PipelineRun run =
        execute_pipeline(config.base, eri, seg ? &*seg : nullptr, mode, warnings);
    std::ostringstream label;
    label << projection_mode_name(mode);
    label << " d=" << format_double(run.background.d)
          << " vc=" << format_double(run.background.vc);
    tiles.emplace_back(label.str(), std::move(run.vp_out));
  }

  const Image sheet = compose_sheet(tiles);
  run_stage("output", [&] {
    if (const fs::path parent = fs::path(config.out_path).parent_path(); !parent.empty())
      fs::create_directories(parent);
    write_image_png(config.out_path, sheet);
    return 0;
  });
  return config.out_path;
}

EvalResult run_eval(const EvalConfig& config) {
  EvalResult result;
  const std::vector<PreferenceRecord> records =
      run_stage("input", [&] { return read_preference_csv(config.votes_path); });

  result.observers = run_stage("outlier detection", [&] { return transitivity_rates(records); });
  for (const TransitivityReport& r : result.observers)
    if (r.outlier) result.excluded.push_back(r.observer);

  return run_stage("scoring", [&] {
    fs::create_directories(config.out_dir);
    auto path = [&](const std::string& suffix) {
      return (fs::path(config.out_dir) / (config.prefix + suffix)).string();
    };

    write_transitivity_csv(path("_observers.csv"), result.observers);
    result.files.push_back(path("_observers.csv"));

    const std::vector<PreferenceMatrix> matrices =
        build_preference_matrices(records, result.excluded);
    for (const PreferenceMatrix& m : matrices) {
      const PreferenceProbabilities probs = preference_probabilities(m);
      write_probability_csv(path("_probabilities_" + m.image + ".csv"), m, probs);
      result.files.push_back(path("_probabilities_" + m.image + ".csv"));

      const BradleyTerryResult bt = bradley_terry_scores(m);
      write_bt_csv(path("_bt_" + m.image + ".csv"), m.image, bt);
      result.files.push_back(path("_bt_" + m.image + ".csv"));
    }

    // Per-group mean over images sharing one stimulus set: probabilities
    // are averaged, not win counts.
    std::map<std::vector<std::string>, std::vector<PreferenceMatrix>> groups;
    for (const PreferenceMatrix& m : matrices) groups[m.stimuli].push_back(m);
    int group_index = 0;
    for (const auto& [stimuli, group] : groups) {
      ++group_index;
      if (group.size() < 2) continue;
      const PreferenceProbabilities mean = mean_probabilities(group);
      PreferenceMatrix header;
      header.stimuli = stimuli;
      const std::string file =
          path("_probabilities_mean_g" + std::to_string(group_index) + ".csv");
      write_probability_csv(file, header, mean);
      result.files.push_back(file);
    }
    return result;
  });
}

}  // namespace panoproj
