#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "panoproj/image_io.hpp"
#include "panoproj/keyvalue.hpp"
#include "panoproj/pipeline.hpp"

namespace {

using namespace panoproj;

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDomain = 3;

// CLI flags override config-file keys, which override defaults.
struct RenderCli {
  std::string config_file;
  std::map<std::string, std::string> overrides;
};

void add_override_option(CLI::App* cmd, RenderCli& cli, const std::string& flag,
                         const std::string& key, const std::string& help) {
  cmd->add_option_function<std::string>(
      flag, [&cli, key](const std::string& v) { cli.overrides[key] = v; }, help);
}

RenderConfig resolve_config(const RenderCli& cli) {
  RenderConfig config;
  if (!cli.config_file.empty()) config.apply(read_key_value_file(cli.config_file));
  config.apply(cli.overrides);
  return config;
}

int run_render_command(const RenderCli& cli) {
  const RenderConfig config = resolve_config(cli);
  const RenderResult result = run_render(config);
  for (const std::string& warning : result.warnings)
    std::cerr << "warning: " << warning << "\n";
  std::cout << "projection " << projection_mode_name(config.mode) << ": d_b="
            << result.background.d << " vc_b=" << result.background.vc;
  if (result.locally_optimized)
    std::cout << " d_f=" << result.foreground.d << " vc_f=" << result.foreground.vc;
  std::cout << "\n";
  for (const auto& [kind, path] : result.outputs) std::cout << kind << ": " << path << "\n";
  return 0;
}

int run_compare_command(const RenderCli& cli, const std::vector<std::string>& projections,
                        const std::string& out_path) {
  CompareConfig config;
  config.base = resolve_config(cli);
  config.out_path = out_path;
  for (const std::string& name : projections)
    config.modes.push_back(parse_projection_mode(name));
  const std::string path = run_compare(config);
  std::cout << "sheet: " << path << "\n";
  return 0;
}

int run_eval_command(const EvalConfig& config) {
  const EvalResult result = run_eval(config);
  for (const TransitivityReport& r : result.observers) {
    std::cout << "observer " << r.observer << ": R=" << r.rate
              << (r.outlier ? " (outlier, excluded)" : "") << "\n";
  }
  for (const std::string& file : result.files) std::cout << file << "\n";
  return 0;
}

int run_cubemap_command(const std::string& input, const std::string& out_dir, int face_px,
                        bool labels, const std::vector<std::string>& faces, int out_w,
                        int out_h, const std::string& out_eri) {
  namespace fs = std::filesystem;
  if (faces.empty()) {
    fs::create_directories(out_dir);
    if (labels) {
      const LabelCubeFaces cube = eri_to_cube(read_label_map(input), face_px);
      for (CubeFace f : kAllCubeFaces) {
        const std::string path =
            (fs::path(out_dir) / (std::string(cube_face_name(f)) + ".pgm")).string();
        write_label_pgm(path, cube.face(f));
        std::cout << path << "\n";
      }
    } else {
      const CubeFaces cube = eri_to_cube(read_image_png(input), face_px);
      for (CubeFace f : kAllCubeFaces) {
        const std::string path =
            (fs::path(out_dir) / (std::string(cube_face_name(f)) + ".png")).string();
        write_image_png(path, cube.face(f));
        std::cout << path << "\n";
      }
    }
    return 0;
  }

  if (faces.size() != 6)
    throw ConfigError("cubemap: --faces needs six files (front back left right top bottom)");
  if (labels) {
    LabelCubeFaces cube;
    for (int i = 0; i < 6; ++i) cube.face(kAllCubeFaces[i]) = read_label_map(faces[i]);
    write_label_pgm(out_eri, cube_to_eri(cube, out_w, out_h));
  } else {
    CubeFaces cube;
    for (int i = 0; i < 6; ++i) cube.face(kAllCubeFaces[i]) = read_image_png(faces[i]);
    write_image_png(out_eri, cube_to_eri(cube, out_w, out_h));
  }
  std::cout << out_eri << "\n";
  return 0;
}

int run_measures_command(const RenderCli& cli, const std::string& out_csv) {
  RenderConfig config = resolve_config(cli);
  if (config.labels_path.empty())
    throw ConfigError("measures: a label map is required (key 'labels')");

  const LabelMap classes = read_label_map(config.labels_path);
  const SegmentationMap seg = connected_components(classes);

  GlobalOptimizerOptions opts;
  opts.beta = config.beta;
  opts.resolution_divisor = config.measure_resolution_divisor;
  opts.per_grid_normalization = config.per_grid_normalization;
  const GridSearchResult result = optimize_global(seg, config.spec(), opts);
  write_cost_surface_csv(out_csv, result);
  std::cout << "best: d=" << result.best.d << " vc=" << result.best.vc << "\n";
  std::cout << out_csv << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wide-FoV viewport rendering for 360-degree images"};
  app.require_subcommand(1);

  RenderCli render_cli;
  CLI::App* render = app.add_subcommand("render", "Render a viewport from an ERI image");
  render->add_option("--config", render_cli.config_file, "key = value configuration file");
  add_override_option(render, render_cli, "--eri", "eri", "input equirectangular PNG");
  add_override_option(render, render_cli, "--labels", "labels",
                      "class-label ERI (PNG gray or PGM)");
  add_override_option(render, render_cli, "--out-dir", "out_dir", "output directory");
  add_override_option(render, render_cli, "--prefix", "prefix", "output file prefix");
  add_override_option(render, render_cli, "--projection", "projection",
                      "glap | global | pannini | gpp | rectilinear | stereographic");
  add_override_option(render, render_cli, "--vd-phi", "vd_phi_deg",
                      "viewing direction longitude, degrees");
  add_override_option(render, render_cli, "--vd-theta", "vd_theta_deg",
                      "viewing direction latitude, degrees");
  add_override_option(render, render_cli, "--hfov", "hfov_deg", "horizontal FoV, degrees");
  add_override_option(render, render_cli, "--width", "width", "viewport width, pixels");
  add_override_option(render, render_cli, "--height", "height", "viewport height, pixels");
  add_override_option(render, render_cli, "--d", "d", "projection parameter d (pannini/gpp)");
  add_override_option(render, render_cli, "--vc", "vc", "vertical compression (pannini)");
  add_override_option(render, render_cli, "--beta", "beta", "stretching-to-bending ratio");
  add_override_option(render, render_cli, "--lambda-c", "lambda_c", "conformality weight");
  add_override_option(render, render_cli, "--lambda-b", "lambda_b", "line weight");
  add_override_option(render, render_cli, "--lambda-s", "lambda_s", "smoothness weight");
  add_override_option(render, render_cli, "--lambda-a", "lambda_a", "boundary weight");
  add_override_option(render, render_cli, "--iterations", "iterations", "optimizer iterations");
  add_override_option(render, render_cli, "--lr", "learning_rate", "optimizer learning rate");
  add_override_option(render, render_cli, "--mesh-divisor", "mesh_divisor",
                      "viewport-to-mesh resolution divisor");
  add_override_option(render, render_cli, "--flow-threshold", "flow_threshold",
                      "flow mask threshold, grid units");
  add_override_option(render, render_cli, "--flow-overlay", "flow_overlay",
                      "write the flow mask overlay (0/1)");

  RenderCli compare_cli;
  std::vector<std::string> compare_projections;
  std::string compare_out = "compare.png";
  CLI::App* compare = app.add_subcommand("compare", "Render several projections side by side");
  compare->add_option("--config", compare_cli.config_file, "key = value configuration file");
  add_override_option(compare, compare_cli, "--eri", "eri", "input equirectangular PNG");
  add_override_option(compare, compare_cli, "--labels", "labels", "class-label ERI");
  add_override_option(compare, compare_cli, "--vd-phi", "vd_phi_deg", "viewing longitude, degrees");
  add_override_option(compare, compare_cli, "--vd-theta", "vd_theta_deg",
                      "viewing latitude, degrees");
  add_override_option(compare, compare_cli, "--hfov", "hfov_deg", "horizontal FoV, degrees");
  add_override_option(compare, compare_cli, "--width", "width", "viewport width, pixels");
  add_override_option(compare, compare_cli, "--height", "height", "viewport height, pixels");
  add_override_option(compare, compare_cli, "--d", "d", "projection parameter d");
  add_override_option(compare, compare_cli, "--vc", "vc", "vertical compression");
  compare->add_option("--projections", compare_projections, "projections to render")
      ->delimiter(',')
      ->required();
  compare->add_option("--out", compare_out, "output sheet path");

  EvalConfig eval_config;
  CLI::App* eval = app.add_subcommand("eval", "Analyze pairwise-comparison votes");
  eval->add_option("votes", eval_config.votes_path, "CSV of preference records")->required();
  eval->add_option("--out-dir", eval_config.out_dir, "output directory");
  eval->add_option("--prefix", eval_config.prefix, "output file prefix");

  std::string cube_input, cube_out_dir = "cube", cube_out_eri = "eri.png";
  std::vector<std::string> cube_faces;
  int cube_face_px = 512, cube_out_w = 2048, cube_out_h = 1024;
  bool cube_labels = false;
  CLI::App* cubemap = app.add_subcommand("cubemap", "Convert between ERI and cube faces");
  cubemap->add_option("--input", cube_input, "input ERI (omit when assembling faces)");
  cubemap->add_option("--out-dir", cube_out_dir, "directory for the six faces");
  cubemap->add_option("--face-size", cube_face_px, "face edge length, pixels");
  cubemap->add_flag("--labels", cube_labels, "treat rasters as label maps");
  cubemap->add_option("--faces", cube_faces,
                      "six face files (front back left right top bottom) to assemble")
      ->delimiter(',');
  cubemap->add_option("--out-width", cube_out_w, "assembled ERI width");
  cubemap->add_option("--out-height", cube_out_h, "assembled ERI height");
  cubemap->add_option("--out-eri", cube_out_eri, "assembled ERI path");

  RenderCli measures_cli;
  std::string measures_out = "measures.csv";
  CLI::App* measures = app.add_subcommand("measures", "Dump the stretching/bending surface");
  measures->add_option("--config", measures_cli.config_file, "key = value configuration file");
  add_override_option(measures, measures_cli, "--labels", "labels", "class-label ERI");
  add_override_option(measures, measures_cli, "--eri", "eri", "input ERI (geometry only)");
  add_override_option(measures, measures_cli, "--vd-phi", "vd_phi_deg",
                      "viewing longitude, degrees");
  add_override_option(measures, measures_cli, "--vd-theta", "vd_theta_deg",
                      "viewing latitude, degrees");
  add_override_option(measures, measures_cli, "--hfov", "hfov_deg", "horizontal FoV, degrees");
  add_override_option(measures, measures_cli, "--width", "width", "viewport width, pixels");
  add_override_option(measures, measures_cli, "--height", "height", "viewport height, pixels");
  add_override_option(measures, measures_cli, "--beta", "beta", "stretching-to-bending ratio");
  measures->add_option("--out", measures_out, "surface CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (render->parsed()) return run_render_command(render_cli);
    if (compare->parsed())
      return run_compare_command(compare_cli, compare_projections, compare_out);
    if (eval->parsed()) return run_eval_command(eval_config);
    if (cubemap->parsed())
      return run_cubemap_command(cube_input, cube_out_dir, cube_face_px, cube_labels,
                                 cube_faces, cube_out_w, cube_out_h, cube_out_eri);
    if (measures->parsed()) return run_measures_command(measures_cli, measures_out);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const PipelineError& e) {
    std::cerr << "error in stage '" << e.stage << "': " << e.what() << "\n";
    return e.kind == PipelineError::Kind::Domain ? kExitDomain : kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return 0;
}
