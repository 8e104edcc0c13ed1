#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "degen/analytics.hpp"
#include "degen/geometry.hpp"
#include "degen/montecarlo.hpp"
#include "degen/report.hpp"
#include "degen/rng.hpp"
#include "degen/samplers.hpp"
#include "degen/version.hpp"
#include "degen/xyz_io.hpp"

namespace {

using namespace degen;
using degen::Json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitCap = 4;

struct GlobalOpts {
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
  unsigned threads = 1;
};

void emit(const std::string& text, const GlobalOpts& global) {
  if (global.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(global.out);
  if (!file) throw IoError("cannot open for writing: " + global.out);
  file << text;
  file.flush();
  if (!file) throw IoError("write failed: " + global.out);
}

void emit_report(const std::string& command, Json params, Json payload,
                 const GlobalOpts& global) {
  params["seed"] = global.seed;
  params["threads"] = global.threads;
  ReportEnvelope envelope{command, std::move(params), current_utc_timestamp(),
                          std::move(payload)};
  emit(render_report(envelope, parse_output_format(global.format)), global);
}

// ---------------------------------------------------------------- gen ----

struct GenConfig {
  std::string kind;
  std::size_t n = 0;
  std::size_t dim = 3;
  std::vector<double> normal{0, 0, 1};
  double offset = 0.0;
  std::vector<double> extent{-1, 1, -1, 1};
  std::vector<double> center{0, 0, 0};
  double radius = 1.0;
  std::vector<double> base{0, 0, 0};
  std::vector<double> dir{1, 0, 0};
  double t_min = 0.0;
  double t_max = 1.0;
  double scene_radius = 1.0;
  double scene_height = 1.0;
  std::size_t n_background = 0;
  std::size_t n_surface = 0;
  std::vector<double> scene_planes;   // groups of nx,ny,nz,b
  std::vector<double> scene_sphere;   // cx,cy,cz,r
  std::vector<double> scene_lines;    // groups of bx,by,bz,dx,dy,dz
  std::vector<double> quantize_steps; // 1 or 3 values
  double noise_sigma = 0.0;
};

Vec3 to_vec3(const std::vector<double>& v, const char* what) {
  if (v.size() != 3) {
    throw InvalidInputError(std::string(what) + ": expected 3 comma-separated values");
  }
  return {v[0], v[1], v[2]};
}

PointCloud generate_cloud(const GenConfig& cfg, const SeededRng& rng) {
  const NoiseModel clean(0.0);
  if (cfg.kind == "uniform") {
    return sample_uniform_hypercube(cfg.n, cfg.dim, rng);
  }
  if (cfg.kind == "plane") {
    if (cfg.extent.size() != 4) {
      throw InvalidInputError("--extent: expected umin,umax,vmin,vmax");
    }
    const PlaneManifold plane(to_vec3(cfg.normal, "--normal"), cfg.offset);
    const PatchExtent extent(cfg.extent[0], cfg.extent[1], cfg.extent[2],
                             cfg.extent[3]);
    return sample_plane_patch(plane, extent, cfg.n, clean, rng);
  }
  if (cfg.kind == "sphere") {
    const SphereManifold sphere(VecX(to_vec3(cfg.center, "--center")), cfg.radius);
    return sample_sphere_surface(sphere, cfg.n, clean, rng);
  }
  if (cfg.kind == "line") {
    const LineManifold line(VecX(to_vec3(cfg.base, "--base")),
                            VecX(to_vec3(cfg.dir, "--dir")));
    return sample_line_segment(line, cfg.t_min, cfg.t_max, cfg.n, clean, rng);
  }
  if (cfg.kind == "scene") {
    SceneModel scene(cfg.scene_radius, cfg.scene_height);
    if (cfg.scene_planes.size() % 4 != 0) {
      throw InvalidInputError("--plane: expected groups of nx,ny,nz,b");
    }
    for (std::size_t i = 0; i < cfg.scene_planes.size(); i += 4) {
      scene.planes.emplace_back(
          Vec3{cfg.scene_planes[i], cfg.scene_planes[i + 1], cfg.scene_planes[i + 2]},
          cfg.scene_planes[i + 3]);
    }
    if (!cfg.scene_sphere.empty()) {
      if (cfg.scene_sphere.size() != 4) {
        throw InvalidInputError("--sphere: expected cx,cy,cz,r");
      }
      scene.sphere = SphereManifold(
          VecX(Vec3{cfg.scene_sphere[0], cfg.scene_sphere[1], cfg.scene_sphere[2]}),
          cfg.scene_sphere[3]);
    }
    if (cfg.scene_lines.size() % 6 != 0) {
      throw InvalidInputError("--line: expected groups of bx,by,bz,dx,dy,dz");
    }
    for (std::size_t i = 0; i < cfg.scene_lines.size(); i += 6) {
      scene.lines.emplace_back(
          VecX(Vec3{cfg.scene_lines[i], cfg.scene_lines[i + 1], cfg.scene_lines[i + 2]}),
          VecX(Vec3{cfg.scene_lines[i + 3], cfg.scene_lines[i + 4],
                    cfg.scene_lines[i + 5]}));
    }
    return sample_scene(scene, cfg.n_background, cfg.n_surface, clean, rng);
  }
  throw InvalidInputError("unknown generator kind: " + cfg.kind);
}

int run_gen(const GenConfig& cfg, const GlobalOpts& global) {
  const SeededRng rng(global.seed);
  PointCloud cloud = generate_cloud(cfg, rng);

  // Stage order: surface placement, then quantization, then noise.
  if (!cfg.quantize_steps.empty()) {
    std::vector<double> s = cfg.quantize_steps;
    if (s.size() == 1) s = {s[0], s[0], s[0]};
    if (s.size() != 3) {
      throw InvalidInputError("--quantize: expected dx,dy,dz (or one shared step)");
    }
    cloud = quantize(cloud, QuantizationGrid(s[0], s[1], s[2]));
  }
  if (cfg.noise_sigma > 0.0) {
    cloud = add_noise(cloud, NoiseModel(cfg.noise_sigma),
                      rng.substream("cli-noise-stage", 0));
  }

  if (global.out.empty()) {
    write_xyz(std::cout, cloud);
  } else {
    write_xyz_file(global.out, cloud);
  }
  return kExitOk;
}

// ------------------------------------------------------------- detect ----

struct DetectConfig {
  std::string input;
  std::string mode;
  double epsilon = 0.0;
  double delta = 0.0;
  bool epsilon_given = false;
  bool delta_given = false;
  bool sampled = false;
  std::uint64_t samples = 100000;
  std::size_t cap = 0;  // 0 = module default
};

int run_detect(const DetectConfig& cfg, const GlobalOpts& global) {
  if ((cfg.mode == "collinear" || cfg.mode == "coplanar") && !cfg.epsilon_given) {
    throw InvalidInputError("--epsilon is required for mode " + cfg.mode);
  }
  if (cfg.mode == "sphere" && !cfg.delta_given) {
    throw InvalidInputError("--delta is required for mode sphere");
  }
  const PointCloud cloud = read_xyz_file(cfg.input);
  Json params{{"input", cfg.input},
              {"mode", cfg.mode},
              {"n_points", cloud.size()},
              {"dim", cloud.dim()}};
  Json payload{{"mode", cfg.mode}};

  if (cfg.mode == "collinear" || cfg.mode == "coplanar") {
    const bool collinear = cfg.mode == "collinear";
    params["epsilon"] = cfg.epsilon;
    if (cfg.sampled) params["samples"] = cfg.samples;
    CountResult result;
    if (cfg.sampled) {
      result = count_degenerate_sampled(cloud, collinear ? 3 : 4, cfg.epsilon,
                                        cfg.samples, SeededRng(global.seed),
                                        global.threads);
    } else {
      ExhaustiveCaps caps;
      if (cfg.cap > 0) {
        caps.collinear = cfg.cap;
        caps.coplanar = cfg.cap;
      }
      result = collinear
                   ? count_collinear_exhaustive(cloud, cfg.epsilon, caps, global.threads)
                   : count_coplanar_exhaustive(cloud, cfg.epsilon, caps, global.threads);
    }
    payload["count"] = to_json(result);
  } else if (cfg.mode == "sphere") {
    params["delta"] = cfg.delta;
    const SphereManifold fitted = fit_sphere(cloud);
    double max_residual = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
      max_residual = std::max(max_residual, sphere_residual(cloud.point(i), fitted));
    }
    Json center = Json::array();
    for (Eigen::Index i = 0; i < fitted.center().size(); ++i) {
      center.push_back(fitted.center()(i));
    }
    payload["fitted"] = {{"center", center}, {"radius", fitted.radius()}};
    payload["max_residual"] = max_residual;
    payload["nearly_spherical"] =
        is_nearly_spherical(cloud, fitted, ToleranceSpec(0.0, cfg.delta));
  } else {
    throw InvalidInputError("--mode must be collinear, coplanar, or sphere");
  }

  emit_report("detect", std::move(params), std::move(payload), global);
  return kExitOk;
}

// ------------------------------------------------------------- expect ----

struct ExpectConfig {
  std::string model;
  std::uint64_t n = 0;
  std::uint64_t dim = 3;
  std::uint64_t k = 3;
  double epsilon = 0.0;
  double c_const = 1.0;
  double plane_area = 0.0;
  double delta = 0.0;
  double radius = 1.0;
  double height = 1.0;
  double sphere_radius = 1.0;
  std::vector<double> factors;
};

int run_expect(const ExpectConfig& cfg, const GlobalOpts& global) {
  Json params{{"model", cfg.model}};
  double value = 0.0;
  std::string formula;

  if (cfg.model == "random-collinear") {
    params["n"] = cfg.n;
    params["epsilon"] = cfg.epsilon;
    value = expected_collinear(cfg.n, cfg.epsilon);
    formula = "eps*N^2/6";
  } else if (cfg.model == "random-coplanar") {
    params["n"] = cfg.n;
    params["epsilon"] = cfg.epsilon;
    value = expected_coplanar(cfg.n, cfg.epsilon);
    formula = "eps*N/24";
  } else if (cfg.model == "random-general") {
    params["n"] = cfg.n;
    params["dim"] = cfg.dim;
    params["k"] = cfg.k;
    params["epsilon"] = cfg.epsilon;
    params["c"] = cfg.c_const;
    value = expected_degenerate_subsets({.n_points = cfg.n, .dim = cfg.dim,
                                         .subset_size = cfg.k,
                                         .epsilon = cfg.epsilon,
                                         .proportionality = cfg.c_const});
    formula = "eps*N^(d-k+2)/k!";
  } else if (cfg.model == "random-single") {
    params["n"] = cfg.n;
    params["dim"] = cfg.dim;
    params["k"] = cfg.k;
    params["epsilon"] = cfg.epsilon;
    params["c"] = cfg.c_const;
    value = single_subset_probability({.n_points = cfg.n, .dim = cfg.dim,
                                       .subset_size = cfg.k,
                                       .epsilon = cfg.epsilon,
                                       .proportionality = cfg.c_const});
    formula = "min(1, C*eps/N^(d-k))";
  } else if (cfg.model == "structured-coplanar") {
    params["plane_area"] = cfg.plane_area;
    params["delta"] = cfg.delta;
    params["radius"] = cfg.radius;
    params["height"] = cfg.height;
    StructuredModelParams sp;
    sp.plane_area = cfg.plane_area;
    sp.shell_thickness = cfg.delta;
    sp.cyl_radius = cfg.radius;
    sp.cyl_height = cfg.height;
    value = structured_coplanar_probability(sp);
    formula = "min(1, A_plane*delta/(pi*R^2*h))";
  } else if (cfg.model == "structured-sphere") {
    params["sphere_radius"] = cfg.sphere_radius;
    params["delta"] = cfg.delta;
    params["radius"] = cfg.radius;
    params["height"] = cfg.height;
    params["dim"] = cfg.dim;
    StructuredModelParams sp;
    sp.shell_thickness = cfg.delta;
    sp.cyl_radius = cfg.radius;
    sp.cyl_height = cfg.height;
    sp.sphere_radius = cfg.sphere_radius;
    sp.dim = cfg.dim;
    value = near_spherical_probability(sp);
    formula = "min(1, delta*d*r^(d-1)/(pi*R^2*h))";
  } else if (cfg.model == "composite") {
    params["factors"] = cfg.factors;
    value = composite_degeneracy_probability(cfg.factors);
    formula = "1 - prod(1 - P_i)";
  } else {
    throw InvalidInputError("unknown model: " + cfg.model);
  }

  emit_report("expect", std::move(params),
              Json{{"model", cfg.model}, {"value", value}, {"formula", formula}},
              global);
  return kExitOk;
}

// -------------------------------------------------------------- table ----

struct TableConfig {
  std::vector<std::uint64_t> n_values{1000, 5000, 10000, 20000};
  double eps_collinear = 1e-6;
  double eps_coplanar = 1e-3;
  double amp_collinear = 10.0;
  double amp_coplanar = 3.0;
};

int run_table(const TableConfig& cfg, const GlobalOpts& global) {
  const ExpectationTable table = build_expectation_table(
      cfg.n_values, cfg.eps_collinear, cfg.eps_coplanar,
      AmplificationFactors(cfg.amp_collinear, cfg.amp_coplanar));
  Json params{{"n_values", cfg.n_values},
              {"eps_collinear", cfg.eps_collinear},
              {"eps_coplanar", cfg.eps_coplanar},
              {"amp_collinear", cfg.amp_collinear},
              {"amp_coplanar", cfg.amp_coplanar}};
  emit_report("table", std::move(params), to_json(table), global);
  return kExitOk;
}

// ----------------------------------------------------------------- mc ----

struct McConfig {
  std::size_t n = 200;
  std::vector<double> grid{0.1};
  double epsilon = 1e-6;
  std::uint64_t reps = 100;
  double sigma = 0.0;
  std::uint64_t samples = 100000;
};

struct PooledCounts {
  double raw = 0.0;
  double quantized = 0.0;
  std::uint64_t amplified_seeds = 0;
};

Json ratio_with_ci(const PooledCounts& pooled) {
  Json out{{"raw_total", pooled.raw}, {"quantized_total", pooled.quantized}};
  if (pooled.raw > 0.0 && pooled.quantized > 0.0) {
    // Log-normal interval for a ratio of Poisson-like totals.
    const double ratio = pooled.quantized / pooled.raw;
    const double se = std::sqrt(1.0 / pooled.quantized + 1.0 / pooled.raw);
    out["measured"] = ratio;
    out["ci_low"] = ratio * std::exp(-1.959963984540054 * se);
    out["ci_high"] = ratio * std::exp(1.959963984540054 * se);
    out["defined"] = true;
  } else {
    out["defined"] = false;
  }
  return out;
}

int run_mc(const McConfig& cfg, const GlobalOpts& global) {
  std::vector<double> s = cfg.grid;
  if (s.size() == 1) s = {s[0], s[0], s[0]};
  if (s.size() != 3) {
    throw InvalidInputError("--grid: expected dx,dy,dz (or one shared step)");
  }
  const QuantizationGrid grid(s[0], s[1], s[2]);
  const SeededRng master(global.seed);
  const ExhaustiveCaps caps;

  auto count_pair = [&](const PointCloud& cloud, unsigned k,
                        const SeededRng& est_rng) {
    const bool within_cap =
        (k == 3) ? cloud.size() <= caps.collinear : cloud.size() <= caps.coplanar;
    if (within_cap) {
      return k == 3 ? count_collinear_exhaustive(cloud, cfg.epsilon, caps,
                                                 global.threads)
                    : count_coplanar_exhaustive(cloud, cfg.epsilon, caps,
                                                global.threads);
    }
    return count_degenerate_sampled(cloud, k, cfg.epsilon, cfg.samples, est_rng,
                                    global.threads);
  };

  PooledCounts collinear, coplanar;
  Json per_seed = Json::array();
  for (std::uint64_t rep = 0; rep < cfg.reps; ++rep) {
    const SeededRng rep_rng = master.substream("mc-rep", rep);
    PointCloud raw = sample_uniform_hypercube(cfg.n, 3, rep_rng);
    PointCloud snapped = quantize(raw, grid);
    if (cfg.sigma > 0.0) {
      raw = add_noise(raw, NoiseModel(cfg.sigma), rep_rng.substream("noise-raw", 0));
      snapped = add_noise(snapped, NoiseModel(cfg.sigma),
                          rep_rng.substream("noise-quantized", 0));
    }

    const CountResult col_raw = count_pair(raw, 3, rep_rng.substream("est-col-raw", 0));
    const CountResult col_q =
        count_pair(snapped, 3, rep_rng.substream("est-col-quant", 0));
    const CountResult cop_raw =
        count_pair(raw, 4, rep_rng.substream("est-cop-raw", 0));
    const CountResult cop_q =
        count_pair(snapped, 4, rep_rng.substream("est-cop-quant", 0));

    collinear.raw += col_raw.degenerate_count;
    collinear.quantized += col_q.degenerate_count;
    if (col_q.degenerate_count >= col_raw.degenerate_count) {
      ++collinear.amplified_seeds;
    }
    coplanar.raw += cop_raw.degenerate_count;
    coplanar.quantized += cop_q.degenerate_count;
    if (cop_q.degenerate_count >= cop_raw.degenerate_count) {
      ++coplanar.amplified_seeds;
    }
    per_seed.push_back({{"rep", rep},
                        {"collinear_raw", col_raw.degenerate_count},
                        {"collinear_quantized", col_q.degenerate_count},
                        {"coplanar_raw", cop_raw.degenerate_count},
                        {"coplanar_quantized", cop_q.degenerate_count}});
  }

  Json amplification{{"collinear", ratio_with_ci(collinear)},
                     {"coplanar", ratio_with_ci(coplanar)}};
  amplification["collinear"]["postulated"] = 10.0;
  amplification["coplanar"]["postulated"] = 3.0;
  amplification["collinear"]["amplified_seeds"] = collinear.amplified_seeds;
  amplification["coplanar"]["amplified_seeds"] = coplanar.amplified_seeds;

  Json payload{
      {"reps", cfg.reps},
      {"amplification", amplification},
      {"analytic", {{"collinear_random", expected_collinear(cfg.n, cfg.epsilon)},
                    {"coplanar_random", expected_coplanar(cfg.n, cfg.epsilon)}}},
      {"per_seed", per_seed}};

  Json params{{"n", cfg.n},
              {"grid", s},
              {"epsilon", cfg.epsilon},
              {"reps", cfg.reps},
              {"sigma", cfg.sigma},
              {"samples", cfg.samples}};
  emit_report("mc", std::move(params), std::move(payload), global);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Point-cloud degeneracy analysis toolkit"};
  app.set_version_flag("--version", degen::kVersion);
  app.require_subcommand(1);

  GlobalOpts global;
  app.add_option("--seed", global.seed, "Master RNG seed")->capture_default_str();
  app.add_option("--format", global.format, "Output format: Json|csv|text")
      ->capture_default_str();
  app.add_option("--out", global.out, "Output path (default: stdout)");
  app.add_option("--threads", global.threads, "Worker threads for counting")
      ->capture_default_str();

  // gen
  GenConfig gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a synthetic point cloud");
  gen_cmd->fallthrough();
  gen_cmd->add_option("kind", gen.kind, "uniform|plane|sphere|line|scene")
      ->required();
  gen_cmd->add_option("--n", gen.n, "Number of points");
  gen_cmd->add_option("--dim", gen.dim, "Dimension (uniform only)")
      ->capture_default_str();
  gen_cmd->add_option("--normal", gen.normal, "Plane normal nx,ny,nz")
      ->delimiter(',');
  gen_cmd->add_option("--offset", gen.offset, "Plane offset b");
  gen_cmd->add_option("--extent", gen.extent, "Patch bounds umin,umax,vmin,vmax")
      ->delimiter(',');
  gen_cmd->add_option("--center", gen.center, "Sphere centre cx,cy,cz")
      ->delimiter(',');
  gen_cmd->add_option("--radius", gen.radius, "Sphere radius");
  gen_cmd->add_option("--base", gen.base, "Line base bx,by,bz")->delimiter(',');
  gen_cmd->add_option("--dir", gen.dir, "Line direction dx,dy,dz")->delimiter(',');
  gen_cmd->add_option("--t-min", gen.t_min, "Segment parameter start");
  gen_cmd->add_option("--t-max", gen.t_max, "Segment parameter end");
  gen_cmd->add_option("--scene-radius", gen.scene_radius, "Scene cylinder radius R");
  gen_cmd->add_option("--scene-height", gen.scene_height, "Scene cylinder height h");
  gen_cmd->add_option("--n-background", gen.n_background, "Scene background points");
  gen_cmd->add_option("--n-surface", gen.n_surface, "Scene points per surface");
  gen_cmd->add_option("--plane", gen.scene_planes,
                      "Scene plane nx,ny,nz,b (repeatable)")
      ->delimiter(',');
  gen_cmd->add_option("--sphere", gen.scene_sphere, "Scene sphere cx,cy,cz,r")
      ->delimiter(',');
  gen_cmd->add_option("--line", gen.scene_lines,
                      "Scene line bx,by,bz,dx,dy,dz (repeatable)")
      ->delimiter(',');
  gen_cmd->add_option("--quantize", gen.quantize_steps,
                      "Quantization steps dx,dy,dz (or one shared step)")
      ->delimiter(',');
  gen_cmd->add_option("--noise", gen.noise_sigma,
                      "Gaussian noise sigma, applied after quantization");

  // detect
  DetectConfig detect;
  CLI::App* detect_cmd =
      app.add_subcommand("detect", "Count degenerate subsets in a point file");
  detect_cmd->fallthrough();
  detect_cmd->add_option("--input", detect.input, "Input point file")->required();
  detect_cmd->add_option("--mode", detect.mode, "collinear|coplanar|sphere")
      ->required();
  detect_cmd->add_option("--epsilon", detect.epsilon, "Residual threshold");
  detect_cmd->add_option("--delta", detect.delta, "Sphere-shell tolerance");
  detect_cmd->add_flag("--sampled", detect.sampled,
                       "Estimate from random subsets instead of enumerating");
  detect_cmd->add_option("--samples", detect.samples, "Subset samples")
      ->capture_default_str();
  detect_cmd->add_option("--cap", detect.cap, "Override the exhaustive cap");

  // expect
  ExpectConfig expect;
  CLI::App* expect_cmd =
      app.add_subcommand("expect", "Evaluate a closed-form degeneracy model");
  expect_cmd->fallthrough();
  expect_cmd
      ->add_option("--model", expect.model,
                   "random-collinear|random-coplanar|random-general|"
                   "random-single|structured-coplanar|structured-sphere|composite")
      ->required();
  expect_cmd->add_option("--n", expect.n, "Point count N");
  expect_cmd->add_option("--dim", expect.dim, "Dimension d")->capture_default_str();
  expect_cmd->add_option("--k", expect.k, "Subset size k")->capture_default_str();
  expect_cmd->add_option("--epsilon", expect.epsilon, "Residual tolerance");
  expect_cmd->add_option("--c-const", expect.c_const, "Proportionality constant")
      ->capture_default_str();
  expect_cmd->add_option("--plane-area", expect.plane_area, "Plane area A");
  expect_cmd->add_option("--delta", expect.delta, "Shell thickness delta");
  expect_cmd->add_option("--radius", expect.radius, "Cylinder radius R");
  expect_cmd->add_option("--height", expect.height, "Cylinder height h");
  expect_cmd->add_option("--sphere-radius", expect.sphere_radius, "Sphere radius r");
  expect_cmd->add_option("--p", expect.factors, "Composite factor probabilities")
      ->delimiter(',');

  // table
  TableConfig table;
  CLI::App* table_cmd = app.add_subcommand(
      "table", "Random-vs-quantized expected degeneracy counts");
  table_cmd->fallthrough();
  table_cmd->add_option("--n", table.n_values, "N values")->delimiter(',');
  table_cmd->add_option("--eps-collinear", table.eps_collinear,
                        "Collinear tolerance")
      ->capture_default_str();
  table_cmd->add_option("--eps-coplanar", table.eps_coplanar, "Coplanar tolerance")
      ->capture_default_str();
  table_cmd->add_option("--amp-collinear", table.amp_collinear,
                        "Collinear amplification")
      ->capture_default_str();
  table_cmd->add_option("--amp-coplanar", table.amp_coplanar,
                        "Coplanar amplification")
      ->capture_default_str();

  // mc
  McConfig mc;
  CLI::App* mc_cmd = app.add_subcommand(
      "mc", "Paired raw/quantized counting across seeds");
  mc_cmd->fallthrough();
  mc_cmd->add_option("--n", mc.n, "Points per cloud")->capture_default_str();
  mc_cmd->add_option("--grid", mc.grid, "Quantization steps dx,dy,dz")
      ->delimiter(',')
      ->capture_default_str();
  mc_cmd->add_option("--epsilon", mc.epsilon, "Residual tolerance")
      ->capture_default_str();
  mc_cmd->add_option("--reps", mc.reps, "Seed repetitions")->capture_default_str();
  mc_cmd->add_option("--noise", mc.sigma, "Post-quantization noise sigma");
  mc_cmd->add_option("--samples", mc.samples, "Samples when over the cap")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  detect.epsilon_given = detect_cmd->count("--epsilon") > 0;
  detect.delta_given = detect_cmd->count("--delta") > 0;

  try {
    if (*gen_cmd) return run_gen(gen, global);
    if (*detect_cmd) return run_detect(detect, global);
    if (*expect_cmd) return run_expect(expect, global);
    if (*table_cmd) return run_table(table, global);
    if (*mc_cmd) return run_mc(mc, global);
  } catch (const degen::CapExceededError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCap;
  } catch (const degen::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
