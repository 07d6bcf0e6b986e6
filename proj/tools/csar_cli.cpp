#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif

#include "csar/csar.hpp"

namespace {

using namespace csar;

constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

std::pair<double, double> parse_ratio(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw InvalidParams("ratio must look like a:b, got '" + s + "'");
  try {
    return {std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw InvalidParams("ratio must look like a:b, got '" + s + "'");
  }
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open '" + path + "' for writing");
  out.precision(10);
  return out;
}

struct SimulateArgs {
  std::string config, scene, out;
  double noise_db = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 1;
};

void cmd_simulate(const SimulateArgs& a) {
  const RadarParams p = load_params(a.config);
  const PointScene scene = load_scene(a.scene);
  const ComplexImage raw = sim::add_noise(sim::generate_raw(scene, p), {a.noise_db, a.seed});
  write_image(raw, a.out);
  std::cout << "simulated " << scene.size() << " targets -> " << to_string(raw.dims()) << " raw samples\n";
}

struct MakeSceneArgs {
  std::string config, preset = "nine-point", out;
  std::size_t count = 3, spacing = 4;
  std::uint64_t seed = 1;
};

void cmd_make_scene(const MakeSceneArgs& a) {
  const RadarParams p = load_params(a.config);
  const Dims grid{p.n_azimuth, p.n_range};
  PointScene scene;
  if (a.preset == "nine-point") {
    scene = nine_point_scene(grid, a.seed);
  } else if (a.preset == "single") {
    scene = single_point_scene(grid);
  } else if (a.preset == "random") {
    scene = random_scene(grid, a.count, a.spacing, a.seed);
  } else {
    throw InvalidParams("unknown scene preset '" + a.preset + "' (expected nine-point, single or random)");
  }
  save_scene(scene, a.out);
  std::cout << "wrote " << scene.size() << " targets on a " << to_string(grid) << " grid\n";
}

struct ReconstructArgs {
  std::string raw, config, method = "csrda", ratio = "1:5", out, report, pattern_out;
  double rate = 1.0, tol = 1e-6;
  std::uint64_t seed = 1;
  std::size_t sparsity = 18, max_iters = 100;
};

void cmd_reconstruct(const ReconstructArgs& a) {
  const RadarParams p = load_params(a.config);
  cli::Pipeline pipe(p);
  const ComplexImage raw = read_image(a.raw);
  if (raw.dims() != pipe.geometry().raw) {
    throw DimensionMismatch("raw file is " + to_string(raw.dims()) + ", config expects " +
                            to_string(pipe.geometry().raw));
  }
  const cli::Method method = cli::parse_method(a.method);
  const auto [ra, rb] = parse_ratio(a.ratio);
  const auto [sa, sr] = sampling::split_rate(a.rate, ra, rb);
  const auto pattern = sampling::make_pattern(raw.dims(), sa, sr, a.seed);
  solver::SolverConfig cfg;
  cfg.sparsity = a.sparsity;
  cfg.max_iters = a.max_iters;
  cfg.tol = a.tol;
  const auto start = std::chrono::steady_clock::now();
  const auto rec = pipe.run(method, sampling::subsample(raw, pattern), pattern, cfg);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_image(rec.image, a.out);
  if (!a.report.empty()) solver::save_report_csv(rec.report, a.report);
  if (!a.pattern_out.empty()) sampling::save_pattern(pattern, a.pattern_out);
  std::printf("%s: rate %.6g (s_a %.4g, s_r %.4g), %zu measurements, %zu iterations%s, %.3f s\n",
              a.method.c_str(), pattern.rate(), sa, sr, pattern.measurement_count(), rec.report.iterations_run,
              rec.report.converged ? " (converged)" : "", seconds);
}

struct SweepArgs {
  std::string raw, config, scene, method = "csrda", ratio = "1:5", out;
  std::vector<double> rates;
  std::size_t trials = 5, sparsity = 18, max_iters = 100;
  double threshold_db = -30.0;
  std::uint64_t seed = 1;
};

void cmd_sweep(const SweepArgs& a) {
  const RadarParams p = load_params(a.config);
  cli::Pipeline pipe(p);
  const ComplexImage raw = read_image(a.raw);
  if (raw.dims() != pipe.geometry().raw) {
    throw DimensionMismatch("raw file is " + to_string(raw.dims()) + ", config expects " +
                            to_string(pipe.geometry().raw));
  }
  const PointScene truth = load_scene(a.scene);
  validate(truth, pipe.geometry().scene);
  std::vector<cli::Method> methods;
  if (a.method == "both") {
    methods.push_back(cli::Method::Csrda);
    methods.push_back(cli::Method::Cseo);
  } else {
    methods.push_back(cli::parse_method(a.method));
  }
  const auto [ra, rb] = parse_ratio(a.ratio);
  solver::SolverConfig cfg;
  cfg.sparsity = a.sparsity;
  cfg.max_iters = a.max_iters;

  auto out = open_out(a.out);
  out << "method,rate,trial,pattern_seed,measurements,detections,misses,false_alarms,iterations,seconds,success\n";
  for (cli::Method m : methods) {
    if (m == cli::Method::Cseo) {
      try {
        cseo::check_size_guard(pipe.geometry().scene);
      } catch (const GuardViolation& e) {
        std::cerr << "skipping cseo: " << e.what() << '\n';
        continue;
      }
    }
    for (double rate : a.rates) {
      const auto [sa, sr] = sampling::split_rate(rate, ra, rb);
      std::size_t successes = 0;
      for (std::size_t t = 0; t < a.trials; ++t) {
        const std::uint64_t pseed = sampling::splitmix64(a.seed + t);
        const auto pattern = sampling::make_pattern(raw.dims(), sa, sr, pseed);
        const auto start = std::chrono::steady_clock::now();
        const auto rec = pipe.run(m, sampling::subsample(raw, pattern), pattern, cfg);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const auto s = metrics::support_metrics(truth, rec.image, a.threshold_db);
        successes += s.perfect();
        out << cli::to_string(m) << ',' << rate << ',' << t << ',' << pseed << ',' << pattern.measurement_count()
            << ',' << s.detections << ',' << s.misses << ',' << s.false_alarms << ','
            << rec.report.iterations_run << ',' << seconds << ',' << (s.perfect() ? 1 : 0) << '\n';
      }
      std::printf("%s rate %.6g: %zu/%zu perfect\n", cli::to_string(m).c_str(), rate, successes, a.trials);
    }
  }
}

struct BenchArgs {
  std::string config, out;
  std::vector<std::size_t> sizes, tbp;
  std::size_t iterations = 10, bench_scene = 32;
};

void cmd_bench(const BenchArgs& a) {
  const RadarParams base = load_params(a.config);
  auto out = open_out(a.out);
  out << "method,scene_rows,scene_cols,u_eta,u_tau,seconds_per_iteration\n";
  auto row = [&](cli::Method m, const RadarParams& p, double secs) {
    out << cli::to_string(m) << ',' << p.n_azimuth << ',' << p.n_range << ',' << p.synthetic_aperture_samples
        << ',' << p.pulse_samples() << ',' << secs << '\n';
    std::printf("%s %zux%zu u_eta %zu: %.4g s/iteration\n", cli::to_string(m).c_str(), p.n_azimuth, p.n_range,
                p.synthetic_aperture_samples, secs);
  };
  for (std::size_t n : a.sizes) {
    RadarParams p = base;
    p.n_azimuth = p.n_range = n;
    cli::Pipeline pipe(p);
    row(cli::Method::Csrda, p, cli::time_iterations(pipe, cli::Method::Csrda, a.iterations));
  }
  for (std::size_t u : a.tbp) {
    RadarParams p = base;
    p.n_azimuth = p.n_range = a.bench_scene;
    p.synthetic_aperture_samples = u;
    cli::Pipeline pipe(p);
    row(cli::Method::Csrda, p, cli::time_iterations(pipe, cli::Method::Csrda, a.iterations));
    try {
      row(cli::Method::Cseo, p, cli::time_iterations(pipe, cli::Method::Cseo, a.iterations));
    } catch (const GuardViolation& e) {
      std::cerr << "skipping cseo: " << e.what() << '\n';
    }
  }
}

struct ExportArgs {
  std::string image, out;
  double db_floor = -40.0;
};

void cmd_export(const ExportArgs& a) {
  const ComplexImage img = read_image(a.image);
  cli::save_pgm(img, a.out, a.db_floor);
  std::cout << "exported " << to_string(img.dims()) << " image\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compressed-sensing SAR imaging with the RDA approximated observation"};
  app.require_subcommand(1);

  SimulateArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "Generate raw echoes of a point scene");
  sim->add_option("--config", sim_args.config, "Radar parameter file")->required();
  sim->add_option("--scene", sim_args.scene, "Scene CSV: azimuth_index,range_index,re,im")->required();
  sim->add_option("--out", sim_args.out, "Output raw CSAR file")->required();
  sim->add_option("--noise-db", sim_args.noise_db, "Add white Gaussian noise at this SNR (dB)");
  sim->add_option("--seed", sim_args.seed, "Noise seed");

  MakeSceneArgs scene_args;
  auto* mk = app.add_subcommand("make-scene", "Write a preset point scene as CSV");
  mk->add_option("--config", scene_args.config, "Radar parameter file (grid size)")->required();
  mk->add_option("--preset", scene_args.preset, "nine-point, single or random");
  mk->add_option("--count", scene_args.count, "Targets for the random preset");
  mk->add_option("--spacing", scene_args.spacing, "Minimum Chebyshev spacing for the random preset");
  mk->add_option("--seed", scene_args.seed, "Phase and position seed");
  mk->add_option("--out", scene_args.out, "Output scene CSV")->required();

  ReconstructArgs rec_args;
  auto* rec = app.add_subcommand("reconstruct", "Sample raw data and form an image");
  rec->add_option("--raw", rec_args.raw, "Raw CSAR file")->required();
  rec->add_option("--config", rec_args.config, "Radar parameter file")->required();
  rec->add_option("--method", rec_args.method, "rda, csrda or cseo");
  rec->add_option("--rate", rec_args.rate, "Overall sampling rate in (0, 1]");
  rec->add_option("--ratio", rec_args.ratio, "Azimuth:range rate ratio");
  rec->add_option("--seed", rec_args.seed, "Sampling pattern seed");
  rec->add_option("--sparsity", rec_args.sparsity, "Sparsity k");
  rec->add_option("--max-iters", rec_args.max_iters, "Iteration cap");
  rec->add_option("--tol", rec_args.tol, "Relative change stopping tolerance");
  rec->add_option("--out", rec_args.out, "Output image CSAR file")->required();
  rec->add_option("--report", rec_args.report,
                  "Per-iteration CSV: iteration,residual_norm,mu,lambda,support_size,elapsed_seconds");
  rec->add_option("--pattern-out", rec_args.pattern_out, "Write the sampling pattern");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Support recovery over sampling rates and trials");
  sweep->add_option("--raw", sweep_args.raw, "Raw CSAR file")->required();
  sweep->add_option("--config", sweep_args.config, "Radar parameter file")->required();
  sweep->add_option("--scene", sweep_args.scene, "Ground-truth scene CSV")->required();
  sweep->add_option("--rates", sweep_args.rates, "Comma-separated sampling rates")->required()->delimiter(',');
  sweep->add_option("--trials", sweep_args.trials, "Sampling patterns per rate");
  sweep->add_option("--method", sweep_args.method, "csrda, cseo or both");
  sweep->add_option("--ratio", sweep_args.ratio, "Azimuth:range rate ratio");
  sweep->add_option("--sparsity", sweep_args.sparsity, "Sparsity k");
  sweep->add_option("--max-iters", sweep_args.max_iters, "Iteration cap");
  sweep->add_option("--threshold-db", sweep_args.threshold_db, "Detection threshold relative to the peak");
  sweep->add_option("--seed", sweep_args.seed, "Base seed; trial t uses splitmix64(seed + t)");
  sweep->add_option("--out", sweep_args.out,
                    "CSV: method,rate,trial,pattern_seed,measurements,detections,misses,false_alarms,"
                    "iterations,seconds,success")
      ->required();

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Time solver iterations");
  bench->add_option("--config", bench_args.config, "Radar parameter file")->required();
  bench->add_option("--sizes", bench_args.sizes, "Scene sides for csrda")->delimiter(',');
  bench->add_option("--tbp", bench_args.tbp, "Aperture lengths u_eta for csrda and cseo")->delimiter(',');
  bench->add_option("--bench-scene", bench_args.bench_scene, "Scene side for the --tbp runs");
  bench->add_option("--iterations", bench_args.iterations, "Iterations per timing");
  bench->add_option("--out", bench_args.out,
                    "CSV: method,scene_rows,scene_cols,u_eta,u_tau,seconds_per_iteration")
      ->required();

  ExportArgs export_args;
  auto* exp = app.add_subcommand("export", "Write an image magnitude as 16-bit PGM");
  exp->add_option("--image", export_args.image, "Image CSAR file")->required();
  exp->add_option("--out", export_args.out, "Output PGM")->required();
  exp->add_option("--db-floor", export_args.db_floor, "Black level relative to the peak (dB)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*sim) cmd_simulate(sim_args);
    if (*mk) cmd_make_scene(scene_args);
    if (*rec) cmd_reconstruct(rec_args);
    if (*sweep) cmd_sweep(sweep_args);
    if (*bench) cmd_bench(bench_args);
    if (*exp) cmd_export(export_args);
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return 0;
}
