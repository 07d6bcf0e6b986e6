#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "csar/apobs/calibration.hpp"
#include "csar/core/error.hpp"
#include "csar/core/geometry.hpp"
#include "csar/core/image.hpp"
#include "csar/core/params.hpp"
#include "csar/core/scene.hpp"
#include "csar/cseo/reconstruct_exact.hpp"
#include "csar/metrics/support.hpp"
#include "csar/rda/filters.hpp"
#include "csar/rda/focus.hpp"
#include "csar/sampling/pattern.hpp"
#include "csar/sampling/random.hpp"
#include "csar/sim/echo.hpp"
#include "csar/sim/noise.hpp"
#include "csar/solver/reconstruct.hpp"

namespace csar::cli {

enum class Method { Rda, Csrda, Cseo };

inline std::string to_string(Method m) {
  switch (m) {
    case Method::Rda: return "rda";
    case Method::Csrda: return "csrda";
    case Method::Cseo: return "cseo";
  }
  return "?";
}

inline Method parse_method(const std::string& s) {
  if (s == "rda") return Method::Rda;
  if (s == "csrda") return Method::Csrda;
  if (s == "cseo") return Method::Cseo;
  throw InvalidParams("unknown method '" + s + "' (expected rda, csrda or cseo)");
}

// Everything derived once per parameter set: geometry, RDA filters, the amplitude gain
// and, on demand, the exact observation.
class Pipeline {
 public:
  explicit Pipeline(const RadarParams& params)
      : params_(params),
        geometry_(derive_geometry(params)),
        filters_(rda::build_filters(geometry_)),
        gain_(apobs::amplitude_gain(params, filters_)) {}

  const RadarParams& params() const { return params_; }
  const DerivedGeometry& geometry() const { return geometry_; }
  const rda::RdaFilters& filters() const { return filters_; }
  double gain() const { return gain_; }

  const sim::ExactObservation& exact() {
    if (!exact_) {
      cseo::check_size_guard(geometry_.scene);
      exact_ = std::make_unique<sim::ExactObservation>(params_);
    }
    return *exact_;
  }

  // Reconstruction in reflectivity units. RDA focuses the zero-filled measurements and
  // leaves the report empty.
  solver::Reconstruction run(Method method, const sampling::MeasurementVector& y_s,
                             const sampling::SamplingPattern& pattern, solver::SolverConfig cfg) {
    cfg.amplitude_gain = gain_;
    switch (method) {
      case Method::Rda: {
        solver::Reconstruction out{rda::focus(sampling::subsample_adjoint(y_s, pattern), filters_), {}};
        out.image *= 1.0 / gain_;
        return out;
      }
      case Method::Csrda:
        return solver::reconstruct(y_s, pattern, filters_, cfg);
      case Method::Cseo:
        return cseo::reconstruct_exact(y_s, pattern, exact(), cfg);
    }
    throw InvalidParams("unknown method");
  }

 private:
  RadarParams params_;
  DerivedGeometry geometry_;
  rda::RdaFilters filters_;
  double gain_;
  std::unique_ptr<sim::ExactObservation> exact_;
};

// Seeds of one randomized trial, all derived from a single trial seed.
struct TrialSeeds {
  std::uint64_t scene = 0;
  std::uint64_t noise = 0;
  std::uint64_t pattern = 0;
};

inline TrialSeeds trial_seeds(std::uint64_t seed) {
  return {seed, sampling::splitmix64(seed ^ 0x6e6f697365ULL), sampling::splitmix64(seed ^ 0x70617474ULL)};
}

struct TrialSpec {
  double rate = 1.0;
  double ratio_azimuth = 1.0;
  double ratio_range = 5.0;
  double snr_db = 20.0;
  double threshold_db = -30.0;
  std::uint64_t seed = 1;
};

struct TrialOutcome {
  metrics::SupportMetrics support;
  std::size_t iterations = 0;
  double seconds = 0.0;
  bool success() const { return support.perfect(); }
};

// Simulates `scene`, samples it at spec.rate and scores the reconstruction.
inline TrialOutcome run_trial(Pipeline& pipeline, const PointScene& scene, Method method,
                              const TrialSpec& spec, const solver::SolverConfig& cfg) {
  const TrialSeeds seeds = trial_seeds(spec.seed);
  const ComplexImage raw =
      sim::add_noise(sim::generate_raw(scene, pipeline.params()), {spec.snr_db, seeds.noise});
  const auto [sa, sr] = sampling::split_rate(spec.rate, spec.ratio_azimuth, spec.ratio_range);
  const auto pattern = sampling::make_pattern(pipeline.geometry().raw, sa, sr, seeds.pattern);
  const auto y_s = sampling::subsample(raw, pattern);

  const auto start = std::chrono::steady_clock::now();
  const auto rec = pipeline.run(method, y_s, pattern, cfg);
  TrialOutcome out;
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.iterations = rec.report.iterations_run;
  out.support = metrics::support_metrics(scene, rec.image, spec.threshold_db);
  return out;
}

struct SweepPoint {
  double rate = 0.0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  bool majority() const { return 2 * successes > trials; }
};

// Nine-point recovery over `trials` seeds per rate. Trial t uses seed base_seed + t for
// the scene phases, noise and pattern.
inline std::vector<SweepPoint> sweep_rates(Pipeline& pipeline, Method method,
                                           const std::vector<double>& rates, std::size_t trials,
                                           TrialSpec spec, const solver::SolverConfig& cfg,
                                           std::uint64_t base_seed = 1) {
  std::vector<SweepPoint> out;
  for (double rate : rates) {
    SweepPoint pt{rate, trials, 0};
    for (std::size_t t = 0; t < trials; ++t) {
      spec.rate = rate;
      spec.seed = base_seed + t;
      const PointScene scene = nine_point_scene(pipeline.geometry().scene, spec.seed);
      if (run_trial(pipeline, scene, method, spec, cfg).success()) ++pt.successes;
    }
    out.push_back(pt);
  }
  return out;
}

// Smallest swept rate from which every larger swept rate also succeeds in the majority of
// trials; 0 when the largest rate already fails.
inline double breakdown_rate(std::vector<SweepPoint> points) {
  std::sort(points.begin(), points.end(), [](const SweepPoint& a, const SweepPoint& b) { return a.rate > b.rate; });
  double lowest = 0.0;
  for (const auto& p : points) {
    if (!p.majority()) break;
    lowest = p.rate;
  }
  return lowest;
}

// Mean wall time of one solver iteration, excluding the first `skip` iterations (before the
// support is populated the step size needs no extra forward pass).
inline double mean_iteration_seconds(const solver::SolverReport& report, std::size_t skip = 2) {
  if (report.iterations.size() <= skip) throw InvalidParams("too few iterations to time");
  double total = 0.0;
  for (std::size_t i = skip; i < report.iterations.size(); ++i) total += report.iterations[i].elapsed_seconds;
  return total / static_cast<double>(report.iterations.size() - skip);
}

// Runs `iterations` solver steps on a noiseless nine-point scene at full sampling and
// returns the mean per-iteration time.
inline double time_iterations(Pipeline& pipeline, Method method, std::size_t iterations,
                              std::size_t sparsity = 18, std::uint64_t seed = 1) {
  if (method == Method::Rda) throw InvalidParams("rda has no iterations to time");
  const auto& g = pipeline.geometry();
  PointScene scene = g.scene.rows >= 15 && g.scene.cols >= 15 ? nine_point_scene(g.scene, seed)
                                                              : single_point_scene(g.scene);
  const ComplexImage raw = sim::generate_raw(scene, pipeline.params());
  const auto pattern = sampling::full_pattern(g.raw);
  solver::SolverConfig cfg;
  cfg.sparsity = std::min<std::size_t>(sparsity, g.scene.size() - 1);
  cfg.max_iters = iterations;
  cfg.tol = 0.0;
  const auto rec = pipeline.run(method, sampling::subsample(raw, pattern), pattern, cfg);
  return mean_iteration_seconds(rec.report);
}

}  // namespace csar::cli
