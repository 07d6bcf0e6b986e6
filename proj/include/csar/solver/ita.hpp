#pragma once

#include <chrono>
#include <cstddef>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "csar/core/error.hpp"
#include "csar/core/image.hpp"
#include "csar/sampling/pattern.hpp"
#include "csar/solver/threshold.hpp"

namespace csar::solver {

using sampling::MeasurementVector;

struct SolverConfig {
  std::size_t sparsity = 18;     // k
  std::size_t max_iters = 100;   // I_max
  double tol = 1e-6;             // stop when ||X+ - X|| <= tol ||X||
  // Echo amplitude of a unit scatterer relative to the normalized observation model.
  // Reconstructions are divided by it so they come out in reflectivity units.
  double amplitude_gain = 1.0;
};

inline void validate(const SolverConfig& cfg) {
  if (cfg.sparsity < 1) throw InvalidParams("sparsity must be at least 1");
  if (cfg.max_iters < 1) throw InvalidParams("max_iters must be at least 1");
  if (!(cfg.tol >= 0.0)) throw InvalidParams("tol must be non-negative");
  if (!(cfg.amplitude_gain > 0.0) || !std::isfinite(cfg.amplitude_gain)) {
    throw InvalidParams("amplitude_gain must be finite and positive");
  }
}

struct IterationRecord {
  double residual_norm = 0.0;
  double mu = 1.0;
  double lambda = 0.0;
  std::size_t support_size = 0;
  double elapsed_seconds = 0.0;
};

struct SolverReport {
  std::vector<IterationRecord> iterations;
  std::size_t iterations_run = 0;
  bool converged = false;
};

inline void write_report_csv(std::ostream& out, const SolverReport& report) {
  std::ostringstream s;
  s.precision(10);
  s << "iteration,residual_norm,mu,lambda,support_size,elapsed_seconds\n";
  for (std::size_t i = 0; i < report.iterations.size(); ++i) {
    const auto& it = report.iterations[i];
    s << i << ',' << it.residual_norm << ',' << it.mu << ',' << it.lambda << ','
      << it.support_size << ',' << it.elapsed_seconds << '\n';
  }
  out << s.str();
}

inline void save_report_csv(const SolverReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open '" + path + "' for writing");
  write_report_csv(out, report);
}

struct Reconstruction {
  ComplexImage image;
  SolverReport report;
};

// Iterative soft thresholding with adaptive step and sparsity-driven threshold:
//   R     = y_s - A X
//   dX    = A^H R
//   mu    = ||dX_k||^2 / ||A dX_k||^2     (dX_k: dX on the support of the previous iterate)
//   b     = X + mu dX
//   X+    = soft(b, |b|_(k+1))
// `forward` maps a scene image to a measurement vector, `adjoint` maps back.
template <class Forward, class Adjoint>
Reconstruction iterative_threshold(const MeasurementVector& y_s, Dims scene, Forward&& forward,
                                   Adjoint&& adjoint, const SolverConfig& cfg) {
  validate(cfg);
  if (cfg.sparsity >= scene.size()) {
    throw InvalidParams("sparsity must be below the scene pixel count");
  }
  using Clock = std::chrono::steady_clock;

  Reconstruction out{ComplexImage(scene), {}};
  ComplexImage& x = out.image;
  ComplexImage previous(scene);  // X^(i-1); empty support at the start
  for (std::size_t i = 0; i < cfg.max_iters; ++i) {
    const auto start = Clock::now();
    MeasurementVector residual = forward(x);
    if (residual.size() != y_s.size()) throw DimensionMismatch("forward operator size mismatch");
    for (std::size_t m = 0; m < residual.size(); ++m) residual[m] = y_s[m] - residual[m];
    const ComplexImage delta = adjoint(residual);

    const double mu = adaptive_mu(restrict_to_support(delta, previous), forward);
    ComplexImage b = x;
    for (std::size_t p = 0; p < b.size(); ++p) b[p] += mu * delta[p];
    if (!all_finite(b.data())) {
      throw NumericalError("non-finite values at iteration " + std::to_string(i));
    }
    // Threshold at |b|_(k+1) itself; lambda * mu can round below it and admit a k+1-th entry.
    const double sigma = adaptive_lambda(b, cfg.sparsity, 1.0);
    const double lambda = sigma / mu;
    ComplexImage next = soft_threshold(b, sigma);

    const double change = frobenius_norm(next - x);
    const double scale = frobenius_norm(x);
    previous = std::move(x);
    x = std::move(next);

    IterationRecord rec;
    rec.residual_norm = std::sqrt(norm_sq(std::span<const cplx>(residual)));
    rec.mu = mu;
    rec.lambda = lambda;
    rec.support_size = support_size(x);
    rec.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    out.report.iterations.push_back(rec);
    out.report.iterations_run = i + 1;
    if (change <= cfg.tol * scale) {
      out.report.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace csar::solver
