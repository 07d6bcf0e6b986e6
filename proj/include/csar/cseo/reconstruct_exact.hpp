#pragma once

#include <string>

#include "csar/core/error.hpp"
#include "csar/core/image.hpp"
#include "csar/core/params.hpp"
#include "csar/sampling/pattern.hpp"
#include "csar/sim/echo.hpp"
#include "csar/solver/ita.hpp"

namespace csar::cseo {

using solver::Reconstruction;
using solver::SolverConfig;

// Largest scene side accepted by the time-domain reference solver.
inline constexpr std::size_t kMaxSceneSide = 64;

inline void check_size_guard(Dims scene) {
  if (scene.rows > kMaxSceneSide || scene.cols > kMaxSceneSide) {
    throw GuardViolation("exact-observation reconstruction is limited to " +
                         std::to_string(kMaxSceneSide) + "x" + std::to_string(kMaxSceneSide) +
                         " scenes, got " + to_string(scene));
  }
}

// Same iteration as solver::reconstruct with G -> H / gain and M -> H^H / gain.
inline Reconstruction reconstruct_exact(const sampling::MeasurementVector& y_s,
                                        const sampling::SamplingPattern& pattern,
                                        const sim::ExactObservation& observation,
                                        const SolverConfig& cfg) {
  check_size_guard(observation.scene_dims());
  solver::validate(cfg);
  if (pattern.raw != observation.raw_dims()) {
    throw DimensionMismatch("pattern grid does not match raw grid");
  }
  if (y_s.size() != pattern.measurement_count()) {
    throw DimensionMismatch("measurement count does not match the sampling pattern");
  }
  const double inv_gain = 1.0 / cfg.amplitude_gain;
  auto forward = [&](const ComplexImage& x) {
    auto m = sampling::subsample(observation.observe(x), pattern);
    for (auto& v : m) v *= inv_gain;
    return m;
  };
  auto adjoint = [&](const sampling::MeasurementVector& r) {
    ComplexImage x = observation.adjoint(sampling::subsample_adjoint(r, pattern));
    x *= inv_gain;
    return x;
  };
  Reconstruction out = solver::iterative_threshold(y_s, observation.scene_dims(), forward, adjoint, cfg);
  out.image *= inv_gain;
  return out;
}

inline Reconstruction reconstruct_exact(const sampling::MeasurementVector& y_s,
                                        const sampling::SamplingPattern& pattern,
                                        const RadarParams& params, const SolverConfig& cfg) {
  check_size_guard({params.n_azimuth, params.n_range});
  return reconstruct_exact(y_s, pattern, sim::ExactObservation(params), cfg);
}

}  // namespace csar::cseo
