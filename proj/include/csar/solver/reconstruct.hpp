#pragma once

#include "csar/apobs/approx_observe.hpp"
#include "csar/core/error.hpp"
#include "csar/core/image.hpp"
#include "csar/rda/filters.hpp"
#include "csar/rda/focus.hpp"
#include "csar/sampling/pattern.hpp"
#include "csar/solver/ita.hpp"

namespace csar::solver {

// Sparse reconstruction with the approximated observation: A = Theta G, A^H = M Theta^T.
inline Reconstruction reconstruct(const MeasurementVector& y_s, const sampling::SamplingPattern& pattern,
                                  const rda::RdaFilters& filters, const SolverConfig& cfg) {
  if (pattern.raw != filters.raw) {
    throw DimensionMismatch("pattern grid " + to_string(pattern.raw) + " does not match raw grid " +
                            to_string(filters.raw));
  }
  if (y_s.size() != pattern.measurement_count()) {
    throw DimensionMismatch("measurement count does not match the sampling pattern");
  }
  auto forward = [&](const ComplexImage& x) {
    return sampling::subsample(apobs::approx_observe(x, filters), pattern);
  };
  auto adjoint = [&](const MeasurementVector& r) {
    return rda::focus(sampling::subsample_adjoint(r, pattern), filters);
  };
  Reconstruction out = iterative_threshold(y_s, filters.scene, forward, adjoint, cfg);
  out.image *= 1.0 / cfg.amplitude_gain;
  return out;
}

}  // namespace csar::solver
