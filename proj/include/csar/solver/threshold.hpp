#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "csar/core/error.hpp"
#include "csar/core/image.hpp"

namespace csar::solver {

// Complex soft threshold: x -> (x/|x|)(|x| - sigma) when |x| > sigma, else 0.
// Entries with |x| == sigma shrink to zero either way; strict survival keeps ties out of
// the support.
inline ComplexImage soft_threshold(const ComplexImage& x, double sigma) {
  if (!(sigma >= 0.0)) throw InvalidParams("soft_threshold: sigma must be non-negative");
  ComplexImage out(x.dims());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double mag = std::abs(x[i]);
    if (mag > sigma) out[i] = x[i] * ((mag - sigma) / mag);
  }
  return out;
}

// (k+1)-th largest magnitude of b, divided by mu.
inline double adaptive_lambda(const ComplexImage& b, std::size_t k, double mu) {
  if (k >= b.size()) {
    throw InvalidParams("adaptive_lambda: sparsity " + std::to_string(k) +
                        " must be below the pixel count " + std::to_string(b.size()));
  }
  if (!(mu > 0.0)) throw InvalidParams("adaptive_lambda: mu must be positive");
  std::vector<double> mags(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) mags[i] = std::abs(b[i]);
  std::nth_element(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(k), mags.end(),
                   std::greater<>());
  return mags[k] / mu;
}

inline std::size_t support_size(const ComplexImage& x) {
  return static_cast<std::size_t>(
      std::count_if(x.data().begin(), x.data().end(), [](const cplx& v) { return v != cplx{}; }));
}

// Keeps `delta` on the support of `reference`, zero elsewhere.
inline ComplexImage restrict_to_support(const ComplexImage& delta, const ComplexImage& reference) {
  delta.require_same_dims(reference, "restrict_to_support");
  ComplexImage out(delta.dims());
  for (std::size_t i = 0; i < delta.size(); ++i) {
    if (reference[i] != cplx{}) out[i] = delta[i];
  }
  return out;
}

// Normalized step ||d||^2 / ||A d||^2 for the support-restricted update d. Falls back to 1
// when d is zero (empty support) or A annihilates it.
template <class Forward>
double adaptive_mu(const ComplexImage& delta_supported, Forward&& forward) {
  const double num = norm_sq(delta_supported.data());
  if (!(num > 0.0)) return 1.0;
  const auto projected = forward(delta_supported);
  const double den = norm_sq(std::span<const cplx>(projected));
  if (!(den > 0.0) || !std::isfinite(den)) return 1.0;
  return num / den;
}

}  // namespace csar::solver
