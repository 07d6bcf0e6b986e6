#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "csar/core/error.hpp"
#include "csar/core/image.hpp"
#include "csar/core/params.hpp"

namespace csar::sim {

struct NoiseSpec {
  // +infinity disables noise.
  double snr_db = std::numeric_limits<double>::infinity();
  std::uint64_t seed = 0;
};

// Uniform double in (0, 1] from the top 53 bits.
inline double unit_open_closed(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

// Adds circular white Gaussian noise whose per-sample variance is set from the
// mean sample power of y and the requested SNR. Box-Muller keeps the stream portable.
inline ComplexImage add_noise(const ComplexImage& y, const NoiseSpec& spec) {
  if (std::isinf(spec.snr_db) && spec.snr_db > 0) return y;
  if (!std::isfinite(spec.snr_db)) throw InvalidParams("snr_db must be finite or +inf");
  const double signal_power = norm_sq(y.data()) / static_cast<double>(y.size());
  if (!(signal_power > 0.0)) throw InvalidParams("cannot reference SNR to an all-zero signal");

  const double variance = signal_power / std::pow(10.0, spec.snr_db / 10.0);
  const double sigma = std::sqrt(variance / 2.0);  // per real component
  std::mt19937_64 rng(spec.seed);
  ComplexImage out = y;
  for (auto& v : out.data()) {
    const double u1 = unit_open_closed(rng);
    const double u2 = unit_open_closed(rng);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    v += cplx{sigma * radius * std::cos(2.0 * kPi * u2), sigma * radius * std::sin(2.0 * kPi * u2)};
  }
  return out;
}

}  // namespace csar::sim
