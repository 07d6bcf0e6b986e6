#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "csar/core/error.hpp"
#include "csar/core/geometry.hpp"
#include "csar/core/image.hpp"
#include "csar/core/params.hpp"
#include "csar/core/scene.hpp"

namespace csar::sim {

// Raw-data response of a unit scatterer at scene range gate `gate`, for a scatterer placed
// at scene row i. Entry (a, b) lands on raw sample (i + a, gate + col_first + b).
struct EchoSignature {
  std::ptrdiff_t col_first = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<cplx> samples;  // rows x cols, row-major

  const cplx& at(std::size_t a, std::size_t b) const { return samples[a * cols + b]; }
};

// Time-domain echo by exact slant range:
//   rect((eta - eta_k) / T_a) * p_c(tau - 2 R(eta) / c) * exp(-j 4 pi R(eta) / lambda)
// with R(eta) = sqrt(R0^2 + V^2 (eta - eta_k)^2) and p_c(t) = exp(j pi K_r t^2), |t| <= T_r/2.
inline EchoSignature echo_signature(const DerivedGeometry& g, const RadarParams& p,
                                    std::size_t gate) {
  const std::size_t column = gate + g.col_offset;
  const double r0 = g.slant_range.at(column);
  const double half_aperture = static_cast<double>(g.synthetic_aperture_samples) / 2.0;
  const double half_pulse = p.pulse_duration * p.range_sample_rate / 2.0;
  const double center = static_cast<double>(g.col_offset);

  // Largest range walk inside the aperture, in samples; bounds the column span.
  const double x_edge = p.velocity * half_aperture / p.prf;
  const double max_walk = 2.0 * (x_edge * x_edge / (std::hypot(r0, x_edge) + r0)) /
                          kSpeedOfLight * p.range_sample_rate;

  EchoSignature sig;
  sig.col_first = static_cast<std::ptrdiff_t>(std::floor(center - half_pulse));
  const auto col_last = static_cast<std::ptrdiff_t>(std::ceil(center + half_pulse + max_walk));
  sig.cols = static_cast<std::size_t>(col_last - sig.col_first + 1);

  std::size_t rows = 0;
  while (std::abs(static_cast<double>(rows) - static_cast<double>(g.row_offset)) <= half_aperture) {
    ++rows;
  }
  sig.rows = rows;
  sig.samples.assign(sig.rows * sig.cols, cplx{0.0, 0.0});

  const double four_pi_over_lambda = 4.0 * kPi / g.wavelength;
  const double base_phase = std::fmod(four_pi_over_lambda * r0, 2.0 * kPi);
  for (std::size_t a = 0; a < sig.rows; ++a) {
    const double eta = (static_cast<double>(a) - static_cast<double>(g.row_offset)) / p.prf;
    const double x = p.velocity * eta;
    const double walk = x * x / (std::hypot(r0, x) + r0);  // R - R0, cancellation free
    const double delay_samples = 2.0 * walk / kSpeedOfLight * p.range_sample_rate;
    const cplx carrier = std::polar(1.0, -(base_phase + four_pi_over_lambda * walk));
    for (std::size_t b = 0; b < sig.cols; ++b) {
      const double t_samples =
          static_cast<double>(sig.col_first + static_cast<std::ptrdiff_t>(b)) - center -
          delay_samples;
      if (std::abs(t_samples) > half_pulse + 1e-9) continue;
      const double t = t_samples / p.range_sample_rate;
      sig.samples[a * sig.cols + b] = carrier * std::polar(1.0, kPi * p.range_fm_rate * t * t);
    }
  }
  return sig;
}

namespace detail {

inline void accumulate_echo(ComplexImage& raw, const EchoSignature& sig, std::size_t row,
                            std::size_t gate, cplx amplitude) {
  for (std::size_t a = 0; a < sig.rows; ++a) {
    const std::size_t r = row + a;
    if (r >= raw.rows()) break;
    auto out = raw.row(r);
    for (std::size_t b = 0; b < sig.cols; ++b) {
      const auto c = static_cast<std::ptrdiff_t>(gate) + sig.col_first + static_cast<std::ptrdiff_t>(b);
      if (c < 0 || c >= static_cast<std::ptrdiff_t>(raw.cols())) continue;
      out[static_cast<std::size_t>(c)] += amplitude * sig.at(a, b);
    }
  }
}

inline cplx correlate_echo(const ComplexImage& raw, const EchoSignature& sig, std::size_t row,
                           std::size_t gate) {
  cplx acc{0.0, 0.0};
  for (std::size_t a = 0; a < sig.rows; ++a) {
    const std::size_t r = row + a;
    if (r >= raw.rows()) break;
    const auto in = raw.row(r);
    for (std::size_t b = 0; b < sig.cols; ++b) {
      const auto c = static_cast<std::ptrdiff_t>(gate) + sig.col_first + static_cast<std::ptrdiff_t>(b);
      if (c < 0 || c >= static_cast<std::ptrdiff_t>(raw.cols())) continue;
      acc += std::conj(sig.at(a, b)) * in[static_cast<std::size_t>(c)];
    }
  }
  return acc;
}

}  // namespace detail

// Raw echoes of a point scene. Targets are summed in (azimuth, range) order so the result
// does not depend on the order of the target list.
inline ComplexImage generate_raw(const PointScene& scene, const RadarParams& params) {
  const DerivedGeometry g = derive_geometry(params);
  validate(scene, g.scene);
  auto targets = scene.targets;
  std::sort(targets.begin(), targets.end(), [](const PointTarget& a, const PointTarget& b) {
    return a.azimuth_index != b.azimuth_index ? a.azimuth_index < b.azimuth_index
                                              : a.range_index < b.range_index;
  });
  ComplexImage raw(g.raw);
  for (const auto& t : targets) {
    const EchoSignature sig = echo_signature(g, params, t.range_index);
    detail::accumulate_echo(raw, sig, t.azimuth_index, t.range_index, t.reflectivity);
  }
  return raw;
}

// Matrix-free exact observation H and its adjoint. Signatures for every range gate are
// computed once at construction.
class ExactObservation {
 public:
  explicit ExactObservation(const RadarParams& params)
      : params_(params), geometry_(derive_geometry(params)) {
    signatures_.reserve(geometry_.scene.cols);
    for (std::size_t j = 0; j < geometry_.scene.cols; ++j) {
      signatures_.push_back(echo_signature(geometry_, params_, j));
    }
  }

  const DerivedGeometry& geometry() const { return geometry_; }
  const RadarParams& params() const { return params_; }
  Dims scene_dims() const { return geometry_.scene; }
  Dims raw_dims() const { return geometry_.raw; }
  const EchoSignature& signature(std::size_t gate) const { return signatures_.at(gate); }

  // Every non-zero pixel is treated as a point target.
  ComplexImage observe(const ComplexImage& x) const {
    if (x.dims() != geometry_.scene) {
      throw DimensionMismatch("exact_observe: expected scene " + to_string(geometry_.scene) +
                              ", got " + to_string(x.dims()));
    }
    ComplexImage raw(geometry_.raw);
    for (std::size_t i = 0; i < x.rows(); ++i) {
      for (std::size_t j = 0; j < x.cols(); ++j) {
        const cplx v = x(i, j);
        if (v == cplx{0.0, 0.0}) continue;
        detail::accumulate_echo(raw, signatures_[j], i, j, v);
      }
    }
    return raw;
  }

  ComplexImage adjoint(const ComplexImage& y) const {
    if (y.dims() != geometry_.raw) {
      throw DimensionMismatch("exact_adjoint: expected raw " + to_string(geometry_.raw) +
                              ", got " + to_string(y.dims()));
    }
    ComplexImage x(geometry_.scene);
    for (std::size_t i = 0; i < x.rows(); ++i) {
      for (std::size_t j = 0; j < x.cols(); ++j) {
        x(i, j) = detail::correlate_echo(y, signatures_[j], i, j);
      }
    }
    return x;
  }

 private:
  RadarParams params_;
  DerivedGeometry geometry_;
  std::vector<EchoSignature> signatures_;
};

inline ComplexImage exact_observe(const ComplexImage& x, const RadarParams& params) {
  return ExactObservation(params).observe(x);
}

inline ComplexImage exact_adjoint(const ComplexImage& y, const RadarParams& params) {
  return ExactObservation(params).adjoint(y);
}

// Frobenius norm of the echo of a unit scatterer at the scene center.
inline double unit_echo_norm(const RadarParams& params) {
  const DerivedGeometry g = derive_geometry(params);
  const EchoSignature sig = echo_signature(g, params, g.scene.cols / 2);
  return std::sqrt(norm_sq(sig.samples));
}

}  // namespace csar::sim
