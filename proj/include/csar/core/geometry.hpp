#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "csar/core/error.hpp"
#include "csar/core/image.hpp"
#include "csar/core/params.hpp"

namespace csar {

// Quantities derived from RadarParams for low-squint RDA processing.
//
// The raw grid is the scene grid plus aperture/pulse margins:
//   raw_rows = n_azimuth + u_eta,  raw_cols = n_range + u_tau.
// Scene pixel (i, j) lines up with raw sample (i + row_offset, j + col_offset), where the
// offsets are u_eta/2 and u_tau/2. Raw column c belongs to range gate c - col_offset, and
// gate j sits at slant range R_c + (j - n_range/2) * c / (2 F_r).
struct DerivedGeometry {
  double wavelength = 0.0;
  double velocity = 0.0;
  double prf = 0.0;
  double range_fm_rate = 0.0;
  double range_sample_rate = 0.0;

  Dims scene{};
  Dims raw{};
  std::size_t synthetic_aperture_samples = 0;  // u_eta
  std::size_t pulse_samples = 0;               // u_tau
  std::size_t row_offset = 0;
  std::size_t col_offset = 0;
  std::size_t rcmc_halfwidth = 0;

  std::vector<double> slant_range;      // m, per raw column
  std::vector<double> azimuth_fm_rate;  // Hz/s, per raw column
  std::vector<double> doppler_axis;     // Hz, raw_rows bins in FFT order
  std::vector<double> range_freq_axis;  // Hz, raw_cols bins in FFT order
  std::vector<double> migration;        // s, raw_rows x raw_cols, (Doppler bin, raw column)

  double migration_at(std::size_t doppler_bin, std::size_t column) const {
    return migration[doppler_bin * raw.cols + column];
  }
};

// FFT-ordered frequency axis of n bins at sample rate fs: [0, fs/n, ..., -fs/2, ..., -fs/n].
inline std::vector<double> fft_frequency_axis(std::size_t n, double fs) {
  std::vector<double> f(n);
  const auto sn = static_cast<std::ptrdiff_t>(n);
  const auto half = sn / 2;
  for (std::size_t k = 0; k < n; ++k) {
    auto kk = static_cast<std::ptrdiff_t>(k);
    if (sn > 1 && kk >= sn - half) kk -= sn;
    f[k] = static_cast<double>(kk) * fs / static_cast<double>(n);
  }
  return f;
}

inline double azimuth_fm_rate(double velocity, double wavelength, double zero_doppler_range) {
  return 2.0 * velocity * velocity / (wavelength * zero_doppler_range);
}

// Range cell migration (seconds of two-way range time) at Doppler f.
inline double range_migration(double doppler, double zero_doppler_range, double wavelength,
                              double velocity) {
  const double delta_range = zero_doppler_range * wavelength * wavelength * doppler * doppler /
                             (8.0 * velocity * velocity);
  return delta_range / (kSpeedOfLight / 2.0);
}

inline DerivedGeometry derive_geometry(const RadarParams& p) {
  validate(p);
  if (p.squint != 0.0) {
    throw InvalidParams("non-zero squint is not supported by the low-squint focusing model");
  }

  DerivedGeometry g;
  g.wavelength = kSpeedOfLight / p.carrier_freq;
  g.velocity = p.velocity;
  g.prf = p.prf;
  g.range_fm_rate = p.range_fm_rate;
  g.range_sample_rate = p.range_sample_rate;
  g.synthetic_aperture_samples = p.synthetic_aperture_samples;
  g.pulse_samples = p.pulse_samples();
  g.rcmc_halfwidth = p.rcmc_halfwidth;
  g.scene = {p.n_azimuth, p.n_range};
  g.raw = {p.n_azimuth + g.synthetic_aperture_samples, p.n_range + g.pulse_samples};
  g.row_offset = g.synthetic_aperture_samples / 2;
  g.col_offset = g.pulse_samples / 2;

  const double range_spacing = kSpeedOfLight / (2.0 * p.range_sample_rate);
  const double center_gate = static_cast<double>(p.n_range) / 2.0;
  g.slant_range.resize(g.raw.cols);
  g.azimuth_fm_rate.resize(g.raw.cols);
  for (std::size_t c = 0; c < g.raw.cols; ++c) {
    const double gate = static_cast<double>(c) - static_cast<double>(g.col_offset);
    g.slant_range[c] = p.slant_range_center + (gate - center_gate) * range_spacing;
    if (!(g.slant_range[c] > 0.0)) throw InvalidParams("range grid reaches non-positive range");
    g.azimuth_fm_rate[c] = azimuth_fm_rate(p.velocity, g.wavelength, g.slant_range[c]);
  }

  g.doppler_axis = fft_frequency_axis(g.raw.rows, p.prf);
  g.range_freq_axis = fft_frequency_axis(g.raw.cols, p.range_sample_rate);

  g.migration.resize(g.raw.size());
  for (std::size_t d = 0; d < g.raw.rows; ++d) {
    for (std::size_t c = 0; c < g.raw.cols; ++c) {
      g.migration[d * g.raw.cols + c] =
          range_migration(g.doppler_axis[d], g.slant_range[c], g.wavelength, p.velocity);
    }
  }
  return g;
}

}  // namespace csar
