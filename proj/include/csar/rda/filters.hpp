#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "csar/core/geometry.hpp"
#include "csar/core/image.hpp"

namespace csar::rda {

// Frequency-domain matched filters and the RCMC shift table for one raw grid.
struct RdaFilters {
  Dims raw{};
  Dims scene{};
  std::size_t row_offset = 0;
  std::size_t col_offset = 0;
  std::size_t rcmc_halfwidth = 4;

  std::vector<cplx> range_filter;        // raw.cols, per range-frequency bin
  std::vector<cplx> azimuth_filter;      // raw.rows x raw.cols, (Doppler bin, range column)
  std::vector<double> migration_samples; // raw.rows x raw.cols, shift in range samples

  const cplx& azimuth_at(std::size_t d, std::size_t c) const { return azimuth_filter[d * raw.cols + c]; }
  double migration_at(std::size_t d, std::size_t c) const { return migration_samples[d * raw.cols + c]; }
};

// Range filter compresses p_c(t) = exp(+j pi K_r t^2), whose spectrum under the
// exp(-j 2 pi f t) transform is exp(-j pi f^2 / K_r).
// Azimuth filter compresses exp(-j pi K_a eta^2), spectrum exp(+j pi f^2 / K_a).
inline RdaFilters build_filters(const DerivedGeometry& g) {
  RdaFilters f;
  f.raw = g.raw;
  f.scene = g.scene;
  f.row_offset = g.row_offset;
  f.col_offset = g.col_offset;
  f.rcmc_halfwidth = g.rcmc_halfwidth;

  f.range_filter.resize(g.raw.cols);
  for (std::size_t k = 0; k < g.raw.cols; ++k) {
    const double fr = g.range_freq_axis[k];
    f.range_filter[k] = std::polar(1.0, kPi * fr * fr / g.range_fm_rate);
  }

  f.azimuth_filter.resize(g.raw.size());
  f.migration_samples.resize(g.raw.size());
  for (std::size_t d = 0; d < g.raw.rows; ++d) {
    const double fa = g.doppler_axis[d];
    for (std::size_t c = 0; c < g.raw.cols; ++c) {
      f.azimuth_filter[d * g.raw.cols + c] = std::polar(1.0, -kPi * fa * fa / g.azimuth_fm_rate[c]);
      f.migration_samples[d * g.raw.cols + c] = g.migration_at(d, c) * g.range_sample_rate;
    }
  }
  return f;
}

}  // namespace csar::rda
