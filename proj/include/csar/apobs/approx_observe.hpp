#pragma once

#include "csar/core/error.hpp"
#include "csar/core/fft.hpp"
#include "csar/core/image.hpp"
#include "csar/rda/filters.hpp"
#include "csar/rda/focus.hpp"
#include "csar/rda/rcmc.hpp"

namespace csar::apobs {

using rda::RdaFilters;

// Operator D = C^T: each output sample of C scatters its input back onto the taps it read,
// with the same truncated sinc weights.
inline ComplexImage inverse_rcmc(const ComplexImage& u, const RdaFilters& f) {
  if (u.dims() != f.raw) {
    throw DimensionMismatch("inverse_rcmc: expected " + to_string(f.raw) + ", got " +
                            to_string(u.dims()));
  }
  ComplexImage v(u.dims());
  for (std::size_t d = 0; d < u.rows(); ++d) {
    const auto in = u.row(d);
    auto out = v.row(d);
    for (std::size_t c = 0; c < u.cols(); ++c) {
      const double pos = static_cast<double>(c) + f.migration_at(d, c);
      const cplx value = in[c];
      rda::for_each_tap(pos, f.rcmc_halfwidth, u.cols(),
                        [&](std::size_t k, double w) { out[k] += w * value; });
    }
  }
  return v;
}

// Places a scene into the raw grid at the samples focus() keeps; margins are zero.
inline ComplexImage embed_in_raw(const ComplexImage& x, const RdaFilters& f) {
  ComplexImage raw(f.raw);
  for (std::size_t i = 0; i < f.scene.rows; ++i) {
    const auto src = x.row(i);
    auto dst = raw.row(i + f.row_offset);
    for (std::size_t j = 0; j < f.scene.cols; ++j) dst[j + f.col_offset] = src[j];
  }
  return raw;
}

// Operator G: the sub-operation-wise inverse of focus() in reverse order, so that G = M^H.
inline ComplexImage approx_observe(const ComplexImage& x, const RdaFilters& f) {
  if (x.dims() != f.scene) {
    throw DimensionMismatch("approx_observe: expected scene " + to_string(f.scene) + ", got " +
                            to_string(x.dims()));
  }
  ComplexImage u = embed_in_raw(x, f);
  fft::along_cols(u, fft::Direction::Forward);
  rda::multiply_azimuth_filter(u, f, true);
  ComplexImage v = inverse_rcmc(u, f);
  fft::along_rows(v, fft::Direction::Forward);
  fft::along_cols(v, fft::Direction::Inverse);
  for (std::size_t r = 0; r < v.rows(); ++r) {
    auto row = v.row(r);
    for (std::size_t c = 0; c < v.cols(); ++c) row[c] *= std::conj(f.range_filter[c]);
  }
  fft::along_rows(v, fft::Direction::Inverse);
  return v;
}

}  // namespace csar::apobs
