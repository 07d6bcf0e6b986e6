#pragma once

#include "csar/core/error.hpp"
#include "csar/core/fft.hpp"
#include "csar/core/image.hpp"
#include "csar/rda/filters.hpp"
#include "csar/rda/rcmc.hpp"

namespace csar::rda {

inline void multiply_range_filter(ComplexImage& img, const RdaFilters& f) {
  for (std::size_t r = 0; r < img.rows(); ++r) {
    auto row = img.row(r);
    for (std::size_t c = 0; c < img.cols(); ++c) row[c] *= f.range_filter[c];
  }
}

inline void multiply_azimuth_filter(ComplexImage& img, const RdaFilters& f, bool conjugate) {
  for (std::size_t d = 0; d < img.rows(); ++d) {
    auto row = img.row(d);
    for (std::size_t c = 0; c < img.cols(); ++c) {
      row[c] *= conjugate ? std::conj(f.azimuth_at(d, c)) : f.azimuth_at(d, c);
    }
  }
}

// Range compression alone: each row is filtered independently.
inline ComplexImage range_compress(ComplexImage y, const RdaFilters& f) {
  if (y.dims() != f.raw) {
    throw DimensionMismatch("range_compress: expected " + to_string(f.raw) + ", got " +
                            to_string(y.dims()));
  }
  fft::along_rows(y, fft::Direction::Forward);
  multiply_range_filter(y, f);
  fft::along_rows(y, fft::Direction::Inverse);
  return y;
}

inline ComplexImage crop_to_scene(const ComplexImage& raw, const RdaFilters& f) {
  ComplexImage out(f.scene);
  for (std::size_t i = 0; i < f.scene.rows; ++i) {
    const auto src = raw.row(i + f.row_offset);
    auto dst = out.row(i);
    for (std::size_t j = 0; j < f.scene.cols; ++j) dst[j] = src[j + f.col_offset];
  }
  return out;
}

// Operator M: range compression, RCMC and azimuth compression with unitary FFTs,
//   X~ = F_eta^H { P_eta o C< F_eta [ P_tau o (Y F_tau) ] F_tau^H > },
// followed by removal of the aperture/pulse margins.
inline ComplexImage focus(ComplexImage y, const RdaFilters& f) {
  if (y.dims() != f.raw) {
    throw DimensionMismatch("focus: expected raw " + to_string(f.raw) + ", got " +
                            to_string(y.dims()));
  }
  fft::along_rows(y, fft::Direction::Forward);
  multiply_range_filter(y, f);
  fft::along_cols(y, fft::Direction::Forward);
  fft::along_rows(y, fft::Direction::Inverse);
  ComplexImage u = rcmc(y, f);
  multiply_azimuth_filter(u, f, false);
  fft::along_cols(u, fft::Direction::Inverse);
  return crop_to_scene(u, f);
}

}  // namespace csar::rda
