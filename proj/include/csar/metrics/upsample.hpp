#pragma once

#include <cstddef>
#include <string>

#include "csar/core/error.hpp"
#include "csar/core/fft.hpp"
#include "csar/core/image.hpp"

namespace csar::metrics {

struct Pixel {
  std::size_t row = 0;
  std::size_t col = 0;
  friend bool operator==(const Pixel&, const Pixel&) = default;
};

inline Pixel peak_pixel(const ComplexImage& img) {
  if (img.empty()) throw InvalidParams("peak of an empty image");
  std::size_t best = 0;
  double best_mag = -1.0;
  for (std::size_t i = 0; i < img.size(); ++i) {
    const double m = std::abs(img[i]);
    if (m > best_mag) {
      best_mag = m;
      best = i;
    }
  }
  return {best / img.cols(), best % img.cols()};
}

inline ComplexImage extract_chip(const ComplexImage& img, Pixel center, std::size_t chip_size) {
  const std::size_t half = chip_size / 2;
  if (chip_size == 0 || center.row < half || center.col < half ||
      center.row - half + chip_size > img.rows() || center.col - half + chip_size > img.cols()) {
    throw InvalidParams("chip of size " + std::to_string(chip_size) + " around (" +
                        std::to_string(center.row) + ", " + std::to_string(center.col) +
                        ") leaves the " + to_string(img.dims()) + " image");
  }
  ComplexImage chip(chip_size, chip_size);
  for (std::size_t r = 0; r < chip_size; ++r) {
    for (std::size_t c = 0; c < chip_size; ++c) {
      chip(r, c) = img(center.row - half + r, center.col - half + c);
    }
  }
  return chip;
}

// Band-limited interpolation of a square chip by zero-padding its 2-D spectrum.
// Bins [0, N/2) stay at the start, bins [N/2, N) (negative frequencies) move to the end.
// The output is rescaled so samples on the original grid reproduce the chip.
inline ComplexImage upsample_chip(const ComplexImage& img, Pixel center, std::size_t chip_size,
                                  std::size_t factor) {
  if (factor == 0 || (factor & (factor - 1)) != 0) {
    throw InvalidParams("upsampling factor must be a power of two");
  }
  ComplexImage chip = extract_chip(img, center, chip_size);
  if (factor == 1) return chip;

  const std::size_t n = chip_size;
  const std::size_t m = n * factor;
  fft::two_d(chip, fft::Direction::Forward);
  auto place = [&](std::size_t k) { return k < n / 2 ? k : k + (m - n); };
  ComplexImage padded(m, m);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) padded(place(r), place(c)) = chip(r, c);
  }
  fft::two_d(padded, fft::Direction::Inverse);
  padded *= static_cast<double>(factor);
  return padded;
}

}  // namespace csar::metrics
