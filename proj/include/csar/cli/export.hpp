#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "csar/core/error.hpp"
#include "csar/core/image.hpp"

namespace csar::cli {

// Magnitude in dB relative to the image peak, mapped linearly from [db_floor, 0] onto
// [0, 65535]. An all-zero image maps to all zeros.
inline std::vector<std::uint16_t> to_gray16(const ComplexImage& img, double db_floor = -40.0) {
  if (!(db_floor < 0.0) || !std::isfinite(db_floor)) throw InvalidParams("db floor must be finite and negative");
  std::vector<std::uint16_t> out(img.size(), 0);
  const double peak = max_abs(img);
  if (!(peak > 0.0)) return out;
  for (std::size_t i = 0; i < img.size(); ++i) {
    const double mag = std::abs(img[i]);
    if (!(mag > 0.0)) continue;
    const double db = 20.0 * std::log10(mag / peak);
    const double level = std::clamp((db - db_floor) / -db_floor, 0.0, 1.0);
    out[i] = static_cast<std::uint16_t>(std::lround(level * 65535.0));
  }
  return out;
}

// Binary 16-bit PGM (P5, maxval 65535, big-endian samples). Rows are azimuth, columns range.
inline void write_pgm(std::ostream& out, const ComplexImage& img, double db_floor = -40.0) {
  const auto gray = to_gray16(img, db_floor);
  out << "P5\n" << img.cols() << ' ' << img.rows() << "\n65535\n";
  std::string bytes(gray.size() * 2, '\0');
  for (std::size_t i = 0; i < gray.size(); ++i) {
    bytes[2 * i] = static_cast<char>(gray[i] >> 8);
    bytes[2 * i + 1] = static_cast<char>(gray[i] & 0xFF);
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError("failed to write PGM");
}

inline void save_pgm(const ComplexImage& img, const std::string& path, double db_floor = -40.0) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open '" + path + "' for writing");
  write_pgm(out, img, db_floor);
}

}  // namespace csar::cli
