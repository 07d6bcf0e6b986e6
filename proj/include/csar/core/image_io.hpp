#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "csar/core/error.hpp"
#include "csar/core/image.hpp"

namespace csar {

// Binary complex-array file:
//   "CSAR" | u16 version = 1 | u32 rows | u32 cols | rows*cols*(f64 re, f64 im)
// Everything little-endian, samples row-major.
inline constexpr std::array<char, 4> kImageMagic{'C', 'S', 'A', 'R'};
inline constexpr std::uint16_t kImageFormatVersion = 1;
inline constexpr std::size_t kImageHeaderBytes = 4 + 2 + 4 + 4;

namespace detail {

template <class T>
void put_le(std::ostream& out, T value) {
  static_assert(std::is_unsigned_v<T>);
  unsigned char buf[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>(value >> (8 * i));
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <class T>
T get_le(const unsigned char* p) {
  T v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(static_cast<T>(p[i]) << (8 * i));
  return v;
}

}  // namespace detail

inline void write_image(std::ostream& out, const ComplexImage& img) {
  constexpr auto kMax = std::numeric_limits<std::uint32_t>::max();
  if (img.rows() > kMax || img.cols() > kMax) throw FormatError("image dimensions exceed u32");
  out.write(kImageMagic.data(), kImageMagic.size());
  detail::put_le<std::uint16_t>(out, kImageFormatVersion);
  detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(img.rows()));
  detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(img.cols()));
  for (const auto& v : img.data()) {
    detail::put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v.real()));
    detail::put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v.imag()));
  }
  if (!out) throw FormatError("write failed");
}

inline ComplexImage read_image(std::istream& in) {
  unsigned char header[kImageHeaderBytes];
  in.read(reinterpret_cast<char*>(header), sizeof(header));
  if (in.gcount() != static_cast<std::streamsize>(sizeof(header))) {
    throw FormatError("truncated header");
  }
  if (std::memcmp(header, kImageMagic.data(), kImageMagic.size()) != 0) {
    throw FormatError("bad magic bytes, not a CSAR image");
  }
  const auto version = detail::get_le<std::uint16_t>(header + 4);
  if (version != kImageFormatVersion) {
    throw FormatError("unsupported CSAR format version " + std::to_string(version));
  }
  const std::uint64_t rows = detail::get_le<std::uint32_t>(header + 6);
  const std::uint64_t cols = detail::get_le<std::uint32_t>(header + 10);
  // 16 bytes per sample must stay addressable.
  const std::uint64_t limit = std::numeric_limits<std::size_t>::max() / 16;
  if (cols != 0 && rows > limit / cols) throw FormatError("dimension overflow");
  const std::size_t count = static_cast<std::size_t>(rows * cols);

  std::vector<cplx> data;
  constexpr std::size_t kChunk = 1 << 16;
  std::vector<unsigned char> buf;
  std::size_t done = 0;
  while (done < count) {
    const std::size_t n = std::min(kChunk, count - done);
    buf.resize(n * 16);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() != static_cast<std::streamsize>(buf.size())) {
      throw FormatError("truncated payload: header declares " + std::to_string(rows) + "x" +
                        std::to_string(cols) + " samples");
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double re = std::bit_cast<double>(detail::get_le<std::uint64_t>(&buf[16 * i]));
      const double im = std::bit_cast<double>(detail::get_le<std::uint64_t>(&buf[16 * i + 8]));
      if (!std::isfinite(re) || !std::isfinite(im)) {
        throw FormatError("non-finite sample at index " + std::to_string(done + i));
      }
      data.emplace_back(re, im);
    }
    done += n;
  }
  return ComplexImage(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols),
                      std::move(data));
}

inline void write_image(const ComplexImage& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot open '" + path + "' for writing");
  write_image(out, img);
}

inline ComplexImage read_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  return read_image(in);
}

}  // namespace csar
