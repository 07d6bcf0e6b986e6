#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "csar/core/error.hpp"
#include "csar/core/image.hpp"
#include "csar/sampling/random.hpp"

namespace csar::sampling {

using MeasurementVector = std::vector<cplx>;

// Kept azimuth rows, and for each kept row its own kept range samples.
struct SamplingPattern {
  Dims raw{};
  double azimuth_rate = 1.0;  // s_a
  double range_rate = 1.0;    // s_r
  std::uint64_t seed = 0;
  std::vector<std::size_t> kept_rows;
  std::vector<std::vector<std::size_t>> kept_cols;  // parallel to kept_rows

  std::size_t measurement_count() const {
    std::size_t n = 0;
    for (const auto& c : kept_cols) n += c.size();
    return n;
  }
  double rate() const {
    return static_cast<double>(measurement_count()) / static_cast<double>(raw.size());
  }
  friend bool operator==(const SamplingPattern&, const SamplingPattern&) = default;
};

inline std::size_t kept_count(double rate, std::size_t n) {
  return static_cast<std::size_t>(std::llround(rate * static_cast<double>(n)));
}

inline SamplingPattern make_pattern(Dims raw, double azimuth_rate, double range_rate,
                                    std::uint64_t seed) {
  auto check = [](double r, const char* name) {
    if (!(r > 0.0 && r <= 1.0)) throw InvalidParams(std::string(name) + " must lie in (0, 1]");
  };
  check(azimuth_rate, "azimuth rate");
  check(range_rate, "range rate");
  const std::size_t rows = kept_count(azimuth_rate, raw.rows);
  const std::size_t cols = kept_count(range_rate, raw.cols);
  if (rows == 0 || cols == 0) {
    throw InvalidParams("sampling rates keep no samples on a " + to_string(raw) + " grid");
  }

  SamplingPattern p;
  p.raw = raw;
  p.azimuth_rate = azimuth_rate;
  p.range_rate = range_rate;
  p.seed = seed;
  auto row_stream = stream(seed, 0);
  p.kept_rows = choose_sorted(row_stream, raw.rows, rows);
  p.kept_cols.reserve(rows);
  for (std::size_t r : p.kept_rows) {
    auto col_stream = stream(seed, static_cast<std::uint64_t>(r) + 1);
    p.kept_cols.push_back(choose_sorted(col_stream, raw.cols, cols));
  }
  return p;
}

inline SamplingPattern full_pattern(Dims raw) { return make_pattern(raw, 1.0, 1.0, 0); }

// Splits an overall rate s into (s_a, s_r) with s_a : s_r = a : b and s_a * s_r = s.
// A factor above 1 is clipped and the remainder moved to the other axis.
inline std::pair<double, double> split_rate(double rate, double a = 1.0, double b = 5.0) {
  if (!(rate > 0.0 && rate <= 1.0)) throw InvalidParams("sampling rate must lie in (0, 1]");
  if (!(a > 0.0 && b > 0.0)) throw InvalidParams("rate ratio terms must be positive");
  double sa = std::sqrt(rate * a / b);
  double sr = std::sqrt(rate * b / a);
  if (sr > 1.0) {
    sr = 1.0;
    sa = rate;
  } else if (sa > 1.0) {
    sa = 1.0;
    sr = rate;
  }
  return {sa, sr};
}

// Gathers kept samples in (row, column) lexicographic order.
inline MeasurementVector subsample(const ComplexImage& y, const SamplingPattern& p) {
  if (y.dims() != p.raw) {
    throw DimensionMismatch("subsample: pattern is " + to_string(p.raw) + ", data is " +
                            to_string(y.dims()));
  }
  MeasurementVector m;
  m.reserve(p.measurement_count());
  for (std::size_t k = 0; k < p.kept_rows.size(); ++k) {
    const auto row = y.row(p.kept_rows[k]);
    for (std::size_t c : p.kept_cols[k]) m.push_back(row[c]);
  }
  return m;
}

inline ComplexImage subsample_adjoint(const MeasurementVector& m, const SamplingPattern& p) {
  if (m.size() != p.measurement_count()) {
    throw DimensionMismatch("subsample_adjoint: expected " + std::to_string(p.measurement_count()) +
                            " measurements, got " + std::to_string(m.size()));
  }
  ComplexImage y(p.raw);
  std::size_t i = 0;
  for (std::size_t k = 0; k < p.kept_rows.size(); ++k) {
    auto row = y.row(p.kept_rows[k]);
    for (std::size_t c : p.kept_cols[k]) row[c] = m[i++];
  }
  return y;
}

// Text form:
//   csar-pattern 1
//   dims <rows> <cols>
//   rates <s_a> <s_r>
//   seed <seed>
//   <row>: <col> <col> ...
inline void write_pattern(std::ostream& out, const SamplingPattern& p) {
  std::ostringstream s;
  s.precision(17);
  s << "csar-pattern 1\n"
    << "dims " << p.raw.rows << ' ' << p.raw.cols << '\n'
    << "rates " << p.azimuth_rate << ' ' << p.range_rate << '\n'
    << "seed " << p.seed << '\n';
  for (std::size_t k = 0; k < p.kept_rows.size(); ++k) {
    s << p.kept_rows[k] << ':';
    for (std::size_t c : p.kept_cols[k]) s << ' ' << c;
    s << '\n';
  }
  out << s.str();
}

inline SamplingPattern read_pattern(std::istream& in) {
  SamplingPattern p;
  std::string word;
  int version = 0;
  if (!(in >> word >> version) || word != "csar-pattern" || version != 1) {
    throw FormatError("not a csar-pattern v1 file");
  }
  if (!(in >> word >> p.raw.rows >> p.raw.cols) || word != "dims") throw FormatError("bad dims line");
  if (!(in >> word >> p.azimuth_rate >> p.range_rate) || word != "rates") {
    throw FormatError("bad rates line");
  }
  if (!(in >> word >> p.seed) || word != "seed") throw FormatError("bad seed line");
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw FormatError("pattern row line missing ':'");
    std::size_t row = 0;
    try {
      row = static_cast<std::size_t>(std::stoull(line.substr(0, colon)));
    } catch (const std::exception&) {
      throw FormatError("bad pattern row index");
    }
    std::istringstream cols(line.substr(colon + 1));
    std::vector<std::size_t> kept;
    std::size_t c = 0;
    while (cols >> c) kept.push_back(c);
    if (!cols.eof()) throw FormatError("bad pattern column list");
    if (row >= p.raw.rows) throw FormatError("pattern row out of range");
    for (std::size_t k = 0; k < kept.size(); ++k) {
      if (kept[k] >= p.raw.cols || (k > 0 && kept[k] <= kept[k - 1])) {
        throw FormatError("pattern columns must be sorted, unique and in range");
      }
    }
    if (!p.kept_rows.empty() && row <= p.kept_rows.back()) {
      throw FormatError("pattern rows must be sorted and unique");
    }
    p.kept_rows.push_back(row);
    p.kept_cols.push_back(std::move(kept));
  }
  return p;
}

inline void save_pattern(const SamplingPattern& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open '" + path + "' for writing");
  write_pattern(out, p);
}

inline SamplingPattern load_pattern(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  return read_pattern(in);
}

}  // namespace csar::sampling
