#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "csar/core/error.hpp"
#include "csar/core/image.hpp"
#include "csar/metrics/upsample.hpp"

namespace csar::metrics {

inline constexpr double kNoSidelobe = -std::numeric_limits<double>::infinity();

inline std::size_t argmax(std::span<const double> v) {
  if (v.empty()) throw InvalidParams("empty profile");
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

// Main lobe = peak plus the descent on either side up to the first local minimum.
struct MainLobe {
  std::size_t peak = 0;
  std::size_t left = 0;
  std::size_t right = 0;
};

inline MainLobe main_lobe(std::span<const double> v) {
  MainLobe lobe;
  lobe.peak = argmax(v);
  lobe.left = lobe.peak;
  while (lobe.left > 0 && v[lobe.left - 1] < v[lobe.left]) --lobe.left;
  lobe.right = lobe.peak;
  while (lobe.right + 1 < v.size() && v[lobe.right + 1] < v[lobe.right]) ++lobe.right;
  return lobe;
}

// Peak sidelobe ratio in dB of a magnitude profile: the highest interior local maximum
// outside the main lobe over the peak. kNoSidelobe when there is none.
inline double pslr(std::span<const double> v) {
  const MainLobe lobe = main_lobe(v);
  const double peak = v[lobe.peak];
  if (!(peak > 0.0)) throw InvalidParams("pslr: profile has no positive peak");
  double best = -1.0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (i >= lobe.left && i <= lobe.right) continue;
    if (v[i] > v[i - 1] && v[i] >= v[i + 1] && v[i] > best) best = v[i];
  }
  if (best <= 0.0) return kNoSidelobe;
  return 20.0 * std::log10(best / peak);
}

// Width of the main lobe 3 dB below the peak, in profile samples. Crossings are located by
// linear interpolation of the dB profile between the bracketing samples, so a lone non-zero
// sample has zero width.
inline double irw(std::span<const double> v) {
  const std::size_t p = argmax(v);
  const double peak = v[p];
  if (!(peak > 0.0)) throw InvalidParams("irw: profile has no positive peak");
  auto db = [&](std::size_t i) {
    return v[i] > 0.0 ? 20.0 * std::log10(v[i] / peak) : -std::numeric_limits<double>::infinity();
  };
  constexpr double kLevel = -3.0;
  auto crossing = [&](std::size_t inside, std::size_t outside) {
    const double d_in = db(inside);
    const double d_out = db(outside);
    if (std::isinf(d_out)) return static_cast<double>(inside);
    const double frac = (d_in - kLevel) / (d_in - d_out);
    return static_cast<double>(inside) +
           frac * (static_cast<double>(outside) - static_cast<double>(inside));
  };

  std::size_t l = p;
  while (l > 0 && db(l - 1) >= kLevel) --l;
  const double left = l == 0 ? 0.0 : crossing(l, l - 1);
  std::size_t r = p;
  while (r + 1 < v.size() && db(r + 1) >= kLevel) ++r;
  const double right = r + 1 == v.size() ? static_cast<double>(r) : crossing(r, r + 1);
  return right - left;
}

struct PointResponse {
  double pslr_range_db = 0.0;
  double pslr_azimuth_db = 0.0;
  double irw_range = 0.0;    // upsampled samples
  double irw_azimuth = 0.0;  // upsampled samples
  std::size_t factor = 1;
  std::vector<double> range_profile;
  std::vector<double> azimuth_profile;

  double irw_range_native() const { return irw_range / static_cast<double>(factor); }
  double irw_azimuth_native() const { return irw_azimuth / static_cast<double>(factor); }
};

// Upsamples a chip around `center` and analyzes the range (row) and azimuth (column)
// cuts through the upsampled peak.
inline PointResponse analyze_point(const ComplexImage& img, Pixel center, std::size_t chip_size = 16,
                                   std::size_t factor = 16) {
  const ComplexImage up = upsample_chip(img, center, chip_size, factor);
  const Pixel pk = peak_pixel(up);
  PointResponse out;
  out.factor = factor;
  out.range_profile.resize(up.cols());
  for (std::size_t c = 0; c < up.cols(); ++c) out.range_profile[c] = std::abs(up(pk.row, c));
  out.azimuth_profile.resize(up.rows());
  for (std::size_t r = 0; r < up.rows(); ++r) out.azimuth_profile[r] = std::abs(up(r, pk.col));
  out.pslr_range_db = pslr(out.range_profile);
  out.pslr_azimuth_db = pslr(out.azimuth_profile);
  out.irw_range = irw(out.range_profile);
  out.irw_azimuth = irw(out.azimuth_profile);
  return out;
}

inline PointResponse analyze_point(const ComplexImage& img, std::size_t chip_size = 16,
                                   std::size_t factor = 16) {
  return analyze_point(img, peak_pixel(img), chip_size, factor);
}

}  // namespace csar::metrics
