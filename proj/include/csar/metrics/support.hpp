#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "csar/core/error.hpp"
#include "csar/core/image.hpp"
#include "csar/core/scene.hpp"
#include "csar/metrics/upsample.hpp"

namespace csar::metrics {

struct SupportMetrics {
  std::size_t detections = 0;
  std::size_t misses = 0;
  std::size_t false_alarms = 0;
  double max_position_error = 0.0;  // samples, over detected targets

  bool perfect() const { return misses == 0 && false_alarms == 0; }
};

// Pixels whose magnitude is positive, at least every 8-neighbour, and not below
// peak * 10^(threshold_db / 20).
inline std::vector<Pixel> local_maxima(const ComplexImage& img, double threshold_db) {
  double peak = max_abs(img);
  std::vector<Pixel> out;
  if (!(peak > 0.0)) return out;
  const double floor = peak * std::pow(10.0, threshold_db / 20.0);
  const auto rows = static_cast<std::ptrdiff_t>(img.rows());
  const auto cols = static_cast<std::ptrdiff_t>(img.cols());
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    for (std::ptrdiff_t c = 0; c < cols; ++c) {
      const double m = std::abs(img(static_cast<std::size_t>(r), static_cast<std::size_t>(c)));
      if (!(m > 0.0) || m < floor) continue;
      bool is_max = true;
      for (std::ptrdiff_t dr = -1; dr <= 1 && is_max; ++dr) {
        for (std::ptrdiff_t dc = -1; dc <= 1; ++dc) {
          const auto rr = r + dr, cc = c + dc;
          if ((dr == 0 && dc == 0) || rr < 0 || cc < 0 || rr >= rows || cc >= cols) continue;
          if (std::abs(img(static_cast<std::size_t>(rr), static_cast<std::size_t>(cc))) > m) {
            is_max = false;
            break;
          }
        }
      }
      if (is_max) out.push_back({static_cast<std::size_t>(r), static_cast<std::size_t>(c)});
    }
  }
  return out;
}

// A target counts as detected when an above-threshold local maximum lies within one sample
// (8-neighbourhood); maxima that match no target are false alarms.
inline SupportMetrics support_metrics(const PointScene& truth, const ComplexImage& recovered,
                                      double threshold_db) {
  if (recovered.empty()) throw InvalidParams("support_metrics: empty image");
  if (!(threshold_db < 0.0)) throw InvalidParams("support_metrics: threshold must be below 0 dB");
  const auto maxima = local_maxima(recovered, threshold_db);
  auto chebyshev = [](const PointTarget& t, const Pixel& p) {
    const auto dr = static_cast<double>(t.azimuth_index) - static_cast<double>(p.row);
    const auto dc = static_cast<double>(t.range_index) - static_cast<double>(p.col);
    return std::max(std::abs(dr), std::abs(dc));
  };
  auto euclid = [](const PointTarget& t, const Pixel& p) {
    const auto dr = static_cast<double>(t.azimuth_index) - static_cast<double>(p.row);
    const auto dc = static_cast<double>(t.range_index) - static_cast<double>(p.col);
    return std::hypot(dr, dc);
  };

  SupportMetrics m;
  for (const auto& t : truth.targets) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : maxima) {
      if (chebyshev(t, p) <= 1.0) best = std::min(best, euclid(t, p));
    }
    if (std::isfinite(best)) {
      ++m.detections;
      m.max_position_error = std::max(m.max_position_error, best);
    } else {
      ++m.misses;
    }
  }
  for (const auto& p : maxima) {
    const bool matched = std::any_of(truth.targets.begin(), truth.targets.end(),
                                     [&](const PointTarget& t) { return chebyshev(t, p) <= 1.0; });
    if (!matched) ++m.false_alarms;
  }
  return m;
}

}  // namespace csar::metrics
