#pragma once

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <tuple>

#include "csar/core/image.hpp"

namespace csar::fft {

enum class Direction { Forward, Inverse };

namespace detail {

// FFTW planning is not thread-safe; execution with the new-array interface is.
// FFTW_ESTIMATE keeps plans (and thus results) identical from run to run.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int n, int howmany, int stride, int dist, Direction dir) {
    const Key key{n, howmany, stride, dist, dir == Direction::Forward};
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const std::size_t total = static_cast<std::size_t>(howmany) * static_cast<std::size_t>(dist) +
                              static_cast<std::size_t>(n) * static_cast<std::size_t>(stride);
    auto* scratch = fftw_alloc_complex(total);
    int dims[1] = {n};
    fftw_plan plan = fftw_plan_many_dft(1, dims, howmany, scratch, nullptr, stride, dist, scratch,
                                        nullptr, stride, dist,
                                        dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD,
                                        FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  using Key = std::tuple<int, int, int, int, bool>;
  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
};

inline void run_many(cplx* data, int n, int howmany, int stride, int dist, Direction dir) {
  if (n <= 0 || howmany <= 0) return;
  fftw_plan plan = PlanCache::instance().get(n, howmany, stride, dist, dir);
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan, p, p);
}

inline void scale_unitary(ComplexImage& img, std::size_t n) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& v : img.data()) v *= scale;
}

}  // namespace detail

// Unitary DFT along each row (range axis), in place.
inline void along_rows(ComplexImage& img, Direction dir) {
  detail::run_many(img.data().data(), static_cast<int>(img.cols()), static_cast<int>(img.rows()),
                   1, static_cast<int>(img.cols()), dir);
  detail::scale_unitary(img, img.cols());
}

// Unitary DFT along each column (azimuth axis), in place.
inline void along_cols(ComplexImage& img, Direction dir) {
  detail::run_many(img.data().data(), static_cast<int>(img.rows()), static_cast<int>(img.cols()),
                   static_cast<int>(img.cols()), 1, dir);
  detail::scale_unitary(img, img.rows());
}

inline void two_d(ComplexImage& img, Direction dir) {
  along_rows(img, dir);
  along_cols(img, dir);
}

}  // namespace csar::fft
