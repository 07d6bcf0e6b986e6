#pragma once

#include <cmath>
#include <cstddef>

#include "csar/core/error.hpp"
#include "csar/core/image.hpp"
#include "csar/core/params.hpp"
#include "csar/rda/filters.hpp"

namespace csar::rda {

// sin(pi x) / (pi x), exactly 1 at 0 and exactly 0 at other integers.
inline double sinc(double x) {
  if (x == std::round(x)) return x == 0.0 ? 1.0 : 0.0;
  const double px = kPi * x;
  return std::sin(px) / px;
}

// Calls visit(index, weight) for the 2*halfwidth taps nearest to `position` that fall in
// [0, n). Taps outside the row read as zero and are skipped.
template <class Visit>
void for_each_tap(double position, std::size_t halfwidth, std::size_t n, Visit&& visit) {
  const auto base = static_cast<std::ptrdiff_t>(std::floor(position));
  const auto hw = static_cast<std::ptrdiff_t>(halfwidth);
  for (std::ptrdiff_t k = base - hw + 1; k <= base + hw; ++k) {
    if (k < 0 || k >= static_cast<std::ptrdiff_t>(n)) continue;
    visit(static_cast<std::size_t>(k), sinc(static_cast<double>(k) - position));
  }
}

// Operator C: U(f, tau) = sum V(f, tau~) sinc(tau~ - (tau + dr(f, tau))), truncated to the
// nearest 2*halfwidth taps. Input and output are in the (Doppler, range time) domain.
inline ComplexImage rcmc(const ComplexImage& v, const RdaFilters& f) {
  if (v.dims() != f.raw) {
    throw DimensionMismatch("rcmc: expected " + to_string(f.raw) + ", got " + to_string(v.dims()));
  }
  ComplexImage u(v.dims());
  for (std::size_t d = 0; d < v.rows(); ++d) {
    const auto in = v.row(d);
    auto out = u.row(d);
    for (std::size_t c = 0; c < v.cols(); ++c) {
      const double pos = static_cast<double>(c) + f.migration_at(d, c);
      cplx acc{0.0, 0.0};
      for_each_tap(pos, f.rcmc_halfwidth, v.cols(), [&](std::size_t k, double w) { acc += w * in[k]; });
      out[c] = acc;
    }
  }
  return u;
}

}  // namespace csar::rda
