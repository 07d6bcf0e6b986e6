#pragma once

#include <cmath>

#include "csar/apobs/approx_observe.hpp"
#include "csar/core/geometry.hpp"
#include "csar/core/params.hpp"
#include "csar/rda/filters.hpp"
#include "csar/sim/echo.hpp"

namespace csar::apobs {

// Least-squares scale between the exact echo of a unit scatterer at the scene center and
// G applied to the same pixel: |<G d, H d>| / ||G d||^2. G is close to unitary, so this is
// the factor by which measured echoes exceed G's predictions.
inline double amplitude_gain(const RadarParams& params, const rda::RdaFilters& filters) {
  ComplexImage delta(filters.scene);
  delta(filters.scene.rows / 2, filters.scene.cols / 2) = 1.0;
  const ComplexImage approx = approx_observe(delta, filters);
  const ComplexImage exact = sim::generate_raw(single_point_scene(filters.scene), params);
  return std::abs(inner(approx, exact)) / norm_sq(approx.data());
}

}  // namespace csar::apobs
