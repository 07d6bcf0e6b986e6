#pragma once

#include <cstdint>
#include <random>

#include "csar/csar.hpp"

namespace csar::testing {

inline ComplexImage random_image(Dims d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexImage img(d);
  for (auto& v : img.data()) v = {n(rng), n(rng)};
  return img;
}

inline sampling::MeasurementVector random_vector(std::size_t size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  sampling::MeasurementVector v(size);
  for (auto& x : v) x = {n(rng), n(rng)};
  return v;
}

// Simulation preset on a smaller scene.
inline RadarParams preset_with_scene(std::size_t rows, std::size_t cols) {
  RadarParams p = simulation_preset();
  p.n_azimuth = rows;
  p.n_range = cols;
  return p;
}

// 12x12 scene, 8-pulse aperture and 8-sample pulse: raw grid 20x20, small enough to densify.
inline RadarParams tiny_params() {
  RadarParams p = preset_with_scene(12, 12);
  p.synthetic_aperture_samples = 8;
  p.pulse_duration = 8.0 / p.range_sample_rate;
  return p;
}

inline double relative_gap(cplx a, cplx b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

}  // namespace csar::testing
