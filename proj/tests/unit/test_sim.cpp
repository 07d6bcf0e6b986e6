#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "csar/csar.hpp"
#include "support/fixtures.hpp"

namespace csar {
namespace {

using testing::preset_with_scene;
using testing::random_image;

// Direct evaluation of the stripmap echo for one target, written independently of the
// signature tables: sum over pulses and range samples of
//   rect * exp(j pi K_r t^2) * exp(-j 4 pi R / lambda),  t = tau - 2 R / c.
cplx reference_echo_sample(const RadarParams& p, const DerivedGeometry& g, const PointTarget& t,
                           std::size_t raw_row, std::size_t raw_col) {
  const double r0 = g.slant_range[t.range_index + g.col_offset];
  const double eta = (static_cast<double>(raw_row) - static_cast<double>(t.azimuth_index + g.row_offset)) / p.prf;
  if (std::abs(eta * p.prf) > static_cast<double>(p.synthetic_aperture_samples) / 2.0) return {};
  const double range = std::sqrt(r0 * r0 + p.velocity * p.velocity * eta * eta);
  const double tau = (static_cast<double>(raw_col) - static_cast<double>(t.range_index + g.col_offset)) /
                     p.range_sample_rate;
  const double t_rel = tau - 2.0 * (range - r0) / kSpeedOfLight;
  if (std::abs(t_rel) > p.pulse_duration / 2.0 + 1e-9 / p.range_sample_rate) return {};
  const double lambda = kSpeedOfLight / p.carrier_freq;
  return t.reflectivity * std::polar(1.0, kPi * p.range_fm_rate * t_rel * t_rel) *
         std::polar(1.0, -4.0 * kPi * range / lambda);
}

TEST(GenerateRaw, EmptySceneGivesZeros) {
  const RadarParams p = preset_with_scene(16, 16);
  const ComplexImage raw = sim::generate_raw({}, p);
  EXPECT_EQ(raw.dims(), (Dims{16 + 150, 16 + 150}));
  EXPECT_EQ(max_abs(raw), 0.0);
}

TEST(GenerateRaw, MatchesDirectEchoFormula) {
  const RadarParams p = preset_with_scene(20, 20);
  const auto g = derive_geometry(p);
  const PointTarget t{7, 13, std::polar(0.7, 1.1)};
  const ComplexImage raw = sim::generate_raw(PointScene{{t}}, p);
  double worst = 0.0;
  for (std::size_t r = 0; r < raw.rows(); r += 3) {
    for (std::size_t c = 0; c < raw.cols(); c += 2) {
      worst = std::max(worst, std::abs(raw(r, c) - reference_echo_sample(p, g, t, r, c)));
    }
  }
  // Carrier phase 4 pi R / lambda ~ 4e6 rad loses ~1e-9 to rounding in the direct form.
  EXPECT_LT(worst, 1e-6);
}

TEST(GenerateRaw, SignatureSpansAperturePulses) {
  const RadarParams p = preset_with_scene(10, 10);
  const auto g = derive_geometry(p);
  const auto sig = sim::echo_signature(g, p, 5);
  EXPECT_EQ(sig.rows, 151u);  // |a - 75| <= 75
  std::size_t nonzero_center_row = 0;
  for (std::size_t b = 0; b < sig.cols; ++b) nonzero_center_row += sig.at(75, b) != cplx{};
  EXPECT_EQ(nonzero_center_row, 151u);  // |t| <= T_r/2 at zero walk, both ends inclusive
}

TEST(GenerateRaw, SuperpositionOfDisjointScenes) {
  const RadarParams p = preset_with_scene(24, 24);
  const PointScene a{{{3, 4, {1.0, 0.5}}, {10, 20, {-0.3, 0.2}}}};
  const PointScene b{{{15, 7, {0.0, 1.0}}}};
  PointScene both = a;
  both.targets.insert(both.targets.end(), b.targets.begin(), b.targets.end());
  const ComplexImage sum = sim::generate_raw(a, p) + sim::generate_raw(b, p);
  const ComplexImage joint = sim::generate_raw(both, p);
  EXPECT_LE(frobenius_norm(sum - joint), 1e-12 * frobenius_norm(joint));
}

TEST(GenerateRaw, InvariantUnderTargetPermutation) {
  const RadarParams p = preset_with_scene(24, 24);
  PointScene s = random_scene({24, 24}, 6, 2, 5);
  const ComplexImage a = sim::generate_raw(s, p);
  std::reverse(s.targets.begin(), s.targets.end());
  std::swap(s.targets[1], s.targets[4]);
  const ComplexImage b = sim::generate_raw(s, p);
  for (std::size_t i = 0; i < a.size(); ++i) ASSERT_EQ(a[i], b[i]);
}

TEST(GenerateRaw, RejectsOutOfGridTargets) {
  const RadarParams p = preset_with_scene(8, 8);
  EXPECT_THROW(sim::generate_raw(PointScene{{{8, 0, {1.0, 0.0}}}}, p), InvalidParams);
}

TEST(ExactObservation, DeltaEqualsGenerateRawBitExactly) {
  const RadarParams p = preset_with_scene(16, 16);
  ComplexImage x(16, 16);
  x(8, 8) = 1.0;
  const ComplexImage a = sim::exact_observe(x, p);
  const ComplexImage b = sim::generate_raw(single_point_scene({16, 16}), p);
  for (std::size_t i = 0; i < a.size(); ++i) ASSERT_EQ(a[i], b[i]);
}

TEST(ExactObservation, AdjointInnerProductIdentity) {
  const RadarParams p = preset_with_scene(24, 24);
  const sim::ExactObservation h(p);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto x = random_image(h.scene_dims(), seed);
    const auto y = random_image(h.raw_dims(), seed + 100);
    const cplx lhs = inner(h.observe(x), y);
    const cplx rhs = inner(x, h.adjoint(y));
    EXPECT_LT(testing::relative_gap(lhs, rhs), 1e-10);
  }
}

TEST(ExactObservation, Linearity) {
  const RadarParams p = preset_with_scene(16, 16);
  const sim::ExactObservation h(p);
  const auto x = random_image(h.scene_dims(), 1);
  const auto z = random_image(h.scene_dims(), 2);
  const cplx alpha{0.3, -1.2}, beta{2.0, 0.5};
  ComplexImage ax = x, bz = z;
  ax *= alpha;
  bz *= beta;
  ComplexImage lhs = h.observe(ax + bz);
  ComplexImage hx = h.observe(x), hz = h.observe(z);
  hx *= alpha;
  hz *= beta;
  EXPECT_LE(frobenius_norm(lhs - (hx + hz)), 1e-12 * frobenius_norm(lhs));

  const auto y = random_image(h.raw_dims(), 3);
  ComplexImage ay = y;
  ay *= alpha;
  ComplexImage adj = h.adjoint(y);
  adj *= alpha;
  EXPECT_LE(frobenius_norm(h.adjoint(ay) - adj), 1e-12 * frobenius_norm(adj));
}

TEST(ExactObservation, AutocorrelationPeaksAtTarget) {
  const RadarParams p = preset_with_scene(20, 20);
  const sim::ExactObservation h(p);
  ComplexImage x(20, 20);
  x(6, 13) = {0.0, 1.0};
  const ComplexImage back = h.adjoint(h.observe(x));
  EXPECT_EQ(metrics::peak_pixel(back), (metrics::Pixel{6, 13}));
}

TEST(ExactObservation, DimensionChecks) {
  const sim::ExactObservation h(preset_with_scene(8, 8));
  EXPECT_THROW(h.observe(ComplexImage(8, 9)), DimensionMismatch);
  EXPECT_THROW(h.adjoint(ComplexImage(8, 8)), DimensionMismatch);
}

TEST(Noise, InfiniteSnrIsIdentity) {
  const auto y = random_image({10, 10}, 4);
  const ComplexImage z = sim::add_noise(y, {});
  for (std::size_t i = 0; i < y.size(); ++i) EXPECT_EQ(y[i], z[i]);
}

TEST(Noise, DeterministicForFixedSeed) {
  const auto y = random_image({30, 30}, 4);
  const ComplexImage a = sim::add_noise(y, {10.0, 77});
  const ComplexImage b = sim::add_noise(y, {10.0, 77});
  const ComplexImage c = sim::add_noise(y, {10.0, 78});
  for (std::size_t i = 0; i < y.size(); ++i) ASSERT_EQ(a[i], b[i]);
  EXPECT_GT(frobenius_norm(a - c), 0.0);
}

TEST(Noise, EmpiricalSnrWithinHalfDecibel) {
  const RadarParams p = simulation_preset();
  const ComplexImage raw = sim::generate_raw(nine_point_scene({180, 180}, 1), p);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const ComplexImage noisy = sim::add_noise(raw, {20.0, seed});
    const double snr = 10.0 * std::log10(norm_sq(raw.data()) / norm_sq((noisy - raw).data()));
    EXPECT_NEAR(snr, 20.0, 0.5);
  }
}

TEST(Noise, RejectsUndefinedReference) {
  EXPECT_THROW(sim::add_noise(ComplexImage(4, 4), {20.0, 1}), InvalidParams);
  EXPECT_THROW(sim::add_noise(random_image({4, 4}, 1), {std::numeric_limits<double>::quiet_NaN(), 1}),
               InvalidParams);
  EXPECT_THROW(sim::add_noise(random_image({4, 4}, 1), {-std::numeric_limits<double>::infinity(), 1}),
               InvalidParams);
}

TEST(Noise, ComponentsAreCircular) {
  ComplexImage y(200, 200);
  for (auto& v : y.data()) v = 1.0;
  const ComplexImage n = sim::add_noise(y, {0.0, 5}) - y;
  double re = 0.0, im = 0.0, cross = 0.0;
  for (const auto& v : n.data()) {
    re += v.real() * v.real();
    im += v.imag() * v.imag();
    cross += v.real() * v.imag();
  }
  const double count = static_cast<double>(n.size());
  EXPECT_NEAR(re / count, 0.5, 0.02);
  EXPECT_NEAR(im / count, 0.5, 0.02);
  EXPECT_NEAR(cross / count, 0.0, 0.02);
}

}  // namespace
}  // namespace csar
