#include <gtest/gtest.h>

#include <cmath>

#include "csar/csar.hpp"
#include "support/fixtures.hpp"

namespace csar {
namespace {

using cseo::DenseMatrix;
using cseo::OperatorTag;
using testing::tiny_params;

double max_entry_gap(const DenseMatrix& a, const DenseMatrix& b) {
  EXPECT_EQ(a.rows, b.rows);
  EXPECT_EQ(a.cols, b.cols);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) worst = std::max(worst, std::abs(a.data[i] - b.data[i]));
  return worst;
}

TEST(Densify, TinyGridShapes) {
  const auto g = derive_geometry(tiny_params());
  EXPECT_EQ(g.scene, (Dims{12, 12}));
  EXPECT_EQ(g.raw, (Dims{20, 20}));
  const DenseMatrix m = cseo::densify(OperatorTag::M, tiny_params());
  EXPECT_EQ(m.rows, 144u);
  EXPECT_EQ(m.cols, 400u);
}

TEST(Densify, ApproximatedObservationIsAdjointOfFocusing) {
  const DenseMatrix g = cseo::densify(OperatorTag::G, tiny_params());
  const DenseMatrix m = cseo::densify(OperatorTag::M, tiny_params());
  EXPECT_LT(max_entry_gap(g, m.adjoint()), 1e-10);
}

TEST(Densify, InverseRcmcIsTransposeOfRcmc) {
  const DenseMatrix c = cseo::densify(OperatorTag::C, tiny_params());
  const DenseMatrix d = cseo::densify(OperatorTag::D, tiny_params());
  double worst = 0.0;
  for (std::size_t i = 0; i < c.rows; ++i) {
    for (std::size_t j = 0; j < c.cols; ++j) {
      ASSERT_EQ(c(i, j).imag(), 0.0);
      worst = std::max(worst, std::abs(d(j, i) - c(i, j)));
    }
  }
  EXPECT_EQ(worst, 0.0);
}

TEST(Densify, ExactAdjointIsConjugateTranspose) {
  const DenseMatrix h = cseo::densify(OperatorTag::H, tiny_params());
  const DenseMatrix ha = cseo::densify(OperatorTag::HAdjoint, tiny_params());
  EXPECT_LT(max_entry_gap(ha, h.adjoint()), 1e-12);
}

TEST(Densify, ProbingMatchesOperatorOnRandomInput) {
  const auto p = tiny_params();
  const auto f = rda::build_filters(derive_geometry(p));
  const DenseMatrix g = cseo::densify(OperatorTag::G, p);
  const auto x = testing::random_image(f.scene, 8);
  const ComplexImage y = apobs::approx_observe(x, f);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.rows; ++i) {
    cplx acc{};
    for (std::size_t j = 0; j < g.cols; ++j) acc += g(i, j) * x[j];
    worst = std::max(worst, std::abs(acc - y[i]));
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(Densify, GuardRefusesLargeOperators) {
  EXPECT_THROW(cseo::densify(OperatorTag::G, testing::preset_with_scene(16, 16)), GuardViolation);
  EXPECT_THROW(cseo::densify_by_probing({40, 40}, {1, 1}, [](const ComplexImage&) { return ComplexImage(1, 1); }),
               GuardViolation);
}

TEST(Guard, ReconstructExactRefusesLargeScenes) {
  EXPECT_NO_THROW(cseo::check_size_guard({64, 64}));
  EXPECT_THROW(cseo::check_size_guard({65, 64}), GuardViolation);
  EXPECT_THROW(cseo::check_size_guard({64, 180}), GuardViolation);
  const RadarParams p = simulation_preset();
  const auto pattern = sampling::full_pattern(derive_geometry(p).raw);
  EXPECT_THROW(cseo::reconstruct_exact(sampling::MeasurementVector(pattern.measurement_count()), pattern, p, {}),
               GuardViolation);
}

TEST(ReconstructExact, RecoversConsistentSparseScene) {
  const RadarParams p = testing::preset_with_scene(24, 24);
  const sim::ExactObservation h(p);
  const PointScene truth = random_scene({24, 24}, 3, 4, 2);
  const ComplexImage raw = sim::generate_raw(truth, p);
  const auto pattern = sampling::make_pattern(h.raw_dims(), 0.3, 0.5, 9);
  const double gain = apobs::amplitude_gain(p, rda::build_filters(h.geometry()));
  solver::SolverConfig cfg;
  cfg.sparsity = 3;
  cfg.amplitude_gain = gain;
  const auto rec = cseo::reconstruct_exact(sampling::subsample(raw, pattern), pattern, h, cfg);
  for (const auto& t : truth.targets) {
    const cplx got = rec.image(t.azimuth_index, t.range_index);
    EXPECT_LT(std::abs(got - t.reflectivity), 0.02 * std::abs(t.reflectivity));
  }
  EXPECT_EQ(solver::support_size(rec.image), 3u);
}

TEST(ReconstructExact, DimensionChecks) {
  const RadarParams p = testing::preset_with_scene(8, 8);
  const sim::ExactObservation h(p);
  const auto pattern = sampling::full_pattern(h.raw_dims());
  solver::SolverConfig cfg;
  cfg.sparsity = 2;
  EXPECT_THROW(cseo::reconstruct_exact(sampling::MeasurementVector(1), pattern, h, cfg), DimensionMismatch);
  EXPECT_THROW(cseo::reconstruct_exact({}, sampling::full_pattern({3, 3}), h, cfg), DimensionMismatch);
}

}  // namespace
}  // namespace csar
