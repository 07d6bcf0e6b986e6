#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "csar/csar.hpp"
#include "support/fixtures.hpp"

namespace csar::testing {

// Outcome of one property over all randomized instances.
struct PropertyResult {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool passed() const { return checks > 0 && failures == 0; }
  void record(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first_failure = what;
  }
};

using PropertyTable = std::map<std::string, PropertyResult>;

// Small random radar instance: scene sides, aperture and pulse lengths drawn per seed.
inline RadarParams random_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> side(6, 20), margin(4, 30);
  RadarParams p = preset_with_scene(side(rng), side(rng));
  p.synthetic_aperture_samples = margin(rng);
  p.pulse_duration = static_cast<double>(margin(rng)) / p.range_sample_rate;
  return p;
}

inline ComplexImage scaled(ComplexImage x, cplx a) {
  x *= a;
  return x;
}

inline std::vector<cplx> scaled(std::vector<cplx> v, cplx a) {
  for (auto& e : v) e *= a;
  return v;
}

inline std::vector<cplx> sum(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  std::vector<cplx> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline double vector_gap(std::span<const cplx> a, std::span<const cplx> b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - b[i]);
    den += std::norm(b[i]);
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

// ||S(a) - S(b)|| and ||a - b|| for the soft threshold S at sigma.
inline std::pair<double, double> soft_threshold_gap(const ComplexImage& a, const ComplexImage& b, double sigma) {
  return {frobenius_norm(solver::soft_threshold(a, sigma) - solver::soft_threshold(b, sigma)),
          frobenius_norm(a - b)};
}

template <class Op>
bool is_linear(Op&& op, const ComplexImage& x, const ComplexImage& z, cplx a, cplx b) {
  const auto lhs = op(scaled(x, a) + scaled(z, b));
  const auto rhs = scaled(op(x), a) + scaled(op(z), b);
  return vector_gap(lhs.data(), rhs.data()) <= 1e-12;
}

// Runs every property over `instances` random radar instances derived from `seed`.
inline PropertyTable run_property_suite(std::size_t instances, std::uint64_t seed = 2024) {
  PropertyTable t;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto coef = [&] { return cplx(unit(rng), unit(rng)); };

  for (std::size_t n = 0; n < instances; ++n) {
    const RadarParams params = random_instance(rng);
    const auto g = derive_geometry(params);
    const auto f = rda::build_filters(g);
    const sim::ExactObservation h(params);
    const std::string tag = "instance " + std::to_string(n) + " " + to_string(g.scene) + " -> " + to_string(g.raw);
    const std::uint64_t s = rng();
    const auto x = random_image(g.scene, s), z = random_image(g.scene, s + 1);
    const auto y = random_image(g.raw, s + 2), w = random_image(g.raw, s + 3);
    const cplx a = coef(), b = coef();

    auto G = [&](const ComplexImage& v) { return apobs::approx_observe(v, f); };
    auto M = [&](const ComplexImage& v) { return rda::focus(v, f); };
    auto H = [&](const ComplexImage& v) { return h.observe(v); };
    auto HA = [&](const ComplexImage& v) { return h.adjoint(v); };
    auto C = [&](const ComplexImage& v) { return rda::rcmc(v, f); };
    auto D = [&](const ComplexImage& v) { return apobs::inverse_rcmc(v, f); };

    auto& lin = t["linearity"];
    lin.record(is_linear(G, x, z, a, b), tag + ": G");
    lin.record(is_linear(M, y, w, a, b), tag + ": M");
    lin.record(is_linear(H, x, z, a, b), tag + ": H");
    lin.record(is_linear(HA, y, w, a, b), tag + ": H^H");
    lin.record(is_linear(C, y, w, a, b), tag + ": C");
    lin.record(is_linear(D, y, w, a, b), tag + ": D");

    auto& adj = t["adjointness"];
    adj.record(relative_gap(inner(G(x), y), inner(x, M(y))) <= 1e-10, tag + ": <Gx,y> = <x,My>");
    adj.record(relative_gap(inner(H(x), y), inner(x, HA(y))) <= 1e-10, tag + ": <Hx,y> = <x,H^H y>");
    adj.record(relative_gap(inner(C(y), w), inner(y, D(w))) <= 1e-10, tag + ": <Cv,u> = <v,Du>");

    std::uniform_real_distribution<double> rate(0.2, 1.0);
    const auto pattern = sampling::make_pattern(g.raw, rate(rng), rate(rng), rng());
    const auto m = random_vector(pattern.measurement_count(), s + 4);
    const auto sy = sampling::subsample(y, pattern);
    auto& sel = t["selection"];
    sel.record(sampling::subsample(sampling::subsample_adjoint(m, pattern), pattern) == m,
               tag + ": Theta Theta^T = I");
    const ComplexImage masked = sampling::subsample_adjoint(sy, pattern);
    const ComplexImage remasked = sampling::subsample_adjoint(sampling::subsample(masked, pattern), pattern);
    sel.record(std::equal(masked.data().begin(), masked.data().end(), remasked.data().begin()),
               tag + ": Theta^T Theta idempotent");
    cplx lhs{};
    for (std::size_t i = 0; i < m.size(); ++i) lhs += std::conj(m[i]) * sy[i];
    sel.record(relative_gap(lhs, inner(sampling::subsample_adjoint(m, pattern), y)) <= 1e-12,
               tag + ": <Theta y,m> = <y,Theta^T m>");
    sel.record(vector_gap(sampling::subsample(scaled(y, a) + scaled(w, b), pattern),
                          sum(scaled(sy, a), scaled(sampling::subsample(w, pattern), b))) <= 1e-14,
               tag + ": Theta linear");

    auto& soft = t["soft-threshold nonexpansive"];
    for (int r = 0; r < 5; ++r) {
      const double sigma = 2.0 * std::abs(unit(rng));
      const auto far = soft_threshold_gap(x, z, sigma);
      soft.record(far.first <= far.second * (1.0 + 1e-12), tag + ": sigma " + std::to_string(sigma));
      const auto near = soft_threshold_gap(x, x + scaled(z, 0.05), sigma);
      soft.record(near.first <= near.second * (1.0 + 1e-12), tag + ": nearby, sigma " + std::to_string(sigma));
    }

    auto& bound = t["support bound"];
    std::uniform_int_distribution<std::size_t> kdist(1, std::min<std::size_t>(12, g.scene.size() - 1));
    solver::SolverConfig cfg;
    cfg.sparsity = kdist(rng);
    cfg.max_iters = 12;
    cfg.tol = 0.0;
    const auto y_s = sampling::subsample(y, pattern);
    const auto csrda = solver::reconstruct(y_s, pattern, f, cfg);
    const auto cseo_rec = cseo::reconstruct_exact(y_s, pattern, h, cfg);
    for (const auto* rec : {&csrda, &cseo_rec}) {
      bool ok = solver::support_size(rec->image) <= cfg.sparsity;
      for (const auto& it : rec->report.iterations) ok = ok && it.support_size <= cfg.sparsity;
      bound.record(ok, tag + ": k = " + std::to_string(cfg.sparsity));
    }
  }
  return t;
}

}  // namespace csar::testing
