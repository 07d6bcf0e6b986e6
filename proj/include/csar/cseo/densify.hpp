#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "csar/apobs/approx_observe.hpp"
#include "csar/core/error.hpp"
#include "csar/core/geometry.hpp"
#include "csar/core/image.hpp"
#include "csar/core/params.hpp"
#include "csar/rda/filters.hpp"
#include "csar/rda/focus.hpp"
#include "csar/rda/rcmc.hpp"
#include "csar/sim/echo.hpp"

namespace csar::cseo {

enum class OperatorTag {
  G,         // approximated observation, scene -> raw
  M,         // RDA focusing, raw -> scene
  H,         // exact observation, scene -> raw
  HAdjoint,  // raw -> scene
  C,         // RCMC interpolation, raw -> raw
  D,         // inverse RCMC, raw -> raw
};

inline constexpr std::size_t kMaxDensePixels = 1024;

// Dense complex matrix, row-major. Column j is the response to the j-th basis image,
// with images flattened row-major.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<cplx> data;

  cplx& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  DenseMatrix adjoint() const {
    DenseMatrix t{cols, rows, std::vector<cplx>(data.size())};
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) t(j, i) = std::conj((*this)(i, j));
    }
    return t;
  }
};

// Builds the matrix of a linear image operator by probing it with every basis image.
template <class Op>
DenseMatrix densify_by_probing(Dims domain, Dims codomain, Op&& op) {
  if (domain.size() > kMaxDensePixels || codomain.size() > kMaxDensePixels) {
    throw GuardViolation("densify: " + to_string(domain) + " -> " + to_string(codomain) +
                         " exceeds the " + std::to_string(kMaxDensePixels) + "-pixel guard");
  }
  DenseMatrix m{codomain.size(), domain.size(), std::vector<cplx>(codomain.size() * domain.size())};
  ComplexImage probe(domain);
  for (std::size_t j = 0; j < domain.size(); ++j) {
    probe[j] = 1.0;
    const ComplexImage response = op(probe);
    if (response.dims() != codomain) throw DimensionMismatch("densify: unexpected response size");
    for (std::size_t i = 0; i < codomain.size(); ++i) m(i, j) = response[i];
    probe[j] = 0.0;
  }
  return m;
}

inline DenseMatrix densify(OperatorTag tag, const RadarParams& params) {
  const DerivedGeometry g = derive_geometry(params);
  auto check = [&](Dims a, Dims b) {
    if (a.size() > kMaxDensePixels || b.size() > kMaxDensePixels) {
      throw GuardViolation("densify: operator on " + to_string(a) + " -> " + to_string(b) +
                           " exceeds the " + std::to_string(kMaxDensePixels) + "-pixel guard");
    }
  };
  switch (tag) {
    case OperatorTag::H:
    case OperatorTag::HAdjoint: {
      check(g.scene, g.raw);
      const sim::ExactObservation h(params);
      if (tag == OperatorTag::H) {
        return densify_by_probing(g.scene, g.raw, [&](const ComplexImage& x) { return h.observe(x); });
      }
      return densify_by_probing(g.raw, g.scene, [&](const ComplexImage& y) { return h.adjoint(y); });
    }
    default:
      break;
  }
  check(g.scene, g.raw);
  const rda::RdaFilters f = rda::build_filters(g);
  switch (tag) {
    case OperatorTag::G:
      return densify_by_probing(g.scene, g.raw, [&](const ComplexImage& x) { return apobs::approx_observe(x, f); });
    case OperatorTag::M:
      return densify_by_probing(g.raw, g.scene, [&](const ComplexImage& y) { return rda::focus(y, f); });
    case OperatorTag::C:
      return densify_by_probing(g.raw, g.raw, [&](const ComplexImage& v) { return rda::rcmc(v, f); });
    case OperatorTag::D:
      return densify_by_probing(g.raw, g.raw, [&](const ComplexImage& u) { return apobs::inverse_rcmc(u, f); });
    default:
      break;
  }
  throw InvalidParams("densify: unknown operator");
}

}  // namespace csar::cseo
