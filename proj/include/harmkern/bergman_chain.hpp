#pragma once

#include <optional>
#include <vector>

#include "harmkern/domain.hpp"
#include "harmkern/symbol.hpp"

namespace harmkern {

// Boundary measure used for the L^2 pairing on the boundary.
enum class BoundaryMeasure { Surface, Chart };

// Weight x_n^alpha e^{g(x')}, g(x') = sum_k g_jet[k] |x'|^{2k} / k!.
struct WeightSpec {
  Rational alpha = 0;
  std::vector<Rational> g_jet;

  Rational g0() const { return g_jet.empty() ? Rational(0) : g_jet[0]; }
};

// Symbol of a boundary pseudodifferential operator, scaled by
// Gamma(alpha+1) (2|xi|)^(-alpha) e^{g0} when weighted.
struct PsdoExpansion {
  BoundarySymbol symbol;
  Rational alpha = 0;
  Rational g0 = 0;
  BoundaryMeasure measure = BoundaryMeasure::Surface;

  bool weighted() const { return alpha != 0 || g0 != 0; }
};

// Lambda = K* w K. Surface measure multiplies the chart symbol by J^{-1}.
PsdoExpansion lambda_symbol(const BoundarySymbol& k, const DomainSpec& dom, int depth,
                            const std::optional<WeightSpec>& weight = std::nullopt,
                            BoundaryMeasure measure = BoundaryMeasure::Surface);

// Left parametrix: p_1 = 1/s_{-1}, then the usual recursion.
PsdoExpansion invert_psdo(const PsdoExpansion& s, int depth);

// Trace adjoint for the given boundary measure.
BoundarySymbol boundary_adjoint(const BoundarySymbol& k, const DomainSpec& dom, int depth, BoundaryMeasure measure);

// v = k∘p, a Poisson symbol of order 1.
BoundarySymbol potential_symbol(const BoundarySymbol& k, const PsdoExpansion& p, int depth);

// g = k∘p∘k*, the singular Green symbol of the harmonic Bergman projection.
BoundarySymbol bergman_green_symbol(const BoundarySymbol& k, const PsdoExpansion& p, const DomainSpec& dom, int depth);

// Everything from Poisson symbols to g in one call.
struct BergmanChain {
  BoundarySymbol k;
  BoundarySymbol kstar;
  PsdoExpansion s;
  PsdoExpansion p;
  BoundarySymbol g;
};
BergmanChain bergman_chain(const DomainSpec& dom, int N, int W, BoundaryMeasure measure = BoundaryMeasure::Surface);

// Principal-level check that sum_j |sigma(R_j)|^2 = 1 / (2 sigma(Lambda)^2) and
// sigma(T) = sigma(Lambda)^{-1} / 2, exactly as Taylor series in x'.
struct SobolevCheck {
  SymbolSeries sigma_lambda;
  std::vector<SymbolSeries> sigma_r;  // tangential 1..n-1, then normal
  SymbolSeries sum_squares;
  SymbolSeries target;
  SymbolSeries sigma_t;
  bool sum_identity = false;
  bool t_identity = false;
};
SobolevCheck sobolev_identity_check(const BoundarySymbol& k, const DomainSpec& dom);

}  // namespace harmkern
