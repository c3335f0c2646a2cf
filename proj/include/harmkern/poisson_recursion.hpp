#pragma once

#include "harmkern/domain.hpp"
#include "harmkern/symbol.hpp"

namespace harmkern {

// Roots of the principal boundary equation (1+b) eta^2 - 2 a eta + |xi|^2 = 0,
// a = xi.grad phi, b = |grad phi|^2, as Taylor series in x'.
struct EtaExpansion {
  SymbolSeries delta_eta;  // i eta_+ + |xi|, no weight-0 part
  SymbolSeries upsilon;    // i (eta_- - eta_+) = 2 sqrt((1+b)|xi|^2 - a^2) / (1+b)
  SymbolSeries denom;      // 1 / (1+b)
};

EtaExpansion eta_expansion(const DomainSpec& dom, int cap);

// Solves (-d_xn^2 + |xi|^2) g = f with g(0) = 0 for f = x_n^q exp(-x_n|xi|) terms.
SymbolSeries solve_M0(const SymbolSeries& rhs);

// The three operators of the grade recursion M k_{-j} = R k_{-j+1} + Z k_{-j+2}.
class PoissonOperators {
 public:
  PoissonOperators(const DomainSpec& dom, int cap);
  SymbolSeries apply_M1(const SymbolSeries& g) const;  // M minus (-d^2 + |xi|^2)
  SymbolSeries apply_M(const SymbolSeries& g) const;
  SymbolSeries apply_R(const SymbolSeries& g) const;
  SymbolSeries apply_Z(const SymbolSeries& g) const;
  const BoundaryGeometry& geometry() const { return geo_; }

 private:
  int n_;
  int cap_;
  BoundaryGeometry geo_;
};

// Grades k_0 .. k_{-N} of the Poisson operator symbol, each grade j truncated at
// x'-weight W - j. Requires W >= N.
BoundarySymbol compute_poisson_symbols(const DomainSpec& dom, int N, int W);

// Weight cap 2N: two x'-derivatives per recursion step.
int default_weight(int N);

}  // namespace harmkern
