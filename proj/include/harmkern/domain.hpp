#pragma once

#include <string>
#include <vector>

#include "harmkern/jet_poly.hpp"
#include "harmkern/symbol.hpp"

namespace harmkern {

// Local model {x_n > phi(x')}, phi(x') = Phi(|x'|^2), Phi(0) = 0, with the jet
// a_k = Phi^(k)(0) either symbolic or exact rational.
struct DomainSpec {
  int n = 3;
  std::vector<JetPoly> jet;

  static DomainSpec symbolic(int n, int length);
  static DomainSpec from_rationals(int n, const std::vector<Rational>& values);
  static DomainSpec halfspace(int n);
  // Ball of radius R tangent to {x_n = 0} at the origin, lying in x_n > 0.
  static DomainSpec ball(int n, const Rational& radius, int length);

  void validate() const;
  bool is_symbolic() const;
  std::string describe() const;
};

// phi and its derived quantities as Taylor series truncated at weight cap.
struct BoundaryGeometry {
  SymbolSeries phi;
  std::vector<SymbolSeries> grad;
  SymbolSeries laplacian;
  SymbolSeries grad_sq;      // |grad phi|^2
  SymbolSeries xi_dot_grad;  // xi . grad phi
  SymbolSeries inv_area;     // J^{-1} = (1 + |grad phi|^2)^{-1/2}
};

BoundaryGeometry boundary_geometry(const DomainSpec& dom, int cap);

}  // namespace harmkern
