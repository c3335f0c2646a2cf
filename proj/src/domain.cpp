#include "harmkern/domain.hpp"

#include "harmkern/errors.hpp"

namespace harmkern {

DomainSpec DomainSpec::symbolic(int n, int length) {
  if (length < 0 || length > kMaxJet) throw ParameterError("jet length must lie in [0, " + std::to_string(kMaxJet) + "]");
  DomainSpec d{n, {}};
  for (int k = 1; k <= length; ++k) d.jet.push_back(JetPoly::variable(k));
  d.validate();
  return d;
}

DomainSpec DomainSpec::from_rationals(int n, const std::vector<Rational>& values) {
  if (static_cast<int>(values.size()) > kMaxJet) throw ParameterError("jet too long");
  DomainSpec d{n, {}};
  for (const Rational& v : values) d.jet.emplace_back(v);
  d.validate();
  return d;
}

DomainSpec DomainSpec::halfspace(int n) { return from_rationals(n, {}); }

DomainSpec DomainSpec::ball(int n, const Rational& radius, int length) {
  if (radius <= 0) throw ParameterError("ball radius must be positive");
  // Phi(s) = R - sqrt(R^2 - s): Phi^(k)(0) = (2k-3)!! / (2^k R^(2k-1)).
  std::vector<Rational> v;
  Rational dfact = 1;
  for (int k = 1; k <= length; ++k) {
    if (k >= 2) dfact *= 2 * k - 3;
    v.push_back(dfact / (power(Rational(2), k) * power(radius, 2 * k - 1)));
  }
  return from_rationals(n, v);
}

void DomainSpec::validate() const {
  if (n < 2 || n > kMaxDimension) throw ParameterError("dimension n must lie in [2, " + std::to_string(kMaxDimension) + "]");
  if (static_cast<int>(jet.size()) > kMaxJet) throw ParameterError("jet too long");
}

bool DomainSpec::is_symbolic() const {
  for (const JetPoly& a : jet)
    if (!a.is_constant()) return true;
  return false;
}

std::string DomainSpec::describe() const {
  std::string s = "n=" + std::to_string(n) + " jet=[";
  for (std::size_t k = 0; k < jet.size(); ++k) s += (k ? ", " : "") + jet[k].to_string();
  return s + "]";
}

BoundaryGeometry boundary_geometry(const DomainSpec& dom, int cap) {
  dom.validate();
  const int n = dom.n;
  const int d = n - 1;
  BoundaryGeometry g;
  // phi is built two orders higher so that its Laplacian is exact to cap.
  SymbolSeries r2(n, cap + 2);
  for (int j = 0; j < d; ++j) {
    TermKey k;
    k.xp[j] = 2;
    r2.add(k, JetCoeff(1));
  }
  g.phi = SymbolSeries(n, cap + 2);
  SymbolSeries pw = SymbolSeries::constant(n, cap + 2, JetCoeff(1));
  for (int k = 1; 2 * k <= cap + 2; ++k) {
    pw = pw * r2;
    if (k - 1 < static_cast<int>(dom.jet.size())) g.phi += pw * JetCoeff(dom.jet[k - 1] * (Rational(1) / factorial(k)));
  }
  g.laplacian = SymbolSeries(n, cap);
  g.grad_sq = SymbolSeries(n, cap);
  g.xi_dot_grad = SymbolSeries(n, cap);
  for (int j = 0; j < d; ++j) {
    g.grad.push_back(d_xp(g.phi, j));
    g.laplacian += d_xp(g.grad[j], j);
    g.grad_sq += (g.grad[j] * g.grad[j]).with_cap(cap);
    TermKey xi;
    xi.xi[j] = 1;
    g.xi_dot_grad += SymbolSeries::monomial(n, cap, xi, JetCoeff(1)) * g.grad[j];
  }
  g.inv_area = series_power(g.grad_sq, Rational(-1, 2));
  return g;
}

}  // namespace harmkern
