#include "harmkern/poisson_recursion.hpp"

#include "harmkern/errors.hpp"

namespace harmkern {

namespace {

TermKey w_power(int p) {
  TermKey k;
  k.w = p;
  return k;
}

}  // namespace

EtaExpansion eta_expansion(const DomainSpec& dom, int cap) {
  const int n = dom.n;
  BoundaryGeometry g = boundary_geometry(dom, cap);
  EtaExpansion e;
  e.denom = series_power(g.grad_sq, Rational(-1));
  // sqrt(D) = |xi| (1 + b - a^2/|xi|^2)^{1/2}
  SymbolSeries a2 = (g.xi_dot_grad * g.xi_dot_grad).shifted(-2, 0, 0);
  SymbolSeries u = g.grad_sq - a2;
  SymbolSeries sqrt_d = SymbolSeries::monomial(n, cap, w_power(1), JetCoeff(1)) * series_power(u, Rational(1, 2));
  e.upsilon = (sqrt_d * e.denom) * Rational(2);
  SymbolSeries i_eta = (g.xi_dot_grad * JetCoeff::imaginary(JetPoly(1)) - sqrt_d) * e.denom;
  e.delta_eta = i_eta + SymbolSeries::monomial(n, cap, w_power(1), JetCoeff(1));
  return e;
}

SymbolSeries solve_M0(const SymbolSeries& rhs) {
  if (!rhs.exp_xn()) throw KindError("solve_M0 expects exp(-x_n|xi|) terms");
  SymbolSeries r(rhs.n(), rhs.cap(), true, rhs.exp_yn());
  for (const auto& [key, c] : rhs.terms()) {
    const int q = key.xn;
    // Q = sum_k q!/(q-k)! x^(q-k) / (2|xi|)^(k+1), result = int_0^x Q.
    for (int k = 0; k <= q; ++k) {
      const int e = q - k;
      Rational coef = factorial(q) / factorial(e) / power(Rational(2), k + 1) / (e + 1);
      TermKey t = key;
      t.w -= k + 1;
      t.xn = e + 1;
      r.add(t, c * coef);
    }
  }
  return r;
}

PoissonOperators::PoissonOperators(const DomainSpec& dom, int cap)
    : n_(dom.n), cap_(cap), geo_(boundary_geometry(dom, cap)) {}

SymbolSeries PoissonOperators::apply_M1(const SymbolSeries& g) const {
  SymbolSeries dg = d_xn(g);
  return (geo_.grad_sq * d_xn(dg)) * Rational(-1) + (geo_.xi_dot_grad * dg) * JetCoeff::imaginary(JetPoly(2));
}

SymbolSeries PoissonOperators::apply_M(const SymbolSeries& g) const {
  SymbolSeries m0 = d_xn(d_xn(g)) * Rational(-1) + g.shifted(2, 0, 0);
  return m0 + apply_M1(g);
}

SymbolSeries PoissonOperators::apply_R(const SymbolSeries& g) const {
  SymbolSeries dg = d_xn(g);
  SymbolSeries out = (geo_.laplacian * dg) * Rational(-1);
  for (int j = 0; j < n_ - 1; ++j) {
    TermKey xi;
    xi.xi[j] = 1;
    out += (geo_.grad[j] * d_xp(dg, j)) * Rational(-2);
    out += (SymbolSeries::monomial(n_, cap_, xi, JetCoeff(1)) * d_xp(g, j)) * JetCoeff::imaginary(JetPoly(2));
  }
  return out;
}

SymbolSeries PoissonOperators::apply_Z(const SymbolSeries& g) const {
  SymbolSeries out(n_, g.cap() - 2, g.exp_xn(), g.exp_yn());
  for (int j = 0; j < n_ - 1; ++j) out += d_xp(d_xp(g, j), j);
  return out;
}

int default_weight(int N) { return 2 * N; }

BoundarySymbol compute_poisson_symbols(const DomainSpec& dom, int N, int W) {
  dom.validate();
  if (N < 0) throw ParameterError("number of grades must be non-negative");
  if (W < N)
    throw TruncationError("weight cap W=" + std::to_string(W) + " is insufficient for N=" + std::to_string(N) +
                          " grades (need W >= N)");
  const int n = dom.n;
  PoissonOperators ops(dom, W);
  BoundarySymbol out{SymbolKind::Poisson, n, 0, {}};
  for (int j = 0; j <= N; ++j) {
    const int cap = W - j;
    SymbolSeries rhs(n, cap, true);
    if (j >= 1) rhs += ops.apply_R(out.grades[j - 1]);
    if (j >= 2) rhs += ops.apply_Z(out.grades[j - 2]);
    SymbolSeries k(n, cap, true);
    if (j == 0) k.add(TermKey{}, JetCoeff(1));
    // M1 raises x'-weight, so each layer only sees lower layers of k.
    for (int wt = (j == 0 ? 1 : 0); wt <= cap; ++wt) {
      SymbolSeries layer = rhs.weight_part(wt) - ops.apply_M1(k).weight_part(wt);
      k += solve_M0(layer);
    }
    out.grades.push_back(std::move(k));
  }
  return out;
}

}  // namespace harmkern
