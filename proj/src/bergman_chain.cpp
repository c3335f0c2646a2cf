#include "harmkern/bergman_chain.hpp"

#include "harmkern/errors.hpp"
#include "harmkern/poisson_recursion.hpp"

namespace harmkern {

namespace {

BoundarySymbol left_multiply(BoundarySymbol s, const SymbolSeries& f) {
  for (auto& g : s.grades) g = f * g;
  return s;
}

void require_kind(const BoundarySymbol& s, SymbolKind kind, const char* what) {
  if (s.kind != kind) throw KindError(std::string(what) + " expects a " + std::string(to_string(kind)) + " symbol");
}

SymbolSeries weight_factor(const DomainSpec& dom, const WeightSpec& w, int cap) {
  // e^{g(x') - g0} as a Taylor series.
  SymbolSeries r2(dom.n, cap);
  for (int j = 0; j < dom.n - 1; ++j) {
    TermKey k;
    k.xp[j] = 2;
    r2.add(k, JetCoeff(1));
  }
  SymbolSeries u(dom.n, cap);
  SymbolSeries pw = SymbolSeries::constant(dom.n, cap, JetCoeff(1));
  for (int k = 1; k < static_cast<int>(w.g_jet.size()) && 2 * k <= cap; ++k) {
    pw = pw * r2;
    u += pw * (w.g_jet[k] / factorial(k));
  }
  return series_exp(u);
}

}  // namespace

PsdoExpansion lambda_symbol(const BoundarySymbol& k, const DomainSpec& dom, int depth,
                            const std::optional<WeightSpec>& weight, BoundaryMeasure measure) {
  require_kind(k, SymbolKind::Poisson, "lambda_symbol");
  if (depth > k.depth()) throw TruncationError("lambda depth exceeds Poisson depth");
  const int cap = k.grades[0].cap();
  BoundarySymbol kstar = adjoint_symbol(k, depth);
  BoundarySymbol kw = k;
  Rational alpha = 0;
  Rational g0 = 0;
  if (weight) {
    if (weight->alpha <= -1) throw ParameterError("weight exponent alpha must exceed -1");
    alpha = weight->alpha;
    g0 = weight->g0();
    kw = left_multiply(k, weight_factor(dom, *weight, cap));
  }
  BoundarySymbol s = leibniz_compose(kstar, kw, depth, alpha);
  s.order = -1;
  if (measure == BoundaryMeasure::Surface) s = left_multiply(s, boundary_geometry(dom, cap).inv_area);
  return {s, alpha, g0, measure};
}

PsdoExpansion invert_psdo(const PsdoExpansion& s, int depth) {
  require_kind(s.symbol, SymbolKind::Psdo, "invert_psdo");
  if (s.weighted()) throw ParameterError("invert_psdo handles unweighted symbols only");
  if (depth > s.symbol.depth()) throw TruncationError("inversion depth exceeds symbol depth");
  const int n = s.symbol.n;
  const int dim = n - 1;
  const auto& sg = s.symbol.grades;
  BoundarySymbol p{SymbolKind::Psdo, n, -s.symbol.order, {}};
  p.grades.push_back(series_inverse(sg[0]));
  const SymbolSeries lead = p.grades[0];
  for (int m = 1; m <= depth; ++m) {
    SymbolSeries acc(n, sg[0].cap() - m);
    for (int j = 0; j < m; ++j)
      for (int k = 0; j + k <= m; ++k)
        for (const MultiIndex& al : multi_indices(dim, m - j - k))
          acc += (big_d_xi(p.grades[j], al) * d_xp(sg[k], al)) * (Rational(1) / multi_factorial(al));
    p.grades.push_back((lead * acc) * Rational(-1));
  }
  return {p, 0, 0, s.measure};
}

BoundarySymbol boundary_adjoint(const BoundarySymbol& k, const DomainSpec& dom, int depth, BoundaryMeasure measure) {
  BoundarySymbol kstar = adjoint_symbol(k, depth);
  if (measure == BoundaryMeasure::Surface)
    kstar = left_multiply(kstar, boundary_geometry(dom, k.grades[0].cap()).inv_area);
  return kstar;
}

BoundarySymbol potential_symbol(const BoundarySymbol& k, const PsdoExpansion& p, int depth) {
  require_kind(k, SymbolKind::Poisson, "potential_symbol");
  if (p.weighted()) throw ParameterError("potential_symbol needs an unweighted inverse");
  return leibniz_compose(k, p.symbol, depth);
}

BoundarySymbol bergman_green_symbol(const BoundarySymbol& k, const PsdoExpansion& p, const DomainSpec& dom,
                                    int depth) {
  BoundarySymbol v = potential_symbol(k, p, depth);
  BoundarySymbol kstar = boundary_adjoint(k, dom, depth, p.measure);
  return leibniz_compose(v, kstar, depth);
}

BergmanChain bergman_chain(const DomainSpec& dom, int N, int W, BoundaryMeasure measure) {
  BergmanChain c;
  c.k = compute_poisson_symbols(dom, N, W);
  c.kstar = boundary_adjoint(c.k, dom, N, measure);
  c.s = lambda_symbol(c.k, dom, N, std::nullopt, measure);
  c.p = invert_psdo(c.s, N);
  c.g = bergman_green_symbol(c.k, c.p, dom, N);
  return c;
}

SobolevCheck sobolev_identity_check(const BoundarySymbol& k, const DomainSpec& dom) {
  require_kind(k, SymbolKind::Poisson, "sobolev_identity_check");
  const int n = dom.n;
  const SymbolSeries& k0 = k.grades[0];
  const int cap = k0.cap();
  BoundaryGeometry geo = boundary_geometry(dom, cap);
  SymbolSeries k0bar = k0.conj();
  SobolevCheck out;
  out.sigma_lambda = geo.inv_area * xn_integral_compose(k0bar, k0);
  SymbolSeries inv_lambda = series_inverse(out.sigma_lambda);
  SymbolSeries dk0 = d_xn(k0);
  for (int j = 0; j < n; ++j) {
    SymbolSeries dj = dk0;
    if (j < n - 1) {
      TermKey xi;
      xi.xi[j] = 1;
      dj = SymbolSeries::monomial(n, cap, xi, JetCoeff::imaginary(JetPoly(1))) * k0 - geo.grad[j] * dk0;
    }
    SymbolSeries kd = geo.inv_area * xn_integral_compose(k0bar, dj);
    out.sigma_r.push_back(inv_lambda * kd);
  }
  out.sum_squares = SymbolSeries(n, cap);
  for (const SymbolSeries& r : out.sigma_r) out.sum_squares += r * r.conj();
  out.target = (inv_lambda * inv_lambda) * Rational(1, 2);
  out.sigma_t = out.sigma_lambda * out.sum_squares;
  out.sum_identity = out.sum_squares == out.target;
  out.t_identity = out.sigma_t == inv_lambda * Rational(1, 2);
  return out;
}

}  // namespace harmkern
