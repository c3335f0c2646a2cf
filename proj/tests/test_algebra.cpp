#include <doctest.h>

#include <cmath>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "harmkern/errors.hpp"
#include "harmkern/io.hpp"
#include "harmkern/jet_poly.hpp"
#include "harmkern/rational.hpp"
#include "harmkern/symbol.hpp"

using namespace harmkern;

namespace {

TermKey key(int w, int xn = 0, int yn = 0) {
  TermKey k;
  k.w = w;
  k.xn = xn;
  k.yn = yn;
  return k;
}

TermKey xi_key(int i, int e, int w = 0) {
  TermKey k;
  k.xi[i] = static_cast<std::int8_t>(e);
  k.w = w;
  return k;
}

TermKey xp_key(int i, int e, int w = 0) {
  TermKey k;
  k.xp[i] = static_cast<std::int8_t>(e);
  k.w = w;
  return k;
}

JetPoly a(int k) { return JetPoly::variable(k); }

// A Psdo symbol of order `order` with x'-dependent grades, n = 3.
BoundarySymbol sample_psdo(int order, int depth, int cap, int seed) {
  BoundarySymbol s{SymbolKind::Psdo, 3, order, {}};
  for (int j = 0; j <= depth; ++j) {
    SymbolSeries g(3, cap - j);
    g.add(key(order - j), JetCoeff(Rational(seed + j + 1)));
    TermKey t = xp_key(0, 1, order - j - 1);
    t.xi[0] = 1;
    g.add(t, JetCoeff(a(1) * Rational(seed + 2), JetPoly(Rational(j))));
    TermKey u = xp_key(1, 2, order - j);
    g.add(u, JetCoeff(a(1) * a(1) * Rational(-1, seed + 1)));
    TermKey v = xi_key(1, 1, order - j - 1);
    v.xp[1] = 1;
    g.add(v, JetCoeff::imaginary(a(2)));
    s.grades.push_back(g);
  }
  return s;
}

}  // namespace

TEST_CASE("rationals parse exactly and reject decimals") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(to_string(Rational(-4, 6)) == "-2/3");
  CHECK_THROWS_AS(parse_rational("0.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1e3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK(binomial(Rational(1, 2), 2) == Rational(-1, 8));
  CHECK(pochhammer(Rational(3, 2), 3) == Rational(105, 8));
  CHECK(factorial(6) == 720);
}

TEST_CASE("jet polynomials form a commutative ring") {
  JetPoly p = a(1) * Rational(3) - a(2) * a(1);
  JetPoly q = a(3) + JetPoly(Rational(1, 2));
  JetPoly r = a(1) * a(1) - JetPoly(2);
  CHECK(p * q == q * p);
  CHECK((p * q) * r == p * (q * r));
  CHECK(p * (q + r) == p * q + p * r);
  CHECK((p - p).is_zero());
  CHECK((a(1) * a(2)).homogeneous_of_weight(4));
  CHECK_FALSE((a(1) + a(2)).homogeneous_of_weight(1));
  std::vector<JetPoly> sub{JetPoly(2), a(1)};
  CHECK((a(1) * a(2)).substitute(sub) == a(1) * Rational(2));
}

TEST_CASE("jet polynomial text round-trips") {
  for (const char* s : {"1/2*a2 - a1^3", "-3*a1^2", "5/4", "a1*a3^2 + 7"}) {
    JetPoly p = parse_jet_poly(s);
    CHECK(parse_jet_poly(p.to_string()) == p);
  }
  CHECK(parse_jet_poly("1/2*a2 - a1^3") == a(2) * Rational(1, 2) - a(1) * a(1) * a(1));
  CHECK(jet_poly_from_json(to_json(parse_jet_poly("2*a1 - 3/5"))) == parse_jet_poly("2*a1 - 3/5"));
  CHECK_THROWS(parse_jet_poly("0.5*a1"));
}

TEST_CASE("canonical form lowers the last frequency to exponent one") {
  // xi_2^3 = xi_2 (|xi|^2 - xi_1^2) for n = 3.
  SymbolSeries s = SymbolSeries::monomial(3, 0, xi_key(1, 3), JetCoeff(1));
  CHECK(s.size() == 2);
  CHECK(s.coefficient(xi_key(1, 1, 2)) == JetCoeff(1));
  TermKey mixed = xi_key(1, 1);
  mixed.xi[0] = 2;
  CHECK(s.coefficient(mixed) == JetCoeff(-1));
  std::vector<double> xi{3.0, 4.0}, none{0.0, 0.0};
  CHECK(s.evaluate({}, none, xi, 0.0, 0.0).real() == doctest::Approx(64.0));
  CHECK(canonicalize({JetCoeff(1), xi_key(1, 1)}, 3).size() == 1);
  // n = 4: xi_3^4 = (|xi|^2 - xi_1^2 - xi_2^2)^2 has six terms.
  CHECK(canonicalize({JetCoeff(1), xi_key(2, 4)}, 4).size() == 6);
}

TEST_CASE("frequency derivative of the Poisson exponential") {
  SymbolSeries e = SymbolSeries::monomial(3, 0, key(0), JetCoeff(1)).with_exp(true, false);
  SymbolSeries de = d_xi(e, 0);
  // -x_n xi_1 / |xi| exp(-x_n |xi|).
  TermKey k = xi_key(0, 1, -1);
  k.xn = 1;
  CHECK(de.size() == 1);
  CHECK(de.coefficient(k) == JetCoeff(-1));
  const double xn = 0.3, hstep = 1e-6;
  std::vector<double> xp{0.0, 0.0};
  auto f = [&](double x1) { return std::exp(-xn * std::hypot(x1, 2.0)); };
  std::vector<double> xi{1.0, 2.0};
  const double fd = (f(1.0 + hstep) - f(1.0 - hstep)) / (2 * hstep);
  CHECK(de.evaluate({}, xp, xi, xn, 0.0).real() == doctest::Approx(fd).epsilon(1e-8));
  CHECK(big_d_xi(e, 0) == de * JetCoeff::imaginary(JetPoly(-1)));
}

TEST_CASE("derivatives obey the product rule") {
  BoundarySymbol s = sample_psdo(1, 0, 3, 1);
  BoundarySymbol t = sample_psdo(-1, 0, 3, 4);
  const SymbolSeries& f = s.grades[0];
  const SymbolSeries& g = t.grades[0];
  for (int j = 0; j < 2; ++j) {
    CHECK(d_xi(f * g, j) == d_xi(f, j) * g + f * d_xi(g, j));
    CHECK(d_xp(f * g, j).with_cap(2) == (d_xp(f, j) * g + f * d_xp(g, j)).with_cap(2));
  }
}

TEST_CASE("derive shifts grades and orders") {
  BoundarySymbol s = sample_psdo(1, 2, 4, 0);
  BoundarySymbol dx = derive(s, DerivVar::XPrime, 0);
  CHECK(dx.order == s.order + 1);
  CHECK(dx.grades.size() == s.grades.size());
  CHECK(dx.grades[1] == d_xp(s.grades[0], 0));
  CHECK(dx.grades[0].is_zero());
  BoundarySymbol dxi = derive(s, DerivVar::Xi, 1);
  CHECK(dxi.order == s.order - 1);
  CHECK(dxi.grades[2] == d_xi(s.grades[2], 1));
  CHECK(check_homogeneity(derive(BoundarySymbol{SymbolKind::Poisson, 3, 0, {SymbolSeries::constant(3, 0, 1).with_exp(true, false)}},
                                 DerivVar::XN)) == "");
  CHECK_THROWS_AS(derive(s, DerivVar::XN), KindError);
  CHECK_THROWS_AS(derive(s, DerivVar::YN), KindError);
  CHECK_THROWS_AS(derive(s, DerivVar::Xi, 2), ParameterError);
}

TEST_CASE("symbol series satisfy ring laws") {
  BoundarySymbol s = sample_psdo(1, 0, 3, 0);
  BoundarySymbol t = sample_psdo(0, 0, 3, 2);
  BoundarySymbol u = sample_psdo(-2, 0, 3, 5);
  const auto& f = s.grades[0];
  const auto& g = t.grades[0];
  const auto& h = u.grades[0];
  CHECK(f * g == g * f);
  CHECK((f * g) * h == f * (g * h));
  CHECK(f * (g + h) == f * g + f * h);
  CHECK((f - f).is_zero());
  CHECK(f.conj().conj() == f);
  CHECK(series_inverse(f) * f == SymbolSeries::constant(3, 3, 1));
}

TEST_CASE("composition of boundary symbols") {
  BoundarySymbol w1{SymbolKind::Psdo, 3, 1, {SymbolSeries::monomial(3, 0, key(1), JetCoeff(1))}};
  BoundarySymbol sq = leibniz_compose(w1, w1, 0);
  CHECK(sq.order == 2);
  CHECK(sq.grades[0] == SymbolSeries::monomial(3, 0, key(2), JetCoeff(1)));

  BoundarySymbol x1{SymbolKind::Psdo, 3, 0, {SymbolSeries::monomial(3, 1, xp_key(0, 1), JetCoeff(1)), SymbolSeries(3, 0)}};
  BoundarySymbol xi1{SymbolKind::Psdo, 3, 1, {SymbolSeries::monomial(3, 1, xi_key(0, 1), JetCoeff(1)), SymbolSeries(3, 0)}};
  // xi_1 ∘ x_1 = x_1 xi_1 - i at grade 1; x_1 ∘ xi_1 has no correction.
  BoundarySymbol ab = leibniz_compose(xi1, x1, 1);
  BoundarySymbol ba = leibniz_compose(x1, xi1, 1);
  CHECK(ab.grades[1] == SymbolSeries::constant(3, 0, JetCoeff::imaginary(JetPoly(-1))));
  CHECK(ba.grades[1].is_zero());

  BoundarySymbol tr{SymbolKind::Trace, 3, 0, {SymbolSeries::constant(3, 0, 1).with_exp(true, false)}};
  BoundarySymbol po{SymbolKind::Poisson, 3, 0, {SymbolSeries::constant(3, 0, 1).with_exp(true, false)}};
  CHECK_THROWS_AS(leibniz_compose(tr, w1, 0), KindError);
  CHECK_THROWS_AS(leibniz_compose(po, po, 0), KindError);
  CHECK_THROWS_AS(leibniz_compose(w1, w1, 1), TruncationError);
  CHECK(leibniz_compose(tr, po, 0).kind == SymbolKind::Psdo);
  CHECK(leibniz_compose(po, tr, 0).kind == SymbolKind::Green);
}

TEST_CASE("x_n integral of trace and Poisson factors") {
  const double w = 1.7;
  boost::math::quadrature::exp_sinh<double> quad;
  for (int q : {0, 1, 3}) {
    SymbolSeries t = SymbolSeries::constant(3, 0, 1).with_exp(true, false);
    SymbolSeries k = SymbolSeries::monomial(3, 0, key(0, q), JetCoeff(1)).with_exp(true, false);
    SymbolSeries r = xn_integral_compose(t, k);
    CHECK(r.size() == 1);
    CHECK(r.coefficient(key(-q - 1)) == JetCoeff(factorial(q) / power(Rational(2), q + 1)));
    const double exact = quad.integrate([&](double x) { return x > 300 ? 0.0 : std::pow(x, q) * std::exp(-2 * x * w); });
    std::vector<double> z{w, 0.0};
    CHECK(r.evaluate({}, z, z, 0.0, 0.0).real() == doctest::Approx(exact).epsilon(1e-12));
  }
  SymbolSeries plain = SymbolSeries::constant(3, 0, 1);
  CHECK_THROWS_AS(xn_integral_compose(plain, plain), KindError);
}

TEST_CASE("composition is associative") {
  BoundarySymbol a1 = sample_psdo(1, 2, 4, 0);
  BoundarySymbol a2 = sample_psdo(0, 2, 4, 3);
  BoundarySymbol a3 = sample_psdo(-1, 2, 4, 6);
  BoundarySymbol left = leibniz_compose(leibniz_compose(a1, a2, 2), a3, 2);
  BoundarySymbol right = leibniz_compose(a1, leibniz_compose(a2, a3, 2), 2);
  for (int m = 0; m <= 2; ++m) CHECK(left.grades[m] == right.grades[m]);
}

TEST_CASE("adjoint is an involution") {
  BoundarySymbol s = sample_psdo(1, 2, 4, 2);
  BoundarySymbol back = adjoint_symbol(adjoint_symbol(s, 2), 2);
  for (int m = 0; m <= 2; ++m) CHECK(back.grades[m] == s.grades[m]);
  BoundarySymbol po{SymbolKind::Poisson, 3, 0, {SymbolSeries::constant(3, 0, 1).with_exp(true, false)}};
  CHECK(adjoint_symbol(po, 0).kind == SymbolKind::Trace);
}

TEST_CASE("homogeneity under frequency scaling") {
  // a1 x_n^2 xi_1 exp(-x_n|xi|) has degree -1 in (xi, 1/x_n) and jet weight 1.
  TermKey k = xi_key(0, 1, 0);
  k.xn = 2;
  BoundarySymbol s{SymbolKind::Poisson, 3, 0, {SymbolSeries(3, 0, true), SymbolSeries::monomial(3, 0, k, JetCoeff(a(1))).with_exp(true, false)}};
  CHECK(check_homogeneity(s) == "");
  std::vector<double> xp{0.0, 0.0}, jet{1.0};
  for (double lam : {2.0, 3.0}) {
    std::vector<double> xi{0.4, -1.1}, xi_l{0.4 * lam, -1.1 * lam};
    auto v = s.grades[1].evaluate(jet, xp, xi, 0.7, 0.0).real();
    auto vl = s.grades[1].evaluate(jet, xp, xi_l, 0.7 / lam, 0.0).real();
    CHECK(vl == doctest::Approx(v / lam).epsilon(1e-12));
  }
  BoundarySymbol bad = s;
  bad.grades[1].add(key(0, 0), JetCoeff(a(1)));
  CHECK(check_homogeneity(bad) != "");
}

TEST_CASE("symbol JSON round-trips") {
  BoundarySymbol s = sample_psdo(1, 2, 3, 1);
  CHECK(symbol_from_json(to_json(s)) == s);
  Json j = to_json(s);
  j["kind"] = "nonsense";
  CHECK_THROWS(symbol_from_json(j));
}
