// Acceptance suite: one PASS/FAIL line per criterion, with wall time.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "harmkern/bergman_chain.hpp"
#include "harmkern/kernel_transform.hpp"
#include "harmkern/numeric_oracle.hpp"
#include "harmkern/poisson_recursion.hpp"
#include "harmkern/reference_kernels.hpp"

using namespace harmkern;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double budget;  // seconds; 0 means none
  std::function<Outcome()> run;
};

// Univariate polynomial in t with jet-polynomial coefficients.
using TPoly = std::map<int, JetPoly>;

TPoly tp(std::initializer_list<std::pair<int, const char*>> terms) {
  TPoly p;
  for (const auto& [e, c] : terms) p[e] += parse_jet_poly(c);
  return p;
}

TPoly mul(const TPoly& a, const TPoly& b) {
  TPoly r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) r[ea + eb] += ca * cb;
  std::erase_if(r, [](const auto& kv) { return kv.second.is_zero(); });
  return r;
}

TPoly scale(TPoly a, const JetPoly& c) {
  for (auto& [e, v] : a) v = v * c;
  std::erase_if(a, [](const auto& kv) { return kv.second.is_zero(); });
  return a;
}

KernelCoeff to_coeff(const TPoly& p) {
  KernelCoeff k;
  for (const auto& [e, c] : p) k.add(e, 0, c);
  return k;
}

using CentreTerm = std::tuple<const char*, int, int>;  // coefficient, |xi| power, x_n power

SymbolSeries centre_series(int n, bool exn, const std::vector<CentreTerm>& terms) {
  SymbolSeries s(n, 0, exn, false);
  for (const auto& [c, w, xn] : terms) {
    TermKey k;
    k.w = w;
    k.xn = xn;
    s.add(k, JetCoeff(parse_jet_poly(c)));
  }
  return s;
}

std::string describe(const KernelCoeff& c) { return c.to_string(RadialVar::X); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  const DomainSpec dom = DomainSpec::symbolic(3, 3);
  BoundarySymbol k = compute_poisson_symbols(dom, 3, default_weight(3));
  // Published grades at x' = 0, n = 3. The x_n^5 |xi|^2 entry of k_{-3} is
  // printed with Phi'(0)^2; the grade-3 weight forces Phi'(0)^3.
  const std::vector<std::vector<CentreTerm>> shown = {
      {{"1", 0, 0}},
      {{"a1", 0, 1}, {"-a1", 1, 2}},
      {{"1/2*a1^2", -1, 1}, {"5/2*a1^2", 0, 2}, {"-3*a1^2", 1, 3}, {"1/2*a1^2", 2, 4}},
      {{"a1^3 - 1/2*a2", -2, 1},
       {"2*a1^3 - 1/2*a2", -1, 2},
       {"7*a1^3 - a2", 0, 3},
       {"-19/2*a1^3 + 1/2*a2", 1, 4},
       {"5/2*a1^3", 2, 5},
       {"-1/6*a1^3", 3, 6}}};
  for (int j = 0; j <= 3; ++j) {
    SymbolSeries want = centre_series(3, true, shown[j]);
    SymbolSeries got = k.grades[j].centre();
    if (!(got == want)) return {false, "grade " + std::to_string(j) + ": got " + got.to_string()};
  }
  // The printed a1^2 variant breaks the scaling invariant every grade must satisfy.
  BoundarySymbol printed{SymbolKind::Poisson, 3, 0, {}};
  for (int j = 0; j <= 3; ++j) printed.grades.push_back(centre_series(3, true, shown[j]));
  TermKey t5;
  t5.w = 2;
  t5.xn = 5;
  printed.grades[3].add(t5, JetCoeff(parse_jet_poly("-5/2*a1^3 + 5/2*a1^2")));
  if (check_homogeneity(printed).empty()) return {false, "printed a1^2 form unexpectedly homogeneous"};
  if (!check_homogeneity(k).empty()) return {false, "computed grades not homogeneous"};
  return {true, "16 centre coefficients exact; printed 5/2*a1^2 (x_n^5|xi|^2) fails homogeneity, 5/2*a1^3 used"};
}

Outcome criterion2() {
  KernelExpansion e = poisson_kernel_expansion(DomainSpec::symbolic(3, 3), 3);
  // c_3 = 1/(2 pi): divide every published term by c_3.
  const PiRational c3 = dimension_constant(3);
  if (!(c3.q == Rational(1, 2) && c3.half_pi_power == -2)) return {false, "c_3 is not 1/(2 pi)"};
  const JetPoly a1 = JetPoly::variable(1), a2 = JetPoly::variable(2);
  const JetPoly half(Rational(1, 2));
  struct Want {
    int power;
    bool log;
    TPoly poly;
  };
  const std::vector<Want> want = {
      {-2, false, tp({{1, "1"}})},
      {-1, false, scale(mul(tp({{2, "1"}}), tp({{0, "2"}, {2, "-3"}})), a1)},
      {0, false, scale(mul(mul(tp({{1, "1"}}), tp({{0, "1"}, {2, "-1"}})), tp({{0, "1"}, {2, "12"}, {4, "-15"}})), a1 * a1 * half)},
      {1, true, scale(tp({{1, "1"}}), (a2 - a1 * a1 * a1 * JetPoly(2)) * half)}};
  for (const Want& w : want) {
    KernelCoeff got = e.coefficient(w.power, w.log);
    if (!(got == to_coeff(w.poly)))
      return {false, "power " + std::to_string(w.power) + (w.log ? " log" : "") + ": got " + describe(got) + ", want " +
                         describe(to_coeff(w.poly))};
    if (!w.log && !e.power_complete(w.power)) return {false, "non-polynomial remainder at power " + std::to_string(w.power)};
  }
  auto lc = log_coefficient(e);
  if (!lc || lc->power != 1) return {false, "lowest log term is not at |x| log|x|"};
  return {true, "r^-2, r^-1, r^0 and r log r coefficients equal the expanded closed form"};
}

Outcome criterion3() {
  const DomainSpec dom = DomainSpec::symbolic(3, 3);
  BergmanChain ch = bergman_chain(dom, 3, default_weight(3));
  const std::vector<std::vector<CentreTerm>> s = {{{"1/2", -1, 0}}, {{"-a1", -2, 0}}, {{"5/4*a1^2", -3, 0}}, {{"5/2*a2", -4, 0}}};
  const std::vector<std::vector<CentreTerm>> p = {{{"2", 1, 0}}, {{"4*a1", 0, 0}}, {{"-a1^2", -1, 0}}, {{"2*a2 - 4*a1^3", -2, 0}}};
  for (int m = 0; m <= 3; ++m) {
    if (!(ch.s.symbol.grades[m].centre() == centre_series(3, false, s[m])))
      return {false, "s grade " + std::to_string(m) + ": " + ch.s.symbol.grades[m].centre().to_string()};
    if (!(ch.p.symbol.grades[m].centre() == centre_series(3, false, p[m])))
      return {false, "p grade " + std::to_string(m) + ": " + ch.p.symbol.grades[m].centre().to_string()};
  }
  KernelExpansion b = lambda_inverse_boundary_kernel(ch.p);
  const std::vector<std::tuple<int, bool, const char*>> kv = {{-3, false, "-2"}, {-1, false, "-a1^2"}, {0, true, "-(2*a2 - 4*a1^3)"}};
  if (b.terms.size() != kv.size()) return {false, "boundary kernel has " + std::to_string(b.terms.size()) + " terms"};
  for (const auto& [pw, lg, c] : kv) {
    JetPoly want = std::string(c) == "-(2*a2 - 4*a1^3)" ? -parse_jet_poly("2*a2 - 4*a1^3") : parse_jet_poly(c);
    KernelCoeff got = b.coefficient(pw, lg);
    if (!(got == KernelCoeff::monomial(0, 0, want))) return {false, "boundary kernel power " + std::to_string(pw) + ": " + describe(got)};
  }
  return {true, "s and p through the a2 grade; boundary kernel -2r^-3 - a1^2 r^-1 - (2a2-4a1^3) log r (units c_3)"};
}

Outcome criterion4() {
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> u(-0.6, 0.6), pos(0.02, 0.5);
  for (int n = 2; n <= 6; ++n) {
    KernelExpansion e = bergman_kernel_expansion(DomainSpec::symbolic(n, 2), 0);
    // 2 (n (u+v)^2 - 1) R^-n in units of c_n.
    KernelCoeff want;
    want.add(2, 0, JetPoly(2 * n));
    want.add(1, 1, JetPoly(4 * n));
    want.add(0, 2, JetPoly(2 * n));
    want.add(0, 0, JetPoly(-2));
    if (e.terms.size() != 1 || e.terms[0].power != -n || e.terms[0].log || !(e.terms[0].coeff == want))
      return {false, "n=" + std::to_string(n) + ": leading term " + e.terms[0].coeff.to_string(RadialVar::Green)};
    // Boundary trace: u = v = 0 leaves -2 c_n R^-n.
    auto it = e.terms[0].coeff.terms().find({0, 0});
    if (it == e.terms[0].coeff.terms().end() || !(it->second == JetPoly(-2))) return {false, "n=" + std::to_string(n) + ": trace"};
    // The half-space kernel is exactly this term.
    for (int i = 0; i < 5; ++i) {
      Point x(n), y(n);
      for (int k = 0; k < n - 1; ++k) x(k) = u(gen), y(k) = u(gen);
      x(n - 1) = pos(gen);
      y(n - 1) = pos(gen);
      Point yr = y;
      yr(n - 1) = -yr(n - 1);
      const double R = (x - yr).norm();
      const double val = e.evaluate({}, x(n - 1) / R, y(n - 1) / R, R);
      const double ref = eval_bergman_closed(ClosedDomain::Halfspace, x, y);
      if (std::abs(val - ref) > 1e-12 * std::abs(ref)) return {false, "n=" + std::to_string(n) + ": mismatch with closed form"};
    }
  }
  return {true, "n = 2..6: 2c_n(n(u+v)^2-1)R^-n exactly, trace -2c_n R^-n, equal to the half-space kernel at 25 points"};
}

Outcome criterion5() {
  std::vector<std::string> checked;
  auto no_logs = [&](const std::string& label, const DomainSpec& dom, bool boundary) -> std::optional<std::string> {
    if (auto l = log_coefficient(poisson_kernel_expansion(dom, 3))) return label + ": Poisson log " + describe(l->coeff);
    if (auto l = log_coefficient(bergman_kernel_expansion(dom, 3))) return label + ": Bergman log " + l->coeff.to_string(RadialVar::Green);
    if (boundary)
      if (auto l = log_coefficient(lambda_inverse_boundary_kernel(dom, 3))) return label + ": boundary log " + describe(l->coeff);
    checked.push_back(label);
    return std::nullopt;
  };
  if (auto f = no_logs("half-space", DomainSpec::halfspace(3), true)) return {false, *f};
  for (Rational R : {Rational(1), Rational(5, 2), Rational(1, 3)}) {
    DomainSpec ball = DomainSpec::ball(3, R, 3);
    // Phi(s) = R - sqrt(R^2 - s): a1 = 1/(2R), a2 = 1/(4R^3).
    if (!(ball.jet[0] == JetPoly(Rational(1) / (2 * R))) || !(ball.jet[1] == JetPoly(Rational(1) / (4 * R * R * R))))
      return {false, "ball jet for R=" + to_string(R)};
    if (auto f = no_logs("ball R=" + to_string(R), ball, true)) return {false, *f};
  }
  if (auto f = no_logs("n=2 symbolic", DomainSpec::symbolic(2, 3), false)) return {false, *f};
  // Control: a jet off the ball relation does produce a log term.
  DomainSpec off = DomainSpec::from_rationals(3, {Rational(1, 2), Rational(1, 2), Rational(0)});
  if (!log_coefficient(poisson_kernel_expansion(off, 3))) return {false, "control jet (1/2, 1/2) shows no log term"};
  std::string d = "no log terms for";
  for (const auto& c : checked) d += " [" + c + "]";
  return {true, d + "; control jet a1=a2=1/2 has one"};
}

Outcome criterion6() {
  for (int n : {3, 2, 4}) {
    const DomainSpec dom = DomainSpec::symbolic(n, 2);
    SobolevCheck sc = sobolev_identity_check(compute_poisson_symbols(dom, 0, 4), dom);
    if (!sc.sum_identity) return {false, "n=" + std::to_string(n) + ": sum of |sigma(R_j)|^2"};
    if (!sc.t_identity) return {false, "n=" + std::to_string(n) + ": sigma(T)"};
  }
  // Flat case by hand: sigma(Lambda) = 1/(2|xi|), sigma(R_j) = i xi_j, sigma(R_n) = -|xi|.
  const DomainSpec flat = DomainSpec::halfspace(3);
  SobolevCheck sc = sobolev_identity_check(compute_poisson_symbols(flat, 0, 2), flat);
  TermKey w1, wm1, x0;
  w1.w = 1;
  wm1.w = -1;
  x0.xi[0] = 1;
  if (!(sc.sigma_lambda == SymbolSeries::monomial(3, 2, wm1, JetCoeff(Rational(1, 2))))) return {false, "flat sigma(Lambda)"};
  if (!(sc.sigma_r[2] == SymbolSeries::monomial(3, 2, w1, JetCoeff(-1)))) return {false, "flat sigma(R_n)"};
  if (!(sc.sigma_r[0] == SymbolSeries::monomial(3, 2, x0, JetCoeff::imaginary(JetPoly(1))))) return {false, "flat sigma(R_1)"};
  return {true, "both identities exact as x'-Taylor series through weight 4 (n = 2, 3, 4, symbolic jet)"};
}

double cubic(const Point& y) { return y(0) * y(1) + y(2) * y(2) * y(2) - 1.5 * y(2) * (y(0) * y(0) + y(1) * y(1)); }

Outcome criterion7() {
  std::mt19937 gen(3);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> rad(0.0, 0.7);
  auto sample = [&] {
    Point p(3);
    for (int k = 0; k < 3; ++k) p(k) = g(gen);
    return Point(p.normalized() * rad(gen));
  };
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const Point x = sample(), y = sample();
    const double s = ball_spectral_bergman(3, 60, x, y), c = eval_bergman_closed(ClosedDomain::Ball, x, y);
    worst = std::max(worst, std::abs(s - c) / std::abs(c));
  }
  if (worst > 1e-6) return {false, "spectral vs closed relative error " + sci(worst)};
  // Reproduction of harmonic polynomials of degree <= 3 under ball quadrature.
  const std::vector<std::function<double(const Point&)>> polys = {
      [](const Point&) { return 1.0; },
      [](const Point& y) { return y(2); },
      [](const Point& y) { return y(0) * y(0) - y(1) * y(1); },
      [](const Point& y) { return y(0) * y(2); },
      cubic,
      [](const Point& y) { return y(0) * y(0) * y(0) - 3 * y(0) * y(1) * y(1); }};
  const BallQuadrature q = ball_quadrature(3, 40, 40);
  double repro = 0;
  for (int i = 0; i < 6; ++i) {
    const Point x = sample();
    std::vector<double> hv(q.points.size());
    for (std::size_t k = 0; k < q.points.size(); ++k) hv[k] = eval_bergman_closed(ClosedDomain::Ball, x, q.points[k]) * q.weights[k];
    for (const auto& f : polys) {
      double acc = 0;
      for (std::size_t k = 0; k < q.points.size(); ++k) acc += hv[k] * f(q.points[k]);
      repro = std::max(repro, std::abs(acc - f(x)));
    }
  }
  if (repro > 1e-4) return {false, "harmonic polynomial reproduction error " + sci(repro)};
  return {true, "20 pairs, max relative error " + sci(worst) + "; degree <= 3 reproduction error " + sci(repro)};
}

// Cutoff quadrature minus the closed transform, fitted by a smooth polynomial in (x_n, rho^2).
struct FamilyFit {
  double relative = 0;  // residual after smooth removal over max |numeric|
  double control = 0;   // same residual when the closed transform is not subtracted
};

FamilyFit family_fit(const std::function<double(double, double)>& numeric, const std::function<double(double, double)>& closed) {
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < 8; ++i)
    for (int k = 0; k < 8; ++k) pts.push_back({0.05 + 0.05 * i, 0.05 * k});
  std::vector<double> num(pts.size()), cl(pts.size());
  parallel_for(static_cast<int>(pts.size()), [&](int i) {
    num[i] = numeric(pts[i].first, pts[i].second);
    cl[i] = closed(pts[i].first, pts[i].second);
  });
  std::vector<std::pair<int, int>> mons;
  for (int a = 0; a <= 8; ++a)
    for (int b = 0; a + 2 * b <= 8; ++b) mons.push_back({a, b});
  Eigen::MatrixXd A(pts.size(), mons.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < mons.size(); ++j)
      A(i, j) = std::pow(pts[i].first, mons[j].first) * std::pow(pts[i].second, 2 * mons[j].second);
  auto residual = [&](const Eigen::VectorXd& y) {
    Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
    return (A * c - y).cwiseAbs().maxCoeff();
  };
  Eigen::VectorXd diff(pts.size()), raw(pts.size());
  double scale = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    diff(i) = num[i] - cl[i];
    raw(i) = num[i];
    scale = std::max(scale, std::abs(num[i]));
  }
  return {residual(diff) / scale, residual(raw) / scale};
}

Outcome criterion8() {
  const double c3 = dimension_constant_value(3);
  // Families (q, p) read off the n = 3 Poisson grades used in criterion 2, plus the
  // |xi|^p families behind the boundary kernel of criterion 3, taken off the boundary.
  std::set<std::pair<int, int>> poisson{{0, 1}, {0, 0}, {0, -1}, {0, -2}};
  BoundarySymbol k = compute_poisson_symbols(DomainSpec::symbolic(3, 3), 3, default_weight(3));
  for (const auto& g : k.grades) {
    const SymbolSeries c = g.centre();
    for (const auto& [key, coeff] : c.terms()) poisson.insert({key.xn, key.w});
  }
  double worst = 0, weakest_control = 1e300;
  int count = 0;
  for (auto [q, p] : poisson) {
    KernelExpansion e = radial_ift_term(q, p, 3);
    // The only non-polynomial regular part here is -log(1 + t) x_n^q at |xi|^-2.
    const bool log_rest = !e.remainders.empty();
    if (log_rest && p != -2) return {false, "unexpected remainder family q=" + std::to_string(q) + " p=" + std::to_string(p)};
    if (std::abs(p) <= 2 && q == 0) {
      KernelExpansion b = boundary_ift_term(p, 3);
      for (double rad : {0.1, 0.7})
        if (!log_rest && std::abs(b.evaluate({}, 0.0, 0.0, rad) - e.evaluate({}, 0.0, 0.0, rad)) > 1e-12 * std::abs(e.evaluate({}, 0.0, 0.0, rad)))
          return {false, "boundary family p=" + std::to_string(p) + " differs from the t = 0 trace"};
    }
    FamilyFit f = family_fit([&](double xn, double rho) { return radial_ift_numeric(q, p, 3, xn, rho); },
                             [&](double xn, double rho) {
                               const double r = std::hypot(xn, rho);
                               double v = e.evaluate({}, xn / r, 0.0, r);
                               if (log_rest) v -= c3 * std::log1p(xn / r) * std::pow(xn, q);
                               return v;
                             });
    worst = std::max(worst, f.relative);
    weakest_control = std::min(weakest_control, f.control);
    ++count;
  }
  // Green families of the criterion 4 leading term, |xi| e^{-(x_n+y_n)|xi|}, for n = 2..6.
  for (int n = 2; n <= 6; ++n) {
    KernelExpansion e = green_ift_term(0, 0, 1, n);
    const double yn = 0.03;
    FamilyFit f = family_fit([&](double xn, double rho) { return radial_ift_numeric(0, 1, n, xn + yn, rho); },
                             [&](double xn, double rho) {
                               const double R = std::hypot(xn + yn, rho);
                               return e.evaluate({}, xn / R, yn / R, R);
                             });
    worst = std::max(worst, f.relative);
    weakest_control = std::min(weakest_control, f.control);
    ++count;
  }
  if (worst > 1e-8) return {false, "worst relative residual " + sci(worst)};
  if (weakest_control < 1e-4) return {false, "control fit absorbed a singular part (" + sci(weakest_control) + ")"};
  return {true, std::to_string(count) + " families, worst relative residual " + sci(worst) + " (control without the transform: >= " +
                    sci(weakest_control) + ")"};
}

Outcome criterion9() {
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0), pos(0.01, 1.0);
  double worst = 0;
  for (int i = 0; i < 10; ++i) {
    const int n = 3;
    Point x(n), y(n);
    for (int k = 0; k < n - 1; ++k) x(k) = u(gen), y(k) = u(gen);
    x(n - 1) = pos(gen);
    y(n - 1) = pos(gen);
    // -2 d/dt [c_n t (t^2 + rho^2)^{-n/2}] at t = x_n + y_n.
    const double t = x(n - 1) + y(n - 1), rho2 = (x.head(n - 1) - y.head(n - 1)).squaredNorm(), R2 = t * t + rho2;
    const double cn = dimension_constant_value(n);
    const double minus_2dt = -2 * cn * (std::pow(R2, -n / 2.0) - n * t * t * std::pow(R2, -n / 2.0 - 1));
    worst = std::max(worst, std::abs(eval_weighted_halfspace(0.0, 0.0, x, y) - minus_2dt) / std::abs(minus_2dt));
  }
  if (worst > 1e-10) return {false, "alpha = 0 relative error " + sci(worst)};
  // Principal symbol Gamma(alpha+1) e^{g(x')} / (2|xi|)^{alpha+1}, stored relative to Gamma(alpha+1)(2|xi|)^-alpha e^{g0}.
  const Rational alpha(1, 2);
  const std::vector<Rational> gj{Rational(1, 3), Rational(2), Rational(-3, 4)};
  const int cap = 4;
  const DomainSpec flat = DomainSpec::halfspace(3);
  PsdoExpansion w = lambda_symbol(compute_poisson_symbols(flat, 0, cap), flat, 0, WeightSpec{alpha, gj});
  // e^{g - g0} with g - g0 = 2|x'|^2 - (3/4)|x'|^4/2, expanded by hand to weight 4.
  SymbolSeries r2(3, cap);
  for (int j = 0; j < 2; ++j) {
    TermKey k;
    k.xp[j] = 2;
    r2.add(k, JetCoeff(1));
  }
  SymbolSeries one = SymbolSeries::constant(3, cap, 1);
  SymbolSeries v = r2 * Rational(2) + (r2 * r2) * Rational(-3, 8);
  SymbolSeries ex = one + v + (v * v) * Rational(1, 2);
  TermKey wm1;
  wm1.w = -1;
  SymbolSeries want = SymbolSeries::monomial(3, cap, wm1, JetCoeff(Rational(1, 2))) * ex;
  if (!(w.symbol.grades[0] == want)) return {false, "weighted principal symbol " + w.symbol.grades[0].to_string()};
  if (!(w.alpha == alpha && w.g0 == gj[0])) return {false, "weight scaling factors not recorded"};
  const DomainSpec curved = DomainSpec::symbolic(3, 2);
  PsdoExpansion wc = lambda_symbol(compute_poisson_symbols(curved, 0, 2), curved, 0, WeightSpec{alpha, gj});
  if (!(wc.symbol.grades[0].centre() == SymbolSeries::monomial(3, 0, wm1, JetCoeff(Rational(1, 2)))))
    return {false, "curved weighted centre symbol"};
  return {true, "10 points max relative error " + sci(worst) + "; principal symbol exact to weight 4 (alpha = 1/2)"};
}

Outcome criterion10() {
  Point c(2);
  c << 0.0, 0.0;
  const FdDomain disk = FdDomain::ball(c, 1.0);
  const std::vector<double> hs{1.0 / 8, 1.0 / 16, 1.0 / 32, 1.0 / 64};
  double order = 1e300;
  for (const auto& f : std::vector<std::function<double(const Point&)>>{
           [](const Point& p) { return std::exp(p(0)) * std::cos(p(1)); },
           [](const Point& p) { return std::real(std::pow(std::complex<double>(p(0), p(1)), 5)); }}) {
    ConvergenceStudy st = fd_convergence(disk, hs, f);
    order = std::min(order, st.min_order());
  }
  if (order < 1.9) return {false, "observed order " + std::to_string(order)};
  // Unit disk centred at (0, 1), boundary point at the origin; along the normal the
  // exact kernel is c_2/r - c_2/2.
  Point centre(2), zeta(2);
  centre << 0.0, 1.0;
  zeta << 0.0, 0.0;
  const double h = 1.0 / 256, cn = dimension_constant_value(2);
  FdSolution sol = fd_poisson_kernel_ball(centre, 1.0, zeta, 0.01, h);
  std::vector<Sample> samples;
  for (int k = 1; k * h <= 0.8 + 1e-12; ++k)
    if (k * h >= 0.2 - 1e-12)
      if (auto v = sol.value({0, k, 0})) samples.push_back({k * h, 1.0, 0.0, *v});
  FitReport rep = fit_boundary_expansion(samples, {{-1, false, 0, 0}, {0, false, 0, 0}, {1, false, 0, 0}}, {cn, -0.5 * cn, 0.0});
  const double rel = *rep.relative_error[0];
  if (rel > 0.01) return {false, "grade-0 coefficient off by " + sci(rel)};
  if (!sol.maximum_principle()) return {false, "discrete maximum principle violated"};
  return {true, "min order " + std::to_string(order).substr(0, 5) + "; grade-0 coefficient within " + sci(rel) + " of c_2 at h = 1/256 (" +
                    std::to_string(sol.nodes.size()) + " unknowns, " + sol.solver + "); log term not claimed from FD data"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Poisson symbol grades k0..k-3 at x'=0 (n=3)", 10, criterion1},
      {2, "Poisson kernel expansion through |x|log|x| (n=3)", 30, criterion2},
      {3, "s, p and the Lambda^-1 boundary kernel (n=3)", 60, criterion3},
      {4, "Bergman leading term and boundary trace (n=2..6)", 0, criterion4},
      {5, "vanishing log terms (half-space, balls, n=2)", 0, criterion5},
      {6, "principal-level identities for R_j and T", 5, criterion6},
      {7, "spectral vs closed ball Bergman kernel, reproduction", 60, criterion7},
      {8, "transform families vs cutoff quadrature", 60, criterion8},
      {9, "weighted half-space consistency", 0, criterion9},
      {10, "finite-difference property suite", 0, criterion10},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    const double dt = seconds_since(t0);
    if (o.pass && c.budget > 0 && dt > c.budget) o = {false, "exceeded " + std::to_string(int(c.budget)) + " s budget; " + o.detail};
    char head[64];
    std::snprintf(head, sizeof head, "%s criterion %2d ", o.pass ? "PASS" : "FAIL", c.id);
    char tail[32];
    std::snprintf(tail, sizeof tail, " (%.2f s)", dt);
    std::cout << head << c.title << tail << " | " << o.detail << std::endl;
    if (!o.pass) ++failures;
  }
  std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria passed") << std::endl;
  return failures ? 1 : 0;
}
