#include "published_checks.hpp"

#include <functional>
#include <sstream>
#include <tuple>

#include "harmkern/bergman_chain.hpp"
#include "harmkern/kernel_transform.hpp"
#include "harmkern/poisson_recursion.hpp"

namespace harmkern::cli {

namespace {

// Centre grade as (coefficient, w exponent, x_n exponent, y_n exponent).
using CentreTerm = std::tuple<std::string, int, int, int>;

SymbolSeries centre_series(int n, bool exn, bool eyn, const std::vector<CentreTerm>& terms) {
  SymbolSeries s(n, 0, exn, eyn);
  for (const auto& [c, w, xn, yn] : terms) {
    TermKey k{};
    k.w = w;
    k.xn = xn;
    k.yn = yn;
    s.add(k, JetCoeff(parse_jet_poly(c)));
  }
  return s;
}

std::string mismatch(const SymbolSeries& got, const SymbolSeries& want) {
  return "got " + got.to_string() + ", expected " + want.to_string();
}

Check grades_check(const std::string& name, const BoundarySymbol& s, bool exn, bool eyn,
                   const std::vector<std::vector<CentreTerm>>& expected) {
  for (std::size_t j = 0; j < expected.size(); ++j) {
    SymbolSeries want = centre_series(s.n, exn, eyn, expected[j]);
    SymbolSeries got = s.grades.at(j).centre();
    if (!(got == want)) return {name, false, "grade " + std::to_string(j) + ": " + mismatch(got, want)};
  }
  return {name, true, ""};
}

// Kernel term as (power, log, [(t exponent, coefficient)]).
struct ExpectedTerm {
  int power;
  bool log;
  std::vector<std::pair<int, std::string>> coeff;
};

KernelCoeff t_poly(const std::vector<std::pair<int, std::string>>& c) {
  KernelCoeff k;
  for (const auto& [a, s] : c) k.add(a, 0, parse_jet_poly(s));
  return k;
}

Check kernel_check(const std::string& name, const KernelExpansion& e, const std::vector<ExpectedTerm>& expected,
                   bool exhaustive) {
  for (const ExpectedTerm& t : expected) {
    KernelCoeff got = e.coefficient(t.power, t.log);
    KernelCoeff want = t_poly(t.coeff);
    if (!(got == want))
      return {name, false,
              "power " + std::to_string(t.power) + (t.log ? " log" : "") + ": got " + got.to_string(e.var) + ", expected " +
                  want.to_string(e.var)};
  }
  if (exhaustive && e.terms.size() != expected.size()) return {name, false, "unexpected extra terms"};
  return {name, true, ""};
}

Check guarded(const std::string& name, const std::function<Check()>& fn) {
  try {
    return fn();
  } catch (const std::exception& ex) {
    return {name, false, std::string("exception: ") + ex.what()};
  }
}

}  // namespace

std::vector<Check> run_published_checks() {
  std::vector<Check> out;
  const DomainSpec sym3 = DomainSpec::symbolic(3, 3);

  out.push_back(guarded("Poisson symbol grades k0..k-3 at the centre (n=3)", [&] {
    BoundarySymbol k = compute_poisson_symbols(sym3, 3, default_weight(3));
    return grades_check("Poisson symbol grades k0..k-3 at the centre (n=3)", k, true, false,
                        {{{"1", 0, 0, 0}},
                         {{"a1", 0, 1, 0}, {"-a1", 1, 2, 0}},
                         {{"1/2*a1^2", -1, 1, 0}, {"5/2*a1^2", 0, 2, 0}, {"-3*a1^2", 1, 3, 0}, {"1/2*a1^2", 2, 4, 0}},
                         {{"a1^3 - 1/2*a2", -2, 1, 0},
                          {"2*a1^3 - 1/2*a2", -1, 2, 0},
                          {"7*a1^3 - a2", 0, 3, 0},
                          {"1/2*a2 - 19/2*a1^3", 1, 4, 0},
                          {"5/2*a1^3", 2, 5, 0},
                          {"-1/6*a1^3", 3, 6, 0}}});
  }));

  out.push_back(guarded("Poisson kernel expansion through the log term (n=3)", [&] {
    KernelExpansion e = poisson_kernel_expansion(sym3, 3);
    return kernel_check("Poisson kernel expansion through the log term (n=3)", e,
                        {{-2, false, {{1, "1"}}},
                         {-1, false, {{2, "2*a1"}, {4, "-3*a1"}}},
                         {0, false, {{1, "1/2*a1^2"}, {3, "11/2*a1^2"}, {5, "-27/2*a1^2"}, {7, "15/2*a1^2"}}},
                         {1, true, {{1, "1/2*a2 - a1^3"}}}},
                        false);
  }));

  out.push_back(guarded("symbol of Lambda at the centre (n=3)", [&] {
    BergmanChain ch = bergman_chain(sym3, 3, default_weight(3));
    return grades_check("symbol of Lambda at the centre (n=3)", ch.s.symbol, false, false,
                        {{{"1/2", -1, 0, 0}}, {{"-a1", -2, 0, 0}}, {{"5/4*a1^2", -3, 0, 0}}, {{"5/2*a2", -4, 0, 0}}});
  }));

  out.push_back(guarded("symbol of Lambda^-1 at the centre (n=3)", [&] {
    BergmanChain ch = bergman_chain(sym3, 3, default_weight(3));
    return grades_check("symbol of Lambda^-1 at the centre (n=3)", ch.p.symbol, false, false,
                        {{{"2", 1, 0, 0}}, {{"4*a1", 0, 0, 0}}, {{"-a1^2", -1, 0, 0}}, {{"2*a2 - 4*a1^3", -2, 0, 0}}});
  }));

  out.push_back(guarded("boundary kernel of Lambda^-1 (n=3)", [&] {
    KernelExpansion e = lambda_inverse_boundary_kernel(sym3, 3);
    return kernel_check("boundary kernel of Lambda^-1 (n=3)", e,
                        {{-3, false, {{0, "-2"}}}, {-1, false, {{0, "-a1^2"}}}, {0, true, {{0, "4*a1^3 - 2*a2"}}}}, true);
  }));

  for (int n = 2; n <= 6; ++n) {
    const std::string name = "Bergman leading term and boundary trace (n=" + std::to_string(n) + ")";
    out.push_back(guarded(name, [&] {
      KernelExpansion e = bergman_kernel_expansion(DomainSpec::symbolic(n, 1), 0);
      KernelCoeff want;
      want.add(0, 0, JetPoly(-2));
      want.add(2, 0, JetPoly(2 * n));
      want.add(1, 1, JetPoly(4 * n));
      want.add(0, 2, JetPoly(2 * n));
      if (e.terms.size() != 1 || e.terms[0].power != -n || e.terms[0].log || !(e.terms[0].coeff == want))
        return Check{name, false, "leading term differs from 2(n(u+v)^2 - 1) R^-n"};
      auto it = e.terms[0].coeff.terms().find({0, 0});
      if (it == e.terms[0].coeff.terms().end() || !(it->second == JetPoly(-2)))
        return Check{name, false, "boundary trace differs from -2 R^-n"};
      return Check{name, true, ""};
    }));
  }

  auto no_log = [&](const std::string& name, const DomainSpec& dom) {
    out.push_back(guarded(name, [&] {
      auto lp = log_coefficient(poisson_kernel_expansion(dom, 3));
      auto lb = log_coefficient(bergman_kernel_expansion(dom, 3));
      if (lp) return Check{name, false, "Poisson log coefficient " + lp->coeff.to_string(RadialVar::X)};
      if (lb) return Check{name, false, "Bergman log coefficient " + lb->coeff.to_string(RadialVar::Green)};
      return Check{name, true, ""};
    }));
  };
  no_log("no log term for the half-space (n=3)", DomainSpec::halfspace(3));
  no_log("no log term for the ball R=1 (n=3)", DomainSpec::ball(3, 1, 3));
  no_log("no log term for the ball R=5/2 (n=3)", DomainSpec::ball(3, Rational(5, 2), 3));
  no_log("no log term in dimension 2 (symbolic jet)", DomainSpec::symbolic(2, 3));

  out.push_back(guarded("principal-level identities for R_j and T", [&] {
    SobolevCheck sc = sobolev_identity_check(compute_poisson_symbols(sym3, 0, 4), sym3);
    return Check{"principal-level identities for R_j and T", sc.sum_identity && sc.t_identity,
                 sc.sum_identity ? (sc.t_identity ? "" : "sigma(T) identity fails") : "sum of squares identity fails"};
  }));

  out.push_back(guarded("weighted Lambda principal symbol", [&] {
    WeightSpec w{Rational(1, 2), {Rational(1, 3), Rational(2)}};
    BoundarySymbol k = compute_poisson_symbols(sym3, 1, 2);
    PsdoExpansion s = lambda_symbol(k, sym3, 0, w);
    SymbolSeries want = centre_series(3, false, false, {{"1/2", -1, 0, 0}});
    bool ok = s.symbol.grades[0].centre() == want && s.alpha == w.alpha && s.g0 == w.g0();
    return Check{"weighted Lambda principal symbol", ok, ok ? "" : "got " + s.symbol.grades[0].centre().to_string()};
  }));

  out.push_back(guarded("half-space symbols carry no corrections", [&] {
    BergmanChain ch = bergman_chain(DomainSpec::halfspace(3), 3, default_weight(3));
    Check c = grades_check("half-space symbols carry no corrections", ch.k, true, false, {{{"1", 0, 0, 0}}, {}, {}, {}});
    if (!c.pass) return c;
    c = grades_check(c.name, ch.p.symbol, false, false, {{{"2", 1, 0, 0}}, {}, {}, {}});
    if (!c.pass) return c;
    return grades_check(c.name, ch.g, true, true, {{{"2", 1, 0, 0}}, {}, {}, {}});
  }));
  return out;
}

}  // namespace harmkern::cli
