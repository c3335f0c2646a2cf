#include "harmkern/kernel_transform.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "harmkern/errors.hpp"
#include "harmkern/poisson_recursion.hpp"

namespace harmkern {

namespace {

PiRational operator*(const PiRational& a, const PiRational& b) { return {a.q * b.q, a.half_pi_power + b.half_pi_power}; }
PiRational operator/(const PiRational& a, const PiRational& b) { return {a.q / b.q, a.half_pi_power - b.half_pi_power}; }

using TPoly = std::map<int, Rational>;

void add_to(TPoly& p, int a, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = p.try_emplace(a, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

int max_degree(const TPoly& p) { return p.empty() ? 0 : p.rbegin()->first; }

Rational get(const TPoly& p, int a) {
  auto it = p.find(a);
  return it == p.end() ? Rational(0) : it->second;
}

// d/dx_n (A(t) r^h) as a t-polynomial against r^(h-1).
TPoly d_normal(const TPoly& A, int h) {
  TPoly out;
  for (const auto& [a, c] : A) {
    if (a > 0) add_to(out, a - 1, c * a);
    add_to(out, a + 1, c * (h - a));
  }
  return out;
}

struct Antiderivative {
  TPoly poly;
  bool c0_free = false;
};

// Solves d/dx_n (A(t) r^h) = T(t) r^(h-1) with A a polynomial. c0 (the value at
// t = 0) is used only when the homogeneous solution (1-t^2)^(h/2) is polynomial.
std::optional<Antiderivative> antiderivative(const TPoly& T, int h, const Rational& c0) {
  const int D = max_degree(T);
  const int L = std::max(D, std::abs(h)) + 6;
  auto chain = [&](int parity, const Rational& start, bool with_rhs) {
    std::vector<Rational> c(L + 3, Rational(0));
    if (parity == 0) c[0] = start;
    // (e+1) c_{e+1} + (h-e+1) c_{e-1} = T_e
    for (int e = (parity == 0 ? 1 : 0); e + 1 <= L + 2; e += 2) {
      Rational rhs = with_rhs ? get(T, e) : Rational(0);
      Rational prev = e >= 1 ? c[e - 1] : Rational(0);
      c[e + 1] = (rhs - Rational(h - e + 1) * prev) / (e + 1);
    }
    return c;
  };
  auto tail_zero = [&](const std::vector<Rational>& c, int parity) {
    int last = L + 2;
    if (last % 2 != parity) --last;
    return c[last] == 0 && c[last - 2] == 0;
  };
  std::vector<Rational> odd = chain(1, 0, true);
  if (!tail_zero(odd, 1)) return std::nullopt;
  std::vector<Rational> part = chain(0, 0, true);
  std::vector<Rational> ker = chain(0, 1, false);
  Antiderivative out;
  Rational start = 0;
  if (tail_zero(ker, 0)) {
    if (!tail_zero(part, 0)) return std::nullopt;
    out.c0_free = true;
    start = c0;
  } else if (!tail_zero(part, 0)) {
    int last = L + 2;
    if (last % 2 != 0) --last;
    start = -part[last] / ker[last];
  }
  std::vector<Rational> even = chain(0, start, true);
  if (!tail_zero(even, 0)) return std::nullopt;
  for (int a = 0; a <= L + 2; ++a) add_to(out.poly, a, a % 2 ? odd[a] : even[a]);
  return out;
}

bool smooth_monomial(int a, int h) { return h - a >= 0 && (h - a) % 2 == 0; }

// A(p) / c_n for the boundary transform of |xi|^p away from the lattice.
std::optional<PiRational> riesz_ratio(int p, int d) {
  auto num = gamma_half(d + p);
  auto den = gamma_half(-p);
  if (!den) return PiRational{0, 0};
  if (!num) return std::nullopt;
  PiRational r = PiRational{power(Rational(2), p), 1} * *num / (*den * *gamma_half(d + 1));
  return r;
}

// R / c_n at the lattice point p = -d - 2k; the boundary log coefficient is -R.
Rational lattice_log_ratio(int k, int d) {
  PiRational r = PiRational{power(Rational(2), -d - 2 * k + 1) * (k % 2 ? -1 : 1), 1} /
                 (PiRational{factorial(k), 0} * *gamma_half(d + 2 * k) * *gamma_half(d + 1));
  if (!r.is_rational()) throw std::logic_error("lattice log ratio is not rational");
  return r.q;
}

KernelCoeff from_tpoly(const TPoly& p, const JetPoly& scale) {
  KernelCoeff c;
  for (const auto& [a, v] : p) c.add(a, 0, scale * v);
  return c;
}

}  // namespace

std::optional<PiRational> gamma_half(int m) {
  if (m % 2 == 0) {
    if (m <= 0) return std::nullopt;
    return PiRational{factorial(m / 2 - 1), 0};
  }
  PiRational g{1, 1};
  Rational x(1, 2);
  if (m > 0) {
    for (; x < Rational(m, 2); x += 1) g.q *= x;
  } else {
    for (; x > Rational(m, 2); x -= 1) g.q /= (x - 1);
  }
  return g;
}

PiRational dimension_constant(int n) {
  PiRational g = *gamma_half(n);
  g.half_pi_power -= n;
  return g;
}

double dimension_constant_value(int n) { return std::tgamma(n / 2.0) / std::pow(M_PI, n / 2.0); }

std::string_view to_string(RadialVar v) {
  switch (v) {
    case RadialVar::X: return "x";
    case RadialVar::Green: return "green";
    case RadialVar::Boundary: return "boundary";
  }
  return "x";
}

RadialVar parse_radial_var(std::string_view s) {
  if (s == "x") return RadialVar::X;
  if (s == "green") return RadialVar::Green;
  if (s == "boundary") return RadialVar::Boundary;
  throw ParameterError("unknown radial variable: " + std::string(s));
}

KernelCoeff KernelCoeff::monomial(int a, int b, const JetPoly& c) {
  KernelCoeff k;
  k.add(a, b, c);
  return k;
}

void KernelCoeff::add(int a, int b, const JetPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace({a, b}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

KernelCoeff& KernelCoeff::operator+=(const KernelCoeff& o) {
  for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
  return *this;
}

KernelCoeff KernelCoeff::operator*(const JetPoly& c) const {
  KernelCoeff r;
  for (const auto& [k, v] : terms_) r.add(k.first, k.second, v * c);
  return r;
}

KernelCoeff KernelCoeff::swapped() const {
  KernelCoeff r;
  for (const auto& [k, v] : terms_) r.add(k.second, k.first, v);
  return r;
}

double KernelCoeff::evaluate(std::span<const double> jet, double u, double v) const {
  double s = 0.0;
  for (const auto& [k, c] : terms_) s += c.evaluate(jet) * std::pow(u, k.first) * std::pow(v, k.second);
  return s;
}

std::string KernelCoeff::to_string(RadialVar var) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    const char* un = var == RadialVar::Green ? "u" : "t";
    if (k.first) os << "*" << un << "^" << k.first;
    if (k.second) os << "*v^" << k.second;
  }
  return os.str();
}

void KernelExpansion::add(const KernelCoeff& c, int power, bool log) {
  if (c.is_zero()) return;
  auto it = std::lower_bound(terms.begin(), terms.end(), std::pair{power, log}, [](const KernelTerm& t, const auto& key) {
    return std::pair{t.power, t.log} < key;
  });
  if (it != terms.end() && it->power == power && it->log == log) {
    it->coeff += c;
    if (it->coeff.is_zero()) terms.erase(it);
  } else {
    terms.insert(it, KernelTerm{c, power, log});
  }
}

void KernelExpansion::add(const KernelExpansion& o, const JetPoly& scale) {
  if (scale.is_zero()) return;
  for (const KernelTerm& t : o.terms) add(t.coeff * scale, t.power, t.log);
  for (KernelRemainder r : o.remainders) {
    r.coeff = r.coeff * scale;
    auto it = std::find_if(remainders.begin(), remainders.end(), [&](const KernelRemainder& x) {
      return x.power == r.power && x.q == r.q && x.r == r.r && x.p == r.p;
    });
    if (it == remainders.end()) {
      remainders.push_back(r);
    } else {
      it->coeff += r.coeff;
      if (it->coeff.is_zero()) remainders.erase(it);
    }
  }
  std::sort(remainders.begin(), remainders.end(), [](const KernelRemainder& a, const KernelRemainder& b) {
    return std::tie(a.power, a.p, a.q, a.r) < std::tie(b.power, b.p, b.q, b.r);
  });
}

const KernelTerm* KernelExpansion::find(int power, bool log) const {
  for (const KernelTerm& t : terms)
    if (t.power == power && t.log == log) return &t;
  return nullptr;
}

KernelCoeff KernelExpansion::coefficient(int power, bool log) const {
  const KernelTerm* t = find(power, log);
  return t ? t->coeff : KernelCoeff();
}

bool KernelExpansion::power_complete(int power) const {
  for (const KernelRemainder& r : remainders)
    if (r.power == power) return false;
  return true;
}

double KernelExpansion::evaluate(std::span<const double> jet, double u, double v, double rad) const {
  double s = 0.0;
  for (const KernelTerm& t : terms) {
    double term = t.coeff.evaluate(jet, u, v) * std::pow(rad, t.power);
    if (t.log) term *= std::log(rad);
    s += term;
  }
  return dimension_constant_value(n) * s;
}

RadialFamily radial_family(int p, int n) {
  if (n < 2) throw ParameterError("dimension must be at least 2");
  const int d = n - 1;
  RadialFamily f;
  f.n = n;
  f.p = 0;
  f.power = -d;
  f.regular_part = {{1, Rational(1)}};
  while (f.p < p) {
    // Multiplication by |xi| is -d/dx_n.
    TPoly next;
    for (const auto& [a, c] : d_normal(f.regular_part, f.power)) add_to(next, a, -c);
    f.regular_part = next;
    f.power -= 1;
    f.p += 1;
  }
  while (f.p > p) {
    // Division by |xi|: F_{p-1} = -int F_p dx_n with boundary values from the Riesz transform.
    const int pn = f.p - 1;
    const int h = f.power + 1;
    const bool lattice = h >= 0 && h % 2 == 0;
    TPoly target_q;
    for (const auto& [a, c] : f.log_part) add_to(target_q, a, -c);
    Rational q0 = lattice ? -lattice_log_ratio(h / 2, d) : Rational(0);
    auto q = antiderivative(target_q, h, q0);
    if (!q) throw std::logic_error("log part of radial family is not polynomial");
    if (!q->c0_free && get(q->poly, 0) != q0) throw std::logic_error("log part violates its boundary value");
    TPoly target_u;
    for (const auto& [a, c] : q->poly) add_to(target_u, a + 1, -c);
    bool exact = f.regular_exact;
    TPoly u;
    if (exact) {
      for (const auto& [a, c] : f.regular_part) add_to(target_u, a, -c);
      auto sol = antiderivative(target_u, h, Rational(0));
      if (!sol) {
        exact = false;
      } else {
        u = sol->poly;
        if (!sol->c0_free) {
          auto ratio = riesz_ratio(pn, d);
          Rational at_zero = get(u, 0);
          if (!ratio || !(ratio->is_rational() && ratio->q == at_zero)) exact = false;
        }
      }
    }
    TPoly kept;
    if (exact)
      for (const auto& [a, c] : u)
        if (!smooth_monomial(a, h)) add_to(kept, a, c);
    f.log_part = q->poly;
    f.regular_part = kept;
    f.regular_exact = exact;
    f.power = h;
    f.p = pn;
  }
  // Smooth monomials never carry information modulo smooth functions.
  TPoly kept;
  for (const auto& [a, c] : f.regular_part)
    if (!smooth_monomial(a, f.power)) add_to(kept, a, c);
  f.regular_part = kept;
  return f;
}

KernelExpansion radial_ift_term(int q, int p, int n) {
  if (q < 0) throw ParameterError("x_n exponent must be non-negative");
  RadialFamily f = radial_family(p, n);
  KernelExpansion e{RadialVar::X, n, {}, {}};
  const int power = f.power + q;
  TPoly reg, lg;
  for (const auto& [a, c] : f.regular_part)
    if (!smooth_monomial(a + q, power)) add_to(reg, a + q, c);
  for (const auto& [a, c] : f.log_part) add_to(lg, a + q, c);
  e.add(from_tpoly(reg, JetPoly(1)), power, false);
  e.add(from_tpoly(lg, JetPoly(1)), power, true);
  if (!f.regular_exact) e.remainders.push_back({power, q, 0, p, JetPoly(1)});
  return e;
}

KernelExpansion green_ift_term(int q, int r, int p, int n) {
  if (q < 0 || r < 0) throw ParameterError("normal exponents must be non-negative");
  RadialFamily f = radial_family(p, n);
  KernelExpansion e{RadialVar::Green, n, {}, {}};
  const int power = f.power + q + r;
  auto expand = [&](const TPoly& poly, bool drop_smooth) {
    KernelCoeff c;
    for (const auto& [a, v] : poly) {
      if (drop_smooth && smooth_monomial(a + q + r, power)) continue;
      // (u+v)^a u^q v^r
      for (int i = 0; i <= a; ++i) c.add(i + q, a - i + r, JetPoly(v * binomial(Rational(a), i)));
    }
    return c;
  };
  e.add(expand(f.regular_part, true), power, false);
  e.add(expand(f.log_part, false), power, true);
  if (!f.regular_exact) e.remainders.push_back({power, q, r, p, JetPoly(1)});
  return e;
}

KernelExpansion boundary_ift_term(int p, int n) {
  const int d = n - 1;
  const int h = -(p + d);
  KernelExpansion e{RadialVar::Boundary, n, {}, {}};
  if (h >= 0 && h % 2 == 0) {
    e.add(KernelCoeff::monomial(0, 0, JetPoly(-lattice_log_ratio(h / 2, d))), h, true);
    return e;
  }
  auto ratio = riesz_ratio(p, d);
  if (!ratio->is_rational()) {
    e.remainders.push_back({h, 0, 0, p, JetPoly(1)});
    return e;
  }
  e.add(KernelCoeff::monomial(0, 0, JetPoly(ratio->q)), h, false);
  return e;
}

KernelExpansion transform_symbol(const BoundarySymbol& s) {
  RadialVar var = RadialVar::X;
  if (s.kind == SymbolKind::Green) var = RadialVar::Green;
  else if (s.kind == SymbolKind::Psdo) var = RadialVar::Boundary;
  else if (s.kind != SymbolKind::Poisson) throw KindError("no kernel transform for trace symbols");
  KernelExpansion out{var, s.n, {}, {}};
  for (int j = 0; j <= s.depth(); ++j) {
    const SymbolSeries centre = s.grades[j].centre();
    for (const auto& [k, c] : centre.terms()) {
      if (degree(k.xi) != 0) throw RadialityError("symbol is not radial at the centre (grade " + std::to_string(j) + ")");
      if (!c.im.is_zero()) throw RadialityError("centre coefficient is not real (grade " + std::to_string(j) + ")");
      switch (s.kind) {
        case SymbolKind::Poisson: out.add(radial_ift_term(k.xn, k.w, s.n), c.re); break;
        case SymbolKind::Green: out.add(green_ift_term(k.xn, k.yn, k.w, s.n), c.re); break;
        default: out.add(boundary_ift_term(k.w, s.n), c.re); break;
      }
    }
  }
  return out;
}

KernelExpansion poisson_kernel_expansion(const DomainSpec& dom, int N, int W) {
  return transform_symbol(compute_poisson_symbols(dom, N, W < 0 ? default_weight(N) : W));
}

KernelExpansion bergman_kernel_expansion(const DomainSpec& dom, int N, int W) {
  return transform_symbol(bergman_chain(dom, N, W < 0 ? default_weight(N) : W).g);
}

KernelExpansion lambda_inverse_boundary_kernel(const PsdoExpansion& p) {
  if (p.weighted()) throw ParameterError("boundary kernel of weighted symbols is not supported");
  return transform_symbol(p.symbol);
}

KernelExpansion lambda_inverse_boundary_kernel(const DomainSpec& dom, int N, int W, BoundaryMeasure measure) {
  return lambda_inverse_boundary_kernel(bergman_chain(dom, N, W < 0 ? default_weight(N) : W, measure).p);
}

std::optional<LogTerm> log_coefficient(const KernelExpansion& e) {
  for (const KernelTerm& t : e.terms)
    if (t.log) return LogTerm{t.power, t.coeff};
  return std::nullopt;
}

}  // namespace harmkern
