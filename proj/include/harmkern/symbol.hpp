#pragma once

#include <array>
#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "harmkern/jet_poly.hpp"

namespace harmkern {

// Tangential dimension n-1 is at most this, so n <= 6.
inline constexpr int kMaxTangential = 5;
inline constexpr int kMaxDimension = kMaxTangential + 1;

using MultiIndex = std::array<std::int8_t, kMaxTangential>;

int degree(const MultiIndex& a);
Rational multi_factorial(const MultiIndex& a);
// All multi-indices of length dim and total degree order, lexicographic.
std::vector<MultiIndex> multi_indices(int dim, int order);

// x'^xp xi^xi |xi|^w x_n^xn y_n^yn.
struct TermKey {
  MultiIndex xp{};
  MultiIndex xi{};
  int w = 0;
  int xn = 0;
  int yn = 0;

  auto operator<=>(const TermKey&) const = default;
  int weight() const { return degree(xp); }
  // Homogeneity in (xi, 1/x_n, 1/y_n).
  int homogeneity() const { return degree(xi) + w - xn - yn; }
};

// Complex coefficient re + i*im with jet polynomial parts.
struct JetCoeff {
  JetPoly re;
  JetPoly im;

  JetCoeff() = default;
  JetCoeff(JetPoly r, JetPoly i = {}) : re(std::move(r)), im(std::move(i)) {}  // NOLINT
  JetCoeff(const Rational& r) : re(r) {}                                      // NOLINT
  JetCoeff(long r) : re(Rational(r)) {}                                        // NOLINT
  static JetCoeff imaginary(const JetPoly& v) { return {JetPoly(), v}; }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  JetCoeff conj() const { return {re, -im}; }
  JetCoeff times_i() const { return {-im, re}; }
  JetCoeff& operator+=(const JetCoeff& o);
  JetCoeff& operator-=(const JetCoeff& o);
  friend JetCoeff operator+(JetCoeff a, const JetCoeff& b) { return a += b; }
  friend JetCoeff operator-(JetCoeff a, const JetCoeff& b) { return a -= b; }
  JetCoeff operator-() const { return {-re, -im}; }
  friend JetCoeff operator*(const JetCoeff& a, const JetCoeff& b);
  friend JetCoeff operator*(const JetCoeff& a, const Rational& c) { return {a.re * c, a.im * c}; }
  bool operator==(const JetCoeff& o) const = default;

  std::complex<double> evaluate(std::span<const double> jet) const;
  std::string to_string() const;
};

struct SymbolTerm {
  JetCoeff coeff;
  TermKey key;
};

// Rewrites xi_{n-1}^2 = |xi|^2 - sum_{j<n-1} xi_j^2 until xi_{n-1} has exponent <= 1.
std::vector<SymbolTerm> canonicalize(const SymbolTerm& term, int n);

// One grade of a boundary symbol: a finite sum of canonical terms, truncated
// at x'-weight cap, times exp(-x_n|xi|) and/or exp(-y_n|xi|) when flagged.
class SymbolSeries {
 public:
  using Terms = std::map<TermKey, JetCoeff>;

  SymbolSeries() = default;
  SymbolSeries(int n, int cap, bool exp_xn = false, bool exp_yn = false);
  static SymbolSeries constant(int n, int cap, const JetCoeff& c);
  static SymbolSeries monomial(int n, int cap, const TermKey& key, const JetCoeff& c);

  int n() const { return n_; }
  int cap() const { return cap_; }
  bool exp_xn() const { return exp_xn_; }
  bool exp_yn() const { return exp_yn_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add(const TermKey& key, const JetCoeff& c);
  JetCoeff coefficient(const TermKey& key) const;

  SymbolSeries& operator+=(const SymbolSeries& o);
  SymbolSeries& operator-=(const SymbolSeries& o);
  friend SymbolSeries operator+(SymbolSeries a, const SymbolSeries& b) { return a += b; }
  friend SymbolSeries operator-(SymbolSeries a, const SymbolSeries& b) { return a -= b; }
  friend SymbolSeries operator*(const SymbolSeries& a, const SymbolSeries& b);
  SymbolSeries operator*(const JetCoeff& c) const;
  SymbolSeries operator*(const Rational& c) const { return *this * JetCoeff(c); }
  bool operator==(const SymbolSeries& o) const;

  SymbolSeries conj() const;
  SymbolSeries with_cap(int cap) const;
  SymbolSeries with_exp(bool exp_xn, bool exp_yn) const;
  SymbolSeries weight_part(int w) const;
  SymbolSeries centre() const { return weight_part(0).with_cap(0); }
  // x_n <-> y_n, exponential flags included.
  SymbolSeries swap_normal() const;
  // Multiplies every term by x_n^dq y_n^dr |xi|^dw.
  SymbolSeries shifted(int dw, int dq, int dr) const;

  std::complex<double> evaluate(std::span<const double> jet, std::span<const double> xp,
                                std::span<const double> xi, double xn, double yn) const;
  std::string to_string() const;

 private:
  int n_ = 2;
  int cap_ = 0;
  bool exp_xn_ = false;
  bool exp_yn_ = false;
  Terms terms_;
};

SymbolSeries d_xn(const SymbolSeries& s);
SymbolSeries d_yn(const SymbolSeries& s);
SymbolSeries d_xp(const SymbolSeries& s, int j);
SymbolSeries d_xi(const SymbolSeries& s, int j);
// D_xi = -i d_xi.
SymbolSeries big_d_xi(const SymbolSeries& s, int j);
SymbolSeries d_xp(const SymbolSeries& s, const MultiIndex& a);
SymbolSeries big_d_xi(const SymbolSeries& s, const MultiIndex& a);

// (1 + u)^e for u with no weight-0 part, truncated at u.cap().
SymbolSeries series_power(const SymbolSeries& u, const Rational& e);
SymbolSeries series_exp(const SymbolSeries& u);
// Inverse of a series whose centre is c*|xi|^p with c a nonzero rational.
SymbolSeries series_inverse(const SymbolSeries& s);

enum class SymbolKind { Poisson, Trace, Psdo, Green };
std::string_view to_string(SymbolKind k);
SymbolKind parse_symbol_kind(std::string_view s);
bool carries_exp_xn(SymbolKind k);
bool carries_exp_yn(SymbolKind k);

// Polyhomogeneous symbol: grades[j] is homogeneous of degree order - j.
struct BoundarySymbol {
  SymbolKind kind = SymbolKind::Psdo;
  int n = 2;
  int order = 0;
  std::vector<SymbolSeries> grades;

  int depth() const { return static_cast<int>(grades.size()) - 1; }
  int degree(int j) const { return order - j; }
  BoundarySymbol centre() const;
  bool operator==(const BoundarySymbol& o) const = default;
};

// Degree and jet-weight homogeneity of every term. Returns an empty string when
// consistent, otherwise a description of the first offending term.
std::string check_homogeneity(const BoundarySymbol& s);

// Grade m of a∘b: sum over i+j+|alpha| = m of (1/alpha!) D^alpha a_i ∘_n d_x'^alpha b_j.
// normal_weight = alpha inserts x_n^alpha into trace∘Poisson integrals.
BoundarySymbol leibniz_compose(const BoundarySymbol& a, const BoundarySymbol& b, int depth,
                               const Rational& normal_weight = 0);

// int_0^inf t k x_n^alpha dx_n for one pair of grades, both carrying exp(-x_n|xi|).
// Output is relative to Gamma(alpha+1) (2|xi|)^(-alpha).
SymbolSeries xn_integral_compose(const SymbolSeries& t, const SymbolSeries& k, const Rational& alpha = 0);

enum class DerivVar { XPrime, Xi, XN, YN };

// Exact derivative of every grade. An x'-derivative keeps the homogeneity degree
// but lowers the jet weight, so its grades move up by one and the order by one.
BoundarySymbol derive(const BoundarySymbol& s, DerivVar var, int index = 0);

// Formal adjoint for the dx' pairing: Poisson <-> Trace, Psdo and Green to themselves.
BoundarySymbol adjoint_symbol(const BoundarySymbol& s, int depth);

}  // namespace harmkern
