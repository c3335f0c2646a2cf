#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "harmkern/rational.hpp"

namespace harmkern {

inline constexpr int kMaxJet = 8;

// a1^e1 * a2^e2 * ... over the jet values a_k = Phi^(k)(0).
struct JetMonomial {
  std::array<std::uint8_t, kMaxJet> e{};

  auto operator<=>(const JetMonomial&) const = default;
  int degree() const;
  // Scaling weight: a_k carries weight 2k - 1.
  int weight() const;
  JetMonomial operator*(const JetMonomial& o) const;
};

std::string to_string(const JetMonomial& m);
// "1", "a1", "a1^2*a3".
JetMonomial parse_jet_monomial(std::string_view text);

// Polynomial with rational coefficients in the jet variables.
class JetPoly {
 public:
  using Terms = std::map<JetMonomial, Rational>;

  JetPoly() = default;
  JetPoly(const Rational& c);  // NOLINT: constants convert implicitly
  JetPoly(long c) : JetPoly(Rational(c)) {}  // NOLINT
  static JetPoly variable(int k);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  const Terms& terms() const { return terms_; }

  void add_term(const JetMonomial& m, const Rational& c);

  JetPoly& operator+=(const JetPoly& o);
  JetPoly& operator-=(const JetPoly& o);
  JetPoly& operator*=(const Rational& c);
  JetPoly operator-() const;
  friend JetPoly operator+(JetPoly a, const JetPoly& b) { return a += b; }
  friend JetPoly operator-(JetPoly a, const JetPoly& b) { return a -= b; }
  friend JetPoly operator*(const JetPoly& a, const JetPoly& b);
  friend JetPoly operator*(JetPoly a, const Rational& c) { return a *= c; }
  friend JetPoly operator*(const Rational& c, JetPoly a) { return a *= c; }
  bool operator==(const JetPoly& o) const { return terms_ == o.terms_; }

  // Replace a_k by values[k-1]; missing entries are zero.
  JetPoly substitute(std::span<const JetPoly> values) const;
  double evaluate(std::span<const double> jet) const;
  // Every monomial has this scaling weight (zero is homogeneous of any weight).
  bool homogeneous_of_weight(int w) const;
  std::string to_string() const;

 private:
  Terms terms_;
};

std::string to_string(const JetPoly& p);
// Inverse of to_string: "1/2*a2 - a1^3", "-3*a1^2", "5/4".
JetPoly parse_jet_poly(std::string_view text);

}  // namespace harmkern
