#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace harmkern {

using Rational = mpq_class;

// Canonical text form: "p" or "p/q" with q > 0.
std::string to_string(const Rational& q);

// Accepts "p", "-p", "p/q". Decimal points are rejected.
Rational parse_rational(std::string_view text);

Rational factorial(int k);

// (e choose k) for rational e.
Rational binomial(const Rational& e, int k);

// (a)_k rising factorial.
Rational pochhammer(const Rational& a, int k);

Rational power(const Rational& base, int exponent);

double to_double(const Rational& q);

}  // namespace harmkern
