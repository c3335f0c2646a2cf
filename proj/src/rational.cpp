#include "harmkern/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace harmkern {

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw std::invalid_argument("empty rational");
  std::size_t slash = s.find('/');
  auto valid_int = [](const std::string& part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("not an exact rational: '" + s + "'");
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Rational factorial(int k) {
  if (k < 0) throw std::invalid_argument("negative factorial");
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
  return Rational(f);
}

Rational binomial(const Rational& e, int k) {
  Rational c = 1;
  for (int i = 0; i < k; ++i) c = c * (e - i) / (i + 1);
  return c;
}

Rational pochhammer(const Rational& a, int k) {
  Rational c = 1;
  for (int i = 0; i < k; ++i) c *= a + i;
  return c;
}

Rational power(const Rational& base, int exponent) {
  Rational r = 1;
  Rational b = exponent >= 0 ? base : Rational(1) / base;
  for (int i = 0; i < (exponent >= 0 ? exponent : -exponent); ++i) r *= b;
  return r;
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace harmkern
