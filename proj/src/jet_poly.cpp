#include "harmkern/jet_poly.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace harmkern {

int JetMonomial::degree() const {
  int d = 0;
  for (auto v : e) d += v;
  return d;
}

int JetMonomial::weight() const {
  int w = 0;
  for (int k = 0; k < kMaxJet; ++k) w += e[k] * (2 * (k + 1) - 1);
  return w;
}

JetMonomial JetMonomial::operator*(const JetMonomial& o) const {
  JetMonomial r;
  for (int k = 0; k < kMaxJet; ++k) {
    int s = e[k] + o.e[k];
    if (s > 255) throw std::overflow_error("jet exponent overflow");
    r.e[k] = static_cast<std::uint8_t>(s);
  }
  return r;
}

std::string to_string(const JetMonomial& m) {
  std::string out;
  for (int k = 0; k < kMaxJet; ++k) {
    if (m.e[k] == 0) continue;
    if (!out.empty()) out += '*';
    out += 'a' + std::to_string(k + 1);
    if (m.e[k] > 1) out += '^' + std::to_string(m.e[k]);
  }
  return out.empty() ? "1" : out;
}

JetMonomial parse_jet_monomial(std::string_view text) {
  JetMonomial m;
  std::string s(text);
  if (s == "1") return m;
  std::stringstream ss(s);
  std::string factor;
  while (std::getline(ss, factor, '*')) {
    if (factor.size() < 2 || factor[0] != 'a') throw std::invalid_argument("bad jet monomial: " + s);
    std::size_t caret = factor.find('^');
    int k = std::stoi(factor.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
    int p = caret == std::string::npos ? 1 : std::stoi(factor.substr(caret + 1));
    if (k < 1 || k > kMaxJet || p < 1) throw std::invalid_argument("bad jet monomial: " + s);
    m.e[k - 1] = static_cast<std::uint8_t>(m.e[k - 1] + p);
  }
  return m;
}

JetPoly::JetPoly(const Rational& c) {
  if (c != 0) terms_.emplace(JetMonomial{}, c);
}

JetPoly JetPoly::variable(int k) {
  if (k < 1 || k > kMaxJet) throw std::out_of_range("jet index out of range");
  JetMonomial m;
  m.e[k - 1] = 1;
  JetPoly p;
  p.terms_.emplace(m, Rational(1));
  return p;
}

bool JetPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == JetMonomial{});
}

Rational JetPoly::constant_term() const {
  auto it = terms_.find(JetMonomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

void JetPoly::add_term(const JetMonomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

JetPoly& JetPoly::operator+=(const JetPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

JetPoly& JetPoly::operator-=(const JetPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

JetPoly& JetPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

JetPoly JetPoly::operator-() const {
  JetPoly r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

JetPoly operator*(const JetPoly& a, const JetPoly& b) {
  JetPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  if (a.terms_.size() == 1 && a.terms_.begin()->first == JetMonomial{}) return b * a.terms_.begin()->second;
  if (b.terms_.size() == 1 && b.terms_.begin()->first == JetMonomial{}) return a * b.terms_.begin()->second;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

JetPoly JetPoly::substitute(std::span<const JetPoly> values) const {
  JetPoly r;
  for (const auto& [m, c] : terms_) {
    JetPoly t(c);
    for (int k = 0; k < kMaxJet; ++k) {
      if (m.e[k] == 0) continue;
      if (k >= static_cast<int>(values.size())) {
        t = JetPoly();
        break;
      }
      for (int p = 0; p < m.e[k]; ++p) t = t * values[k];
    }
    r += t;
  }
  return r;
}

double JetPoly::evaluate(std::span<const double> jet) const {
  double s = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = c.get_d();
    for (int k = 0; k < kMaxJet; ++k) {
      if (m.e[k] == 0) continue;
      double a = k < static_cast<int>(jet.size()) ? jet[k] : 0.0;
      t *= std::pow(a, m.e[k]);
    }
    s += t;
  }
  return s;
}

bool JetPoly::homogeneous_of_weight(int w) const {
  for (const auto& [m, c] : terms_)
    if (m.weight() != w) return false;
  return true;
}

std::string JetPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    bool neg = c < 0;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    bool unit_monomial = m == JetMonomial{};
    if (unit_monomial) {
      out += harmkern::to_string(mag);
    } else {
      if (mag != 1) out += harmkern::to_string(mag) + "*";
      out += harmkern::to_string(m);
    }
  }
  return out;
}

std::string to_string(const JetPoly& p) { return p.to_string(); }

JetPoly parse_jet_poly(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty jet polynomial");
  JetPoly out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    }
    std::size_t end = s.find_first_of("+-", pos);
    std::string term = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    if (term.empty()) throw std::invalid_argument("bad jet polynomial: " + s);
    Rational coeff = sign;
    std::string mono;
    std::stringstream ss(term);
    std::string factor;
    while (std::getline(ss, factor, '*')) {
      if (factor.empty()) throw std::invalid_argument("bad jet polynomial: " + s);
      if (factor[0] == 'a') mono += (mono.empty() ? "" : "*") + factor;
      else coeff *= parse_rational(factor);
    }
    out.add_term(parse_jet_monomial(mono.empty() ? "1" : mono), coeff);
    pos = end == std::string::npos ? s.size() : end;
  }
  return out;
}

}  // namespace harmkern
