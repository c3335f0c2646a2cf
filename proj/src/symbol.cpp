#include "harmkern/symbol.hpp"

#include <cmath>
#include <sstream>

#include "harmkern/errors.hpp"

namespace harmkern {

int degree(const MultiIndex& a) {
  int d = 0;
  for (auto v : a) d += v;
  return d;
}

Rational multi_factorial(const MultiIndex& a) {
  Rational f = 1;
  for (auto v : a) f *= factorial(v);
  return f;
}

namespace {

void enumerate(int dim, int pos, int left, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (pos == dim - 1) {
    cur[pos] = static_cast<std::int8_t>(left);
    out.push_back(cur);
    cur[pos] = 0;
    return;
  }
  for (int v = left; v >= 0; --v) {
    cur[pos] = static_cast<std::int8_t>(v);
    enumerate(dim, pos + 1, left - v, cur, out);
  }
  cur[pos] = 0;
}

MultiIndex bump(MultiIndex a, int j, int by) {
  a[j] = static_cast<std::int8_t>(a[j] + by);
  return a;
}

}  // namespace

std::vector<MultiIndex> multi_indices(int dim, int order) {
  std::vector<MultiIndex> out;
  if (dim <= 0) {
    if (order == 0) out.push_back(MultiIndex{});
    return out;
  }
  MultiIndex cur{};
  enumerate(dim, 0, order, cur, out);
  return out;
}

JetCoeff& JetCoeff::operator+=(const JetCoeff& o) {
  re += o.re;
  im += o.im;
  return *this;
}

JetCoeff& JetCoeff::operator-=(const JetCoeff& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

JetCoeff operator*(const JetCoeff& a, const JetCoeff& b) {
  JetCoeff r;
  if (a.im.is_zero() && b.im.is_zero()) {
    r.re = a.re * b.re;
    return r;
  }
  r.re = a.re * b.re - a.im * b.im;
  r.im = a.re * b.im + a.im * b.re;
  return r;
}

std::complex<double> JetCoeff::evaluate(std::span<const double> jet) const {
  return {re.evaluate(jet), im.evaluate(jet)};
}

std::string JetCoeff::to_string() const {
  if (im.is_zero()) return re.to_string();
  if (re.is_zero()) return "I*(" + im.to_string() + ")";
  return "(" + re.to_string() + ") + I*(" + im.to_string() + ")";
}

std::vector<SymbolTerm> canonicalize(const SymbolTerm& term, int n) {
  const int m = n - 2;
  if (m < 0 || term.key.xi[m] <= 1) return {term};
  const int e = term.key.xi[m];
  const int k = e / 2;
  std::vector<SymbolTerm> out;
  // xi_m^(2k+eps) = xi_m^eps sum_i C(k,i) |xi|^(2k-2i) (-S)^i, S = sum_{j<m} xi_j^2.
  for (int i = 0; i <= k; ++i) {
    Rational c = binomial(Rational(k), i) * ((i % 2) ? -1 : 1);
    for (const MultiIndex& split : multi_indices(m, i)) {
      Rational multinom = factorial(i) / multi_factorial(split);
      SymbolTerm t = term;
      t.key.xi[m] = static_cast<std::int8_t>(e % 2);
      for (int j = 0; j < m; ++j) t.key.xi[j] = static_cast<std::int8_t>(t.key.xi[j] + 2 * split[j]);
      t.key.w += 2 * (k - i);
      t.coeff = term.coeff * (c * multinom);
      out.push_back(std::move(t));
    }
  }
  return out;
}

SymbolSeries::SymbolSeries(int n, int cap, bool exp_xn, bool exp_yn)
    : n_(n), cap_(cap), exp_xn_(exp_xn), exp_yn_(exp_yn) {
  if (n < 2 || n > kMaxDimension) throw ParameterError("dimension n must lie in [2, " + std::to_string(kMaxDimension) + "]");
}

SymbolSeries SymbolSeries::constant(int n, int cap, const JetCoeff& c) {
  SymbolSeries s(n, cap);
  s.add(TermKey{}, c);
  return s;
}

SymbolSeries SymbolSeries::monomial(int n, int cap, const TermKey& key, const JetCoeff& c) {
  SymbolSeries s(n, cap);
  s.add(key, c);
  return s;
}

void SymbolSeries::add(const TermKey& key, const JetCoeff& c) {
  if (c.is_zero() || key.weight() > cap_) return;
  auto insert = [this](const TermKey& k, const JetCoeff& v) {
    auto [it, inserted] = terms_.try_emplace(k, v);
    if (!inserted) {
      it->second += v;
      if (it->second.is_zero()) terms_.erase(it);
    }
  };
  if (n_ < 2 || key.xi[n_ - 2] <= 1) {
    insert(key, c);
    return;
  }
  for (const SymbolTerm& t : canonicalize({c, key}, n_)) insert(t.key, t.coeff);
}

JetCoeff SymbolSeries::coefficient(const TermKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? JetCoeff() : it->second;
}

SymbolSeries& SymbolSeries::operator+=(const SymbolSeries& o) {
  if (o.n_ != n_) throw ParameterError("dimension mismatch in symbol sum");
  if (!o.terms_.empty() && (o.exp_xn_ != exp_xn_ || o.exp_yn_ != exp_yn_)) {
    if (terms_.empty()) {
      exp_xn_ = o.exp_xn_;
      exp_yn_ = o.exp_yn_;
    } else {
      throw KindError("adding symbols with different exponential factors");
    }
  }
  if (o.cap_ < cap_) *this = with_cap(o.cap_);
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

SymbolSeries& SymbolSeries::operator-=(const SymbolSeries& o) { return *this += o * JetCoeff(-1); }

SymbolSeries operator*(const SymbolSeries& a, const SymbolSeries& b) {
  if (a.n_ != b.n_) throw ParameterError("dimension mismatch in symbol product");
  if ((a.exp_xn_ && b.exp_xn_) || (a.exp_yn_ && b.exp_yn_))
    throw KindError("product would square a normal exponential");
  SymbolSeries r(a.n_, std::min(a.cap_, b.cap_), a.exp_xn_ || b.exp_xn_, a.exp_yn_ || b.exp_yn_);
  for (const auto& [ka, ca] : a.terms_) {
    if (ka.weight() > r.cap_) continue;
    for (const auto& [kb, cb] : b.terms_) {
      TermKey k;
      for (int j = 0; j < kMaxTangential; ++j) {
        k.xp[j] = static_cast<std::int8_t>(ka.xp[j] + kb.xp[j]);
        k.xi[j] = static_cast<std::int8_t>(ka.xi[j] + kb.xi[j]);
      }
      if (k.weight() > r.cap_) continue;
      k.w = ka.w + kb.w;
      k.xn = ka.xn + kb.xn;
      k.yn = ka.yn + kb.yn;
      r.add(k, ca * cb);
    }
  }
  return r;
}

SymbolSeries SymbolSeries::operator*(const JetCoeff& c) const {
  SymbolSeries r(n_, cap_, exp_xn_, exp_yn_);
  if (c.is_zero()) return r;
  for (const auto& [k, v] : terms_) r.add(k, v * c);
  return r;
}

bool SymbolSeries::operator==(const SymbolSeries& o) const {
  return n_ == o.n_ && cap_ == o.cap_ && terms_ == o.terms_ &&
         (terms_.empty() || (exp_xn_ == o.exp_xn_ && exp_yn_ == o.exp_yn_));
}

SymbolSeries SymbolSeries::conj() const {
  SymbolSeries r = *this;
  for (auto& [k, v] : r.terms_) v.im = -v.im;
  return r;
}

SymbolSeries SymbolSeries::with_cap(int cap) const {
  SymbolSeries r(n_, cap, exp_xn_, exp_yn_);
  for (const auto& [k, v] : terms_)
    if (k.weight() <= cap) r.terms_.emplace(k, v);
  return r;
}

SymbolSeries SymbolSeries::with_exp(bool exp_xn, bool exp_yn) const {
  SymbolSeries r = *this;
  r.exp_xn_ = exp_xn;
  r.exp_yn_ = exp_yn;
  return r;
}

SymbolSeries SymbolSeries::weight_part(int w) const {
  SymbolSeries r(n_, cap_, exp_xn_, exp_yn_);
  for (const auto& [k, v] : terms_)
    if (k.weight() == w) r.terms_.emplace(k, v);
  return r;
}

SymbolSeries SymbolSeries::swap_normal() const {
  SymbolSeries r(n_, cap_, exp_yn_, exp_xn_);
  for (const auto& [k, v] : terms_) {
    TermKey s = k;
    std::swap(s.xn, s.yn);
    r.terms_.emplace(s, v);
  }
  return r;
}

SymbolSeries SymbolSeries::shifted(int dw, int dq, int dr) const {
  SymbolSeries r(n_, cap_, exp_xn_, exp_yn_);
  for (const auto& [k, v] : terms_) {
    TermKey s = k;
    s.w += dw;
    s.xn += dq;
    s.yn += dr;
    if (s.xn < 0 || s.yn < 0) throw ParameterError("negative normal exponent");
    r.terms_.emplace(s, v);
  }
  return r;
}

std::complex<double> SymbolSeries::evaluate(std::span<const double> jet, std::span<const double> xp,
                                            std::span<const double> xi, double xn, double yn) const {
  const int d = n_ - 1;
  double w2 = 0.0;
  for (int j = 0; j < d; ++j) w2 += xi[j] * xi[j];
  const double w = std::sqrt(w2);
  std::complex<double> sum = 0.0;
  for (const auto& [k, c] : terms_) {
    double m = std::pow(w, k.w) * std::pow(xn, k.xn) * std::pow(yn, k.yn);
    for (int j = 0; j < d; ++j) m *= std::pow(xp[j], k.xp[j]) * std::pow(xi[j], k.xi[j]);
    sum += c.evaluate(jet) * m;
  }
  double e = 0.0;
  if (exp_xn_) e += xn;
  if (exp_yn_) e += yn;
  return sum * std::exp(-e * w);
}

std::string SymbolSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    for (int j = 0; j < n_ - 1; ++j)
      if (k.xp[j]) os << "*x" << j + 1 << "^" << int(k.xp[j]);
    for (int j = 0; j < n_ - 1; ++j)
      if (k.xi[j]) os << "*xi" << j + 1 << "^" << int(k.xi[j]);
    if (k.w) os << "*w^" << k.w;
    if (k.xn) os << "*xn^" << k.xn;
    if (k.yn) os << "*yn^" << k.yn;
  }
  if (first) os << "0";
  return os.str();
}

SymbolSeries d_xn(const SymbolSeries& s) {
  SymbolSeries r(s.n(), s.cap(), s.exp_xn(), s.exp_yn());
  for (const auto& [k, c] : s.terms()) {
    if (k.xn > 0) {
      TermKey t = k;
      t.xn -= 1;
      r.add(t, c * Rational(k.xn));
    }
    if (s.exp_xn()) {
      TermKey t = k;
      t.w += 1;
      r.add(t, -c);
    }
  }
  return r;
}

SymbolSeries d_yn(const SymbolSeries& s) { return d_xn(s.swap_normal()).swap_normal(); }

SymbolSeries d_xp(const SymbolSeries& s, int j) {
  SymbolSeries r(s.n(), s.cap() - 1, s.exp_xn(), s.exp_yn());
  for (const auto& [k, c] : s.terms()) {
    if (k.xp[j] == 0) continue;
    TermKey t = k;
    t.xp = bump(k.xp, j, -1);
    r.add(t, c * Rational(k.xp[j]));
  }
  return r;
}

SymbolSeries d_xi(const SymbolSeries& s, int j) {
  SymbolSeries r(s.n(), s.cap(), s.exp_xn(), s.exp_yn());
  for (const auto& [k, c] : s.terms()) {
    if (k.xi[j] > 0) {
      TermKey t = k;
      t.xi = bump(k.xi, j, -1);
      r.add(t, c * Rational(k.xi[j]));
    }
    TermKey up = k;
    up.xi = bump(k.xi, j, 1);
    if (k.w != 0) {
      TermKey t = up;
      t.w -= 2;
      r.add(t, c * Rational(k.w));
    }
    if (s.exp_xn()) {
      TermKey t = up;
      t.w -= 1;
      t.xn += 1;
      r.add(t, -c);
    }
    if (s.exp_yn()) {
      TermKey t = up;
      t.w -= 1;
      t.yn += 1;
      r.add(t, -c);
    }
  }
  return r;
}

SymbolSeries big_d_xi(const SymbolSeries& s, int j) { return d_xi(s, j) * JetCoeff::imaginary(JetPoly(-1)); }

SymbolSeries d_xp(const SymbolSeries& s, const MultiIndex& a) {
  SymbolSeries r = s;
  for (int j = 0; j < kMaxTangential; ++j)
    for (int p = 0; p < a[j]; ++p) r = d_xp(r, j);
  return r;
}

SymbolSeries big_d_xi(const SymbolSeries& s, const MultiIndex& a) {
  SymbolSeries r = s;
  for (int j = 0; j < kMaxTangential; ++j)
    for (int p = 0; p < a[j]; ++p) r = big_d_xi(r, j);
  return r;
}

SymbolSeries series_power(const SymbolSeries& u, const Rational& e) {
  if (!u.weight_part(0).is_zero()) throw ParameterError("series_power needs a perturbation without weight-0 part");
  SymbolSeries one = SymbolSeries::constant(u.n(), u.cap(), JetCoeff(1));
  SymbolSeries out = one;
  SymbolSeries pw = one;
  for (int k = 1; k <= u.cap(); ++k) {
    pw = pw * u;
    if (pw.is_zero()) break;
    out += pw * binomial(e, k);
  }
  return out;
}

SymbolSeries series_exp(const SymbolSeries& u) {
  if (!u.weight_part(0).is_zero()) throw ParameterError("series_exp needs a perturbation without weight-0 part");
  SymbolSeries out = SymbolSeries::constant(u.n(), u.cap(), JetCoeff(1));
  SymbolSeries pw = out;
  for (int k = 1; k <= u.cap(); ++k) {
    pw = pw * u;
    if (pw.is_zero()) break;
    out += pw * (Rational(1) / factorial(k));
  }
  return out;
}

SymbolSeries series_inverse(const SymbolSeries& s) {
  if (s.exp_xn() || s.exp_yn()) throw KindError("cannot invert a symbol carrying a normal exponential");
  SymbolSeries lead = s.weight_part(0);
  if (lead.is_zero()) throw EllipticityError("leading symbol vanishes at the centre");
  if (lead.size() != 1) throw EllipticityError("leading symbol is not a single power of |xi|");
  const auto& [key, c] = *lead.terms().begin();
  if (degree(key.xi) != 0 || key.xn != 0 || key.yn != 0 || !c.im.is_zero() || !c.re.is_constant())
    throw EllipticityError("leading symbol is not a rational multiple of a power of |xi|");
  const Rational c0 = c.re.constant_term();
  TermKey inv_key;
  inv_key.w = -key.w;
  SymbolSeries inv_lead = SymbolSeries::monomial(s.n(), s.cap(), inv_key, JetCoeff(Rational(1) / c0));
  SymbolSeries eps = inv_lead * s - SymbolSeries::constant(s.n(), s.cap(), JetCoeff(1));
  return inv_lead * series_power(eps, Rational(-1));
}

std::string_view to_string(SymbolKind k) {
  switch (k) {
    case SymbolKind::Poisson: return "poisson";
    case SymbolKind::Trace: return "trace";
    case SymbolKind::Psdo: return "psdo";
    case SymbolKind::Green: return "green";
  }
  return "psdo";
}

SymbolKind parse_symbol_kind(std::string_view s) {
  if (s == "poisson") return SymbolKind::Poisson;
  if (s == "trace") return SymbolKind::Trace;
  if (s == "psdo") return SymbolKind::Psdo;
  if (s == "green") return SymbolKind::Green;
  throw ParameterError("unknown symbol kind: " + std::string(s));
}

bool carries_exp_xn(SymbolKind k) { return k == SymbolKind::Poisson || k == SymbolKind::Trace || k == SymbolKind::Green; }
bool carries_exp_yn(SymbolKind k) { return k == SymbolKind::Green; }

BoundarySymbol BoundarySymbol::centre() const {
  BoundarySymbol c = *this;
  for (auto& g : c.grades) g = g.centre();
  return c;
}

BoundarySymbol derive(const BoundarySymbol& s, DerivVar var, int index) {
  if ((var == DerivVar::XPrime || var == DerivVar::Xi) && (index < 0 || index >= s.n - 1))
    throw ParameterError("tangential index out of range");
  if (var == DerivVar::YN && s.kind != SymbolKind::Green) throw KindError("only Green symbols depend on y_n");
  if (var == DerivVar::XN && (s.kind == SymbolKind::Psdo)) throw KindError("boundary symbols do not depend on x_n");
  BoundarySymbol out{s.kind, s.n, s.order, {}};
  if (var == DerivVar::XPrime) {
    out.order = s.order + 1;
    out.grades.push_back(SymbolSeries(s.n, s.grades.empty() ? 0 : s.grades[0].cap(), carries_exp_xn(s.kind),
                                      carries_exp_yn(s.kind)));
    for (const SymbolSeries& g : s.grades) out.grades.push_back(d_xp(g, index));
    out.grades.pop_back();
    return out;
  }
  out.order = var == DerivVar::Xi ? s.order - 1 : s.order + 1;
  for (const SymbolSeries& g : s.grades) {
    switch (var) {
      case DerivVar::Xi: out.grades.push_back(d_xi(g, index)); break;
      case DerivVar::XN: out.grades.push_back(d_xn(g)); break;
      default: out.grades.push_back(d_yn(g)); break;
    }
  }
  return out;
}

std::string check_homogeneity(const BoundarySymbol& s) {
  for (int j = 0; j <= s.depth(); ++j) {
    for (const auto& [k, c] : s.grades[j].terms()) {
      std::string where = "grade " + std::to_string(j) + ", term " + SymbolSeries::monomial(s.n, s.grades[j].cap(), k, c).to_string();
      if (k.homogeneity() != s.degree(j)) return "degree mismatch at " + where;
      const int want = j + k.weight();
      if (!c.re.homogeneous_of_weight(want) || !c.im.homogeneous_of_weight(want)) return "jet weight mismatch at " + where;
    }
  }
  return {};
}

namespace {

enum class Rule { Product, ProductRename, Integral };

struct Composition {
  SymbolKind kind;
  Rule rule;
};

Composition composition_rule(SymbolKind a, SymbolKind b) {
  using K = SymbolKind;
  if (a == K::Poisson && b == K::Psdo) return {K::Poisson, Rule::Product};
  if (a == K::Psdo && b == K::Trace) return {K::Trace, Rule::Product};
  if (a == K::Psdo && b == K::Psdo) return {K::Psdo, Rule::Product};
  if (a == K::Trace && b == K::Poisson) return {K::Psdo, Rule::Integral};
  if (a == K::Poisson && b == K::Trace) return {K::Green, Rule::ProductRename};
  throw KindError("cannot compose " + std::string(to_string(a)) + " with " + std::string(to_string(b)));
}

// Derivatives D^alpha (or d_x'^alpha) of one grade for all |alpha| <= max_order.
class DerivativeTable {
 public:
  DerivativeTable(const SymbolSeries& base, int dim, int max_order, bool xi_side) : dim_(dim) {
    table_.emplace(MultiIndex{}, base);
    for (int o = 1; o <= max_order; ++o) {
      for (const MultiIndex& a : multi_indices(dim, o)) {
        int j = 0;
        while (a[j] == 0) ++j;
        const SymbolSeries& prev = table_.at(bump(a, j, -1));
        table_.emplace(a, xi_side ? big_d_xi(prev, j) : d_xp(prev, j));
      }
    }
  }
  const SymbolSeries& at(const MultiIndex& a) const { return table_.at(a); }

 private:
  int dim_;
  std::map<MultiIndex, SymbolSeries> table_;
};

}  // namespace

SymbolSeries xn_integral_compose(const SymbolSeries& t, const SymbolSeries& k, const Rational& alpha) {
  if (!t.exp_xn() || !k.exp_xn() || t.exp_yn() || k.exp_yn())
    throw KindError("x_n integral needs a trace and a Poisson factor");
  const int cap = std::min(t.cap(), k.cap());
  SymbolSeries r(t.n(), cap);
  std::map<int, Rational> moment;  // (alpha+1)_q / 2^(q+1)
  for (const auto& [ka, ca] : t.terms()) {
    if (ka.weight() > cap) continue;
    for (const auto& [kb, cb] : k.terms()) {
      TermKey key;
      for (int j = 0; j < kMaxTangential; ++j) {
        key.xp[j] = static_cast<std::int8_t>(ka.xp[j] + kb.xp[j]);
        key.xi[j] = static_cast<std::int8_t>(ka.xi[j] + kb.xi[j]);
      }
      if (key.weight() > cap) continue;
      const int q = ka.xn + kb.xn;
      key.w = ka.w + kb.w - q - 1;
      auto it = moment.find(q);
      if (it == moment.end()) it = moment.emplace(q, pochhammer(alpha + 1, q) / power(Rational(2), q + 1)).first;
      r.add(key, (ca * cb) * it->second);
    }
  }
  return r;
}

BoundarySymbol leibniz_compose(const BoundarySymbol& a, const BoundarySymbol& b, int depth,
                               const Rational& normal_weight) {
  if (a.n != b.n) throw ParameterError("dimension mismatch in composition");
  if (depth < 0 || depth > a.depth() || depth > b.depth())
    throw TruncationError("composition depth " + std::to_string(depth) + " exceeds operand depth");
  const Composition rule = composition_rule(a.kind, b.kind);
  if (normal_weight != 0 && rule.rule != Rule::Integral) throw KindError("normal weight applies to trace∘Poisson only");
  const int dim = a.n - 1;
  std::vector<DerivativeTable> da, db;
  for (int i = 0; i <= depth; ++i) da.emplace_back(a.grades[i], dim, depth - i, true);
  for (int j = 0; j <= depth; ++j) db.emplace_back(b.grades[j], dim, depth - j, false);
  BoundarySymbol out{rule.kind, a.n, a.order + b.order, {}};
  for (int m = 0; m <= depth; ++m) {
    SymbolSeries acc(a.n, std::min(a.grades[0].cap(), b.grades[0].cap()) - m, carries_exp_xn(rule.kind),
                     carries_exp_yn(rule.kind));
    for (int i = 0; i <= m; ++i) {
      for (int j = 0; i + j <= m; ++j) {
        for (const MultiIndex& al : multi_indices(dim, m - i - j)) {
          const SymbolSeries& left = da[i].at(al);
          const SymbolSeries& right = db[j].at(al);
          const Rational inv = Rational(1) / multi_factorial(al);
          switch (rule.rule) {
            case Rule::Product: acc += (left * right) * inv; break;
            case Rule::ProductRename: acc += (left * right.swap_normal()) * inv; break;
            case Rule::Integral: acc += xn_integral_compose(left, right, normal_weight) * inv; break;
          }
        }
      }
    }
    out.grades.push_back(std::move(acc));
  }
  return out;
}

BoundarySymbol adjoint_symbol(const BoundarySymbol& s, int depth) {
  if (depth < 0 || depth > s.depth()) throw TruncationError("adjoint depth exceeds symbol depth");
  SymbolKind kind = s.kind;
  if (s.kind == SymbolKind::Poisson) kind = SymbolKind::Trace;
  if (s.kind == SymbolKind::Trace) kind = SymbolKind::Poisson;
  const int dim = s.n - 1;
  std::vector<SymbolSeries> base;
  for (int m = 0; m <= depth; ++m) {
    SymbolSeries g = s.grades[m].conj();
    if (s.kind == SymbolKind::Green) g = g.swap_normal();
    base.push_back(g);
  }
  BoundarySymbol out{kind, s.n, s.order, {}};
  for (int j = 0; j <= depth; ++j) {
    SymbolSeries acc(s.n, s.grades[0].cap() - j, carries_exp_xn(kind), carries_exp_yn(kind));
    for (int m = 0; m <= j; ++m)
      for (const MultiIndex& al : multi_indices(dim, j - m))
        acc += big_d_xi(d_xp(base[m], al), al) * (Rational(1) / multi_factorial(al));
    out.grades.push_back(std::move(acc));
  }
  return out;
}

}  // namespace harmkern
