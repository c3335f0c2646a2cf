#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "harmkern/bergman_chain.hpp"
#include "harmkern/domain.hpp"
#include "harmkern/symbol.hpp"

namespace harmkern {

// Exact value q * pi^(pi_power / 2).
struct PiRational {
  Rational q;
  int half_pi_power = 0;

  bool is_rational() const { return q == 0 || half_pi_power == 0; }
};

// Gamma(m/2) for integer m, exactly; nullopt at the poles m <= 0 even.
std::optional<PiRational> gamma_half(int m);

// c_n = Gamma(n/2) / pi^(n/2).
PiRational dimension_constant(int n);
double dimension_constant_value(int n);

// Radial variable of an expansion: x for Poisson kernels (t = x_n/|x|),
// green for Bergman kernels (u = x_n/|x-y~|, v = y_n/|x-y~|), boundary for
// kernels on the boundary diagonal (no t dependence).
enum class RadialVar { X, Green, Boundary };
std::string_view to_string(RadialVar v);
RadialVar parse_radial_var(std::string_view s);

// Polynomial in (u, v) over JetPoly. Poisson expansions use u = t only.
class KernelCoeff {
 public:
  using Terms = std::map<std::pair<int, int>, JetPoly>;

  KernelCoeff() = default;
  static KernelCoeff monomial(int a, int b, const JetPoly& c);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(int a, int b, const JetPoly& c);
  KernelCoeff& operator+=(const KernelCoeff& o);
  friend KernelCoeff operator+(KernelCoeff a, const KernelCoeff& b) { return a += b; }
  KernelCoeff operator*(const JetPoly& c) const;
  bool operator==(const KernelCoeff& o) const = default;
  // u <-> v.
  KernelCoeff swapped() const;
  double evaluate(std::span<const double> jet, double u, double v = 0.0) const;
  std::string to_string(RadialVar var) const;

 private:
  Terms terms_;
};

struct KernelTerm {
  KernelCoeff coeff;
  int power = 0;
  bool log = false;

  bool operator==(const KernelTerm& o) const = default;
};

// A family whose non-log part is not a polynomial in t; reported, not dropped.
struct KernelRemainder {
  int power = 0;
  int q = 0;  // x_n exponent
  int r = 0;  // y_n exponent
  int p = 0;  // |xi| exponent
  JetPoly coeff;

  bool operator==(const KernelRemainder& o) const = default;
};

// sum c_n * coeff * rad^power (* log rad), modulo smooth functions.
struct KernelExpansion {
  RadialVar var = RadialVar::X;
  int n = 3;
  std::vector<KernelTerm> terms;  // sorted by (power, log)
  std::vector<KernelRemainder> remainders;

  void add(const KernelCoeff& c, int power, bool log);
  void add(const KernelExpansion& o, const JetPoly& scale);
  const KernelTerm* find(int power, bool log) const;
  KernelCoeff coefficient(int power, bool log) const;
  // Powers whose non-log coefficient is incomplete because of a remainder.
  bool power_complete(int power) const;
  double evaluate(std::span<const double> jet, double u, double v, double rad) const;
  bool operator==(const KernelExpansion& o) const = default;
};

// Inverse Fourier transform over R^{n-1} of |xi|^p e^{-x_n|xi|}, as log part Q
// and regular part U, both t-polynomials against |x|^(-(p+n-1)).
struct RadialFamily {
  int n = 3;
  int p = 0;
  int power = 0;
  std::map<int, Rational> log_part;
  std::map<int, Rational> regular_part;
  bool regular_exact = true;
};
RadialFamily radial_family(int p, int n);

// x_n^q |xi|^p e^{-x_n|xi|} in the Poisson variable.
KernelExpansion radial_ift_term(int q, int p, int n);
// x_n^q y_n^r |xi|^p e^{-(x_n+y_n)|xi|} in the Green variable.
KernelExpansion green_ift_term(int q, int r, int p, int n);
// |xi|^p on the boundary, |y'|^(-(p+n-1)) with a log at the lattice points.
KernelExpansion boundary_ift_term(int p, int n);

KernelExpansion poisson_kernel_expansion(const DomainSpec& dom, int N, int W = -1);
KernelExpansion bergman_kernel_expansion(const DomainSpec& dom, int N, int W = -1);
// Kernel of Lambda^{-1} on the boundary diagonal from p(0, xi).
KernelExpansion lambda_inverse_boundary_kernel(const PsdoExpansion& p);
KernelExpansion lambda_inverse_boundary_kernel(const DomainSpec& dom, int N, int W = -1,
                                               BoundaryMeasure measure = BoundaryMeasure::Surface);

// Transforms centre values of a symbol (Poisson, Green, or Psdo) grade by grade.
KernelExpansion transform_symbol(const BoundarySymbol& s);

struct LogTerm {
  int power = 0;
  KernelCoeff coeff;
};
// Lowest log term; nullopt when no log term is present.
std::optional<LogTerm> log_coefficient(const KernelExpansion& e);

}  // namespace harmkern
