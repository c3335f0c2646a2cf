#include "harmkern/reference_kernels.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "harmkern/errors.hpp"
#include "harmkern/kernel_transform.hpp"

namespace harmkern {

namespace {

constexpr double kEps = 1e-14;

double rgamma(double x) {
  if (x <= 0 && x == std::floor(x)) return 0.0;
  return 1.0 / std::tgamma(x);
}

double series_2f1(double a, double b, double c, double z) {
  double term = 1.0, sum = 1.0;
  for (int k = 0; k < 100000; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * z;
    sum += term;
    if (term == 0.0 || std::abs(term) < kEps * 1e-2 * std::abs(sum)) return sum;
  }
  throw std::runtime_error("2F1 series did not converge");
}

void check_dim(const Point& x, const Point& y) {
  if (x.size() < 2 || x.size() != y.size()) throw ParameterError("points must share a dimension >= 2");
}

Point reflect(const Point& y) {
  Point r = y;
  r(r.size() - 1) = -r(r.size() - 1);
  return r;
}

}  // namespace

std::string_view to_string(ClosedDomain d) { return d == ClosedDomain::Ball ? "ball" : "halfspace"; }

ClosedDomain parse_closed_domain(std::string_view s) {
  if (s == "ball") return ClosedDomain::Ball;
  if (s == "halfspace") return ClosedDomain::Halfspace;
  throw ParameterError("unknown domain: " + std::string(s));
}

double hyp2f1(double a, double b, double c, double z) {
  if (!(z < 1.0)) throw ParameterError("2F1 argument must be below 1");
  if (std::abs(z) <= 0.5) return series_2f1(a, b, c, z);
  if (z >= -2.0) {
    // Pfaff: z/(z-1) lies in (1/3, 2/3].
    if (z < 0) return std::pow(1.0 - z, -a) * series_2f1(a, c - b, c, z / (z - 1.0));
    if (z <= 0.5) return series_2f1(a, b, c, z);
    throw ParameterError("2F1 argument in (1/2, 1) is not needed here");
  }
  // Connection formula around infinity; needs a - b non-integral.
  if (std::abs((a - b) - std::round(a - b)) < 1e-12) throw ParameterError("2F1 at z < -2 with integral a-b");
  const double w = 1.0 / z;
  double t1 = std::tgamma(c) * std::tgamma(b - a) * rgamma(b) * rgamma(c - a) * std::pow(-z, -a) *
              series_2f1(a, a - c + 1.0, a - b + 1.0, w);
  double t2 = std::tgamma(c) * std::tgamma(a - b) * rgamma(a) * rgamma(c - b) * std::pow(-z, -b) *
              series_2f1(b, b - c + 1.0, b - a + 1.0, w);
  return t1 + t2;
}

double eval_poisson_closed(ClosedDomain d, const Point& x, const Point& zeta) {
  check_dim(x, zeta);
  const int n = static_cast<int>(x.size());
  const double cn = dimension_constant_value(n);
  const double dist = (x - zeta).norm();
  if (d == ClosedDomain::Halfspace) {
    if (std::abs(zeta(n - 1)) > 1e-12) throw ParameterError("zeta must lie on the boundary");
    if (x(n - 1) < 0) throw ParameterError("x must lie in the closed half-space");
    if (dist == 0.0) throw SingularPointError("x coincides with zeta");
    return cn * x(n - 1) / std::pow(dist, n);
  }
  if (std::abs(zeta.norm() - 1.0) > 1e-12) throw ParameterError("zeta must lie on the unit sphere");
  if (x.norm() > 1.0) throw ParameterError("x must lie in the closed unit ball");
  if (dist == 0.0) throw SingularPointError("x coincides with zeta");
  return 0.5 * cn * (1.0 - x.squaredNorm()) / std::pow(dist, n);
}

double eval_poisson_tangent_ball(double radius, const Point& x, const Point& zeta) {
  check_dim(x, zeta);
  if (!(radius > 0)) throw ParameterError("radius must be positive");
  const int n = static_cast<int>(x.size());
  Point centre = Point::Zero(n);
  centre(n - 1) = radius;
  return eval_poisson_closed(ClosedDomain::Ball, (x - centre) / radius, (zeta - centre) / radius) / std::pow(radius, n - 1);
}

double eval_bergman_closed(ClosedDomain d, const Point& x, const Point& y) {
  check_dim(x, y);
  const int n = static_cast<int>(x.size());
  const double cn = dimension_constant_value(n);
  if (d == ClosedDomain::Halfspace) {
    if (x(n - 1) < 0 || y(n - 1) < 0) throw ParameterError("points must lie in the closed half-space");
    const double r = (x - reflect(y)).norm();
    if (r == 0.0) throw SingularPointError("boundary diagonal");
    const double s = x(n - 1) + y(n - 1);
    return 2.0 * cn * (n * s * s - r * r) / std::pow(r, n + 2);
  }
  const double xx = x.squaredNorm(), yy = y.squaredNorm(), xy = x.dot(y);
  if (xx > 1.0 || yy > 1.0) throw ParameterError("points must lie in the closed unit ball");
  const double den = 1.0 - 2.0 * xy + xx * yy;
  if (den <= 0.0) throw SingularPointError("boundary diagonal");
  const double num = (n - 4) * xx * xx * yy * yy + (8.0 * xy - 2.0 * n - 4.0) * xx * yy + n;
  return 0.5 * cn * num / std::pow(den, n / 2.0 + 1.0);
}

double eval_bergman_tangent_ball(double radius, const Point& x, const Point& y) {
  check_dim(x, y);
  if (!(radius > 0)) throw ParameterError("radius must be positive");
  const int n = static_cast<int>(x.size());
  Point centre = Point::Zero(n);
  centre(n - 1) = radius;
  return eval_bergman_closed(ClosedDomain::Ball, (x - centre) / radius, (y - centre) / radius) / std::pow(radius, n);
}

double eval_weighted_halfspace(double alpha, double g0, const Point& x, const Point& y) {
  check_dim(x, y);
  if (!(alpha > -1.0)) throw ParameterError("alpha must exceed -1");
  const int n = static_cast<int>(x.size());
  const double t = x(n - 1) + y(n - 1);
  if (!(t > 0.0)) throw SingularPointError("x_n + y_n must be positive");
  const double rho2 = (x.head(n - 1) - y.head(n - 1)).squaredNorm();
  const double a = (n + alpha) / 2.0, b = (n + alpha + 1.0) / 2.0, c = (n - 1) / 2.0;
  const double log_pref = (2.0 * alpha + 2.0) * std::log(2.0) + std::lgamma(a) + std::lgamma(b) - (n / 2.0) * std::log(M_PI) -
                          std::lgamma(c) - std::lgamma(alpha + 1.0) - g0 - (n + alpha) * std::log(t);
  return std::exp(log_pref) * hyp2f1(a, b, c, -rho2 / (t * t));
}

}  // namespace harmkern
