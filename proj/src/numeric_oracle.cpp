#include "harmkern/numeric_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include <Eigen/Sparse>
#include <boost/math/tools/roots.hpp>

#include "harmkern/errors.hpp"
#include "harmkern/kernel_transform.hpp"

namespace harmkern {

namespace {

const QuadratureRule& panel_rule() {
  static const QuadratureRule rule = gauss_legendre(24);
  return rule;
}

// Gamma(nu+1) (2/s)^nu J_nu(s), equal to 1 at s = 0.
double normalised_bessel(int d, double s) {
  if (d == 1) return std::cos(s);
  const double nu = d / 2.0 - 1.0;
  if (s < 1e-6) return 1.0 - s * s / (4.0 * (nu + 1.0));
  return std::tgamma(nu + 1.0) * std::pow(2.0 / s, nu) * std::cyl_bessel_j(nu, s);
}

double unit_sphere_area(int dim) { return 2.0 / dimension_constant_value(dim); }

}  // namespace

int thread_count() {
  if (const char* env = std::getenv("HARMKERN_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int count, const std::function<void(int)>& fn) {
  const int workers = std::min(thread_count(), std::max(count, 1));
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int i = w; i < count; i += workers) fn(i);
    });
}

QuadratureRule gauss_legendre(int m) {
  if (m < 1) throw ParameterError("quadrature order must be positive");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
  for (int k = 1; k < m; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  QuadratureRule r{es.eigenvalues(), Eigen::VectorXd(m)};
  for (int k = 0; k < m; ++k) r.weights(k) = 2.0 * es.eigenvectors()(0, k) * es.eigenvectors()(0, k);
  return r;
}

double Cutoff::operator()(double w) const {
  if (w <= w0) return 0.0;
  if (w >= w1) return 1.0;
  const double u = (w - w0) / (w1 - w0);
  const double a = std::exp(-1.0 / u), b = std::exp(-1.0 / (1.0 - u));
  return a / (a + b);
}

double radial_ift_numeric(int q, int p, int n, double xn, double rho, const Cutoff& cutoff) {
  if (n < 2) throw ParameterError("dimension must be at least 2");
  if (!(xn > 0.0) || rho < 0.0) throw ParameterError("need x_n > 0 and rho >= 0");
  const int d = n - 1;
  const QuadratureRule& rule = panel_rule();
  auto integrand = [&](double w) {
    return cutoff(w) * std::pow(w, p + d - 1) * std::exp(-xn * w) * normalised_bessel(d, w * rho);
  };
  auto panel = [&](double a, double b) {
    double s = 0.0;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int k = 0; k < rule.nodes.size(); ++k) s += rule.weights(k) * integrand(mid + half * rule.nodes(k));
    return s * half;
  };
  double sum = 0.0;
  const int ramp = 16;
  for (int k = 0; k < ramp; ++k)
    sum += panel(cutoff.w0 + (cutoff.w1 - cutoff.w0) * k / ramp, cutoff.w0 + (cutoff.w1 - cutoff.w0) * (k + 1) / ramp);
  double len = 0.5 / xn;
  if (rho > 0) len = std::min(len, M_PI / rho);
  len = std::min(len, 2.0);
  double a = cutoff.w1;
  int quiet = 0;
  while (quiet < 3) {
    const double c = panel(a, a + len);
    sum += c;
    a += len;
    quiet = (xn * a > 30.0 && std::abs(c) < 1e-18 * std::max(std::abs(sum), 1e-300)) ? quiet + 1 : 0;
    if (a * xn > 2000.0) break;
  }
  const double nu = d / 2.0 - 1.0;
  const double pref = std::pow(2.0 * M_PI, -d / 2.0) / (std::pow(2.0, nu) * std::tgamma(nu + 1.0));
  return pref * std::pow(xn, q) * sum;
}

FdDomain FdDomain::ball(const Point& centre, double radius) {
  if (!(radius > 0)) throw ParameterError("radius must be positive");
  const int n = static_cast<int>(centre.size());
  if (n < 2 || n > 3) throw ParameterError("finite differences support n = 2 and 3");
  FdDomain d;
  d.n = n;
  d.level = [centre, radius](const Point& x) { return (x - centre).norm() - radius; };
  d.lower = centre.array() - radius;
  d.upper = centre.array() + radius;
  return d;
}

FdDomain FdDomain::model(int n, std::vector<double> jet, double radius) {
  if (n < 2 || n > 3) throw ParameterError("finite differences support n = 2 and 3");
  if (!(radius > 0)) throw ParameterError("radius must be positive");
  Point centre = Point::Zero(n);
  centre(n - 1) = radius;
  FdDomain d;
  d.n = n;
  d.level = [jet = std::move(jet), centre, radius, n](const Point& x) {
    const double s = x.head(n - 1).squaredNorm();
    double phi = 0.0, term = 1.0;
    for (std::size_t k = 0; k < jet.size(); ++k) {
      term *= s / static_cast<double>(k + 1);
      phi += jet[k] * term;
    }
    return std::max(phi - x(n - 1), (x - centre).norm() - radius);
  };
  d.lower = centre.array() - radius;
  d.upper = centre.array() + radius;
  return d;
}

std::size_t LatticeHash::operator()(const LatticeIndex& i) const {
  std::size_t h = 1469598103934665603ull;
  for (int v : i) h = (h ^ static_cast<std::size_t>(v + 1000003)) * 1099511628211ull;
  return h;
}

Point FdSolution::position(const LatticeIndex& i) const {
  Point p(n);
  for (int k = 0; k < n; ++k) p(k) = i[k] * h;
  return p;
}

std::optional<double> FdSolution::value(const LatticeIndex& i) const {
  auto it = index.find(i);
  if (it == index.end()) return std::nullopt;
  return values(it->second);
}

bool FdSolution::maximum_principle(double slack) const {
  const double scale = std::max({1.0, std::abs(boundary_min), std::abs(boundary_max)});
  return values.minCoeff() >= boundary_min - slack * scale && values.maxCoeff() <= boundary_max + slack * scale;
}

double FdSolution::max_error(const std::function<double(const Point&)>& exact) const {
  double e = 0.0;
  for (std::size_t k = 0; k < nodes.size(); ++k) e = std::max(e, std::abs(values(k) - exact(position(nodes[k]))));
  return e;
}

FdSolution solve_dirichlet_fd(const FdDomain& domain, double h, const std::function<double(const Point&)>& g) {
  if (!(h > 0)) throw ParameterError("mesh width must be positive");
  const int n = domain.n;
  FdSolution sol;
  sol.n = n;
  sol.h = h;
  LatticeIndex lo{0, 0, 0}, hi{0, 0, 0};
  for (int k = 0; k < n; ++k) {
    lo[k] = static_cast<int>(std::ceil(domain.lower(k) / h - 1e-9));
    hi[k] = static_cast<int>(std::floor(domain.upper(k) / h + 1e-9));
  }
  for (int i = lo[0]; i <= hi[0]; ++i)
    for (int j = lo[1]; j <= hi[1]; ++j)
      for (int l = (n == 3 ? lo[2] : 0); l <= (n == 3 ? hi[2] : 0); ++l) {
        LatticeIndex idx{i, j, l};
        if (domain.level(sol.position(idx)) < 0.0) {
          sol.index.emplace(idx, static_cast<int>(sol.nodes.size()));
          sol.nodes.push_back(idx);
        }
      }
  const int N = static_cast<int>(sol.nodes.size());
  if (N == 0) throw ParameterError("no interior grid nodes; refine the mesh");
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(N) * (2 * n + 1));
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(N);
  sol.boundary_min = std::numeric_limits<double>::infinity();
  sol.boundary_max = -std::numeric_limits<double>::infinity();
  for (int row = 0; row < N; ++row) {
    const LatticeIndex& idx = sol.nodes[row];
    const Point x = sol.position(idx);
    double diag = 0.0;
    for (int k = 0; k < n; ++k) {
      double theta[2];
      int col[2];
      double bval[2];
      for (int s = 0; s < 2; ++s) {
        LatticeIndex nb = idx;
        nb[k] += s == 0 ? 1 : -1;
        auto it = sol.index.find(nb);
        if (it != sol.index.end()) {
          theta[s] = 1.0;
          col[s] = it->second;
          continue;
        }
        Point dir = Point::Zero(n);
        dir(k) = (s == 0 ? h : -h);
        auto f = [&](double a) { return domain.level(x + a * dir); };
        double th = 1.0;
        if (f(1.0) > 0.0) {
          std::uintmax_t iters = 200;
          auto r = boost::math::tools::toms748_solve(f, 0.0, 1.0, boost::math::tools::eps_tolerance<double>(52), iters);
          th = 0.5 * (r.first + r.second);
        }
        theta[s] = std::max(th, 1e-12);
        col[s] = -1;
        bval[s] = g(x + th * dir);
        sol.boundary_min = std::min(sol.boundary_min, bval[s]);
        sol.boundary_max = std::max(sol.boundary_max, bval[s]);
      }
      const double sum = theta[0] + theta[1];
      for (int s = 0; s < 2; ++s) {
        const double a = 2.0 / (h * h * theta[s] * sum);
        if (col[s] >= 0) trip.emplace_back(row, col[s], -a);
        else rhs(row) += a * bval[s];
      }
      diag += 2.0 / (h * h * theta[0] * theta[1]);
    }
    trip.emplace_back(row, row, diag);
  }
  Eigen::SparseMatrix<double> A(N, N);
  A.setFromTriplets(trip.begin(), trip.end());
  A.makeCompressed();
  if (N <= 100000) {
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() != Eigen::Success) throw std::runtime_error("finite-difference matrix is singular");
    sol.values = lu.solve(rhs);
    sol.solver = "sparse LU";
  } else {
    Eigen::BiCGSTAB<Eigen::SparseMatrix<double>, Eigen::IncompleteLUT<double>> it;
    it.preconditioner().setDroptol(1e-5);
    it.preconditioner().setFillfactor(20);
    it.setTolerance(1e-13);
    it.setMaxIterations(5000);
    it.compute(A);
    if (it.info() != Eigen::Success) throw std::runtime_error("preconditioner setup failed");
    sol.values = it.solve(rhs);
    if (it.info() != Eigen::Success) throw std::runtime_error("BiCGSTAB did not converge");
    sol.solver = "BiCGSTAB+ILUT (" + std::to_string(it.iterations()) + " iterations)";
  }
  return sol;
}

double ConvergenceStudy::min_order() const {
  return order.empty() ? 0.0 : *std::min_element(order.begin(), order.end());
}

ConvergenceStudy fd_convergence(const FdDomain& domain, const std::vector<double>& hs,
                                const std::function<double(const Point&)>& exact) {
  ConvergenceStudy st;
  for (double h : hs) {
    st.h.push_back(h);
    st.error.push_back(solve_dirichlet_fd(domain, h, exact).max_error(exact));
  }
  for (std::size_t k = 1; k < hs.size(); ++k)
    st.order.push_back(std::log(st.error[k - 1] / st.error[k]) / std::log(st.h[k - 1] / st.h[k]));
  return st;
}

FdSolution fd_poisson_kernel_ball(const Point& centre, double radius, const Point& zeta, double eps, double h) {
  const int n = static_cast<int>(centre.size());
  if (!(eps > 0 && eps < radius)) throw ParameterError("bump radius must lie in (0, R)");
  auto bump = [eps](double s) {
    const double u = s / eps;
    return u < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0;
  };
  // Mass over the sphere: chord s = 2R sin(gamma/2), dsigma = |S^{n-2}| (R sin gamma)^{n-2} R dgamma.
  const double gmax = 2.0 * std::asin(eps / (2.0 * radius));
  const QuadratureRule& rule = panel_rule();
  double mass = 0.0;
  const int panels = 16;
  for (int p = 0; p < panels; ++p) {
    const double a = gmax * p / panels, b = gmax * (p + 1) / panels;
    for (int k = 0; k < rule.nodes.size(); ++k) {
      const double gam = 0.5 * (a + b) + 0.5 * (b - a) * rule.nodes(k);
      mass += 0.5 * (b - a) * rule.weights(k) * bump(2.0 * radius * std::sin(gam / 2.0)) *
              std::pow(radius * std::sin(gam), n - 2) * radius;
    }
  }
  mass *= unit_sphere_area(n - 1);
  return solve_dirichlet_fd(FdDomain::ball(centre, radius), h,
                            [&](const Point& x) { return bump((x - zeta).norm()) / mass; });
}

double ball_lambda_eigenvalue(int n, int l) { return 1.0 / (2.0 * l + n); }

double ball_spectral_bergman(int n, int lmax, const Point& x, const Point& y) {
  if (n < 2 || x.size() != n || y.size() != n) throw ParameterError("points must have dimension n >= 2");
  if (lmax < 0) throw ParameterError("lmax must be non-negative");
  if (x.norm() >= 1.0 || y.norm() >= 1.0) throw ParameterError("points must lie in the open unit ball");
  const double rx = x.norm(), ry = y.norm();
  const double c = (rx > 0 && ry > 0) ? std::clamp(x.dot(y) / (rx * ry), -1.0, 1.0) : 1.0;
  const double area = unit_sphere_area(n);
  double sum = 0.0, rl = 1.0;
  if (n == 2) {
    for (int l = 0; l <= lmax; ++l, rl *= rx * ry) {
      const double zonal = l == 0 ? 1.0 / (2.0 * M_PI) : std::cos(l * std::acos(c)) / M_PI;
      sum += rl * zonal / ball_lambda_eigenvalue(n, l);
    }
    return sum;
  }
  const double lam = (n - 2) / 2.0;
  double cm1 = 0.0, cl = 1.0;
  for (int l = 0; l <= lmax; ++l, rl *= rx * ry) {
    const double zonal = (2.0 * l + n - 2.0) / (n - 2.0) * cl / area;
    sum += rl * zonal / ball_lambda_eigenvalue(n, l);
    const double next = (2.0 * c * (l + lam) * cl - (l + 2.0 * lam - 1.0) * cm1) / (l + 1.0);
    cm1 = cl;
    cl = next;
  }
  return sum;
}

BallQuadrature ball_quadrature(int n, int radial, int angular) {
  if (n < 2 || n > 3) throw ParameterError("ball quadrature supports n = 2 and 3");
  const QuadratureRule r = gauss_legendre(radial);
  BallQuadrature q;
  if (n == 2) {
    for (int i = 0; i < radial; ++i) {
      const double rr = 0.5 * (r.nodes(i) + 1.0), wr = 0.5 * r.weights(i) * rr;
      for (int k = 0; k < angular; ++k) {
        const double phi = 2.0 * M_PI * k / angular;
        Point p(2);
        p << rr * std::cos(phi), rr * std::sin(phi);
        q.points.push_back(p);
        q.weights.push_back(wr * 2.0 * M_PI / angular);
      }
    }
    return q;
  }
  const QuadratureRule c = gauss_legendre(angular);
  const int nphi = 2 * angular;
  for (int i = 0; i < radial; ++i) {
    const double rr = 0.5 * (r.nodes(i) + 1.0), wr = 0.5 * r.weights(i) * rr * rr;
    for (int j = 0; j < angular; ++j) {
      const double ct = c.nodes(j), st = std::sqrt(1.0 - ct * ct);
      for (int k = 0; k < nphi; ++k) {
        const double phi = 2.0 * M_PI * k / nphi;
        Point p(3);
        p << rr * st * std::cos(phi), rr * st * std::sin(phi), rr * ct;
        q.points.push_back(p);
        q.weights.push_back(wr * c.weights(j) * 2.0 * M_PI / nphi);
      }
    }
  }
  return q;
}

std::string BasisFunction::label() const {
  std::ostringstream os;
  os << "r^" << power;
  if (log) os << "*log(r)";
  if (t_exp) os << "*t^" << t_exp;
  if (v_exp) os << "*v^" << v_exp;
  return os.str();
}

double BasisFunction::operator()(double rad, double t, double v) const {
  double val = std::pow(rad, power) * std::pow(t, t_exp) * std::pow(v, v_exp);
  return log ? val * std::log(rad) : val;
}

double FitReport::max_relative_error() const {
  double m = 0.0;
  for (const auto& e : relative_error)
    if (e) m = std::max(m, *e);
  return m;
}

nlohmann::ordered_json FitReport::to_json() const {
  nlohmann::ordered_json j;
  j["basis"] = nlohmann::ordered_json::array();
  for (const BasisFunction& b : basis) j["basis"].push_back(b.label());
  j["coefficients"] = std::vector<double>(coefficients.data(), coefficients.data() + coefficients.size());
  auto opt_array = [](const std::vector<std::optional<double>>& v) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& x : v) a.push_back(x ? nlohmann::ordered_json(*x) : nlohmann::ordered_json(nullptr));
    return a;
  };
  j["predicted"] = opt_array(predicted);
  j["relative_error"] = opt_array(relative_error);
  j["residual_rms"] = residual_rms;
  j["condition_number"] = condition_number;
  return j;
}

FitReport fit_boundary_expansion(const std::vector<Sample>& samples, const std::vector<BasisFunction>& basis,
                                 const std::vector<std::optional<double>>& predicted) {
  if (basis.empty()) throw ParameterError("empty basis");
  if (samples.size() < 2 * basis.size()) throw ParameterError("need at least twice as many samples as basis functions");
  if (!predicted.empty() && predicted.size() != basis.size()) throw ParameterError("prediction list must match the basis");
  const int m = static_cast<int>(samples.size()), k = static_cast<int>(basis.size());
  Eigen::MatrixXd A(m, k);
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < k; ++j) A(i, j) = basis[j](samples[i].rad, samples[i].t, samples[i].v);
    b(i) = samples[i].value;
  }
  Eigen::VectorXd scale = A.colwise().norm().transpose();
  for (int j = 0; j < k; ++j) {
    if (scale(j) == 0.0) throw FitError("basis function " + basis[j].label() + " vanishes on all samples");
    A.col(j) /= scale(j);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  FitReport rep;
  rep.basis = basis;
  rep.condition_number = sv(k - 1) > 0 ? sv(0) / sv(k - 1) : std::numeric_limits<double>::infinity();
  if (!(rep.condition_number < 1e13)) {
    std::ostringstream os;
    os << "rank-deficient design matrix (condition number " << rep.condition_number << ")";
    throw FitError(os.str());
  }
  rep.coefficients = svd.solve(b).cwiseQuotient(scale);
  rep.residual_rms = std::sqrt((A * rep.coefficients.cwiseProduct(scale) - b).squaredNorm() / m);
  rep.predicted = predicted.empty() ? std::vector<std::optional<double>>(k) : predicted;
  for (int j = 0; j < k; ++j) {
    const auto& p = rep.predicted[j];
    if (!p) {
      rep.relative_error.push_back(std::nullopt);
      continue;
    }
    const double diff = std::abs(rep.coefficients(j) - *p);
    rep.relative_error.push_back(*p == 0.0 ? diff : diff / std::abs(*p));
  }
  return rep;
}

}  // namespace harmkern
