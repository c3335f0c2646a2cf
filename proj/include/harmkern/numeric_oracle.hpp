#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "harmkern/reference_kernels.hpp"

namespace harmkern {

// Worker threads for sampling loops: HARMKERN_THREADS, else hardware concurrency.
int thread_count();

// Runs fn(i) for i in [0, count) on thread_count() threads; each index is
// written by exactly one call, so results do not depend on scheduling.
void parallel_for(int count, const std::function<void(int)>& fn);

// Gauss-Legendre rule on [-1, 1].
struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};
QuadratureRule gauss_legendre(int m);

// Smooth step: 0 below w0, 1 above w1.
struct Cutoff {
  double w0 = 0.25;
  double w1 = 1.0;
  double operator()(double w) const;
};

// Cutoff inverse Fourier transform over R^{n-1} of x_n^q |xi|^p e^{-x_n|xi|},
// evaluated at |x'| = rho.
double radial_ift_numeric(int q, int p, int n, double xn, double rho, const Cutoff& cutoff = {});

// Domain {level < 0} on a lattice h Z^n clipped to a box.
struct FdDomain {
  int n = 2;
  std::function<double(const Point&)> level;
  Point lower;
  Point upper;

  static FdDomain ball(const Point& centre, double radius);
  // {x_n > Phi(|x'|^2)} intersected with the ball of radius R centred at (0, .., R).
  static FdDomain model(int n, std::vector<double> jet, double radius);
};

using LatticeIndex = std::array<int, 3>;

struct LatticeHash {
  std::size_t operator()(const LatticeIndex& i) const;
};

struct FdSolution {
  int n = 2;
  double h = 0.0;
  std::vector<LatticeIndex> nodes;
  Eigen::VectorXd values;
  std::unordered_map<LatticeIndex, int, LatticeHash> index;
  std::string solver;
  double boundary_min = 0.0;
  double boundary_max = 0.0;

  Point position(const LatticeIndex& i) const;
  std::optional<double> value(const LatticeIndex& i) const;
  bool maximum_principle(double slack = 1e-12) const;
  double max_error(const std::function<double(const Point&)>& exact) const;
};

// Shortley-Weller discretisation of -Delta u = 0 with u = g on the boundary.
// Direct sparse LU up to 1e5 unknowns, BiCGSTAB with ILUT beyond.
FdSolution solve_dirichlet_fd(const FdDomain& domain, double h, const std::function<double(const Point&)>& g);

struct ConvergenceStudy {
  std::vector<double> h;
  std::vector<double> error;
  std::vector<double> order;  // between consecutive refinements
  double min_order() const;
};
ConvergenceStudy fd_convergence(const FdDomain& domain, const std::vector<double>& hs,
                                const std::function<double(const Point&)>& exact);

// Harmonic measure of a smooth boundary bump of chordal radius eps around zeta on
// the sphere of the given centre and radius, divided by the bump's mass.
FdSolution fd_poisson_kernel_ball(const Point& centre, double radius, const Point& zeta, double eps, double h);

// Harmonic Bergman kernel of the unit ball from the spectral sum over degrees <= lmax.
double ball_spectral_bergman(int n, int lmax, const Point& x, const Point& y);
// Eigenvalue of Lambda = K*K on degree-l spherical harmonics of the unit sphere.
double ball_lambda_eigenvalue(int n, int l);

// Product Gauss rule on the unit ball (n = 2 or 3).
struct BallQuadrature {
  std::vector<Point> points;
  std::vector<double> weights;
};
BallQuadrature ball_quadrature(int n, int radial, int angular);

// One basis function rad^power * (log rad)^log * t^t_exp (times v^v_exp for Green).
struct BasisFunction {
  int power = 0;
  bool log = false;
  int t_exp = 0;
  int v_exp = 0;
  std::string label() const;
  double operator()(double rad, double t, double v = 0.0) const;
};

struct Sample {
  double rad = 0.0;
  double t = 0.0;
  double v = 0.0;
  double value = 0.0;
};

struct FitReport {
  std::vector<BasisFunction> basis;
  Eigen::VectorXd coefficients;
  std::vector<std::optional<double>> predicted;
  std::vector<std::optional<double>> relative_error;
  double residual_rms = 0.0;
  double condition_number = 0.0;

  double max_relative_error() const;
  nlohmann::ordered_json to_json() const;
};

// Least-squares fit of samples against the basis. Needs at least twice as many
// samples as basis functions; rank deficiency raises FitError.
FitReport fit_boundary_expansion(const std::vector<Sample>& samples, const std::vector<BasisFunction>& basis,
                                 const std::vector<std::optional<double>>& predicted = {});

}  // namespace harmkern
