#pragma once

#include <string_view>

#include <Eigen/Dense>

namespace harmkern {

using Point = Eigen::VectorXd;

enum class ClosedDomain { Halfspace, Ball };
std::string_view to_string(ClosedDomain d);
ClosedDomain parse_closed_domain(std::string_view s);

// Gauss hypergeometric 2F1(a, b; c; z) for real z < 1.
double hyp2f1(double a, double b, double c, double z);

// Poisson kernel of {x_n > 0} or of the unit ball centred at the origin.
double eval_poisson_closed(ClosedDomain d, const Point& x, const Point& zeta);

// Poisson kernel of the ball of the given radius centred at (0, ..., 0, R), which
// touches {x_n = 0} at the origin.
double eval_poisson_tangent_ball(double radius, const Point& x, const Point& zeta);

// Harmonic Bergman kernel of {x_n > 0} or of the unit ball.
double eval_bergman_closed(ClosedDomain d, const Point& x, const Point& y);

// Harmonic Bergman kernel of the tangent ball of radius R (scaled unit-ball formula).
double eval_bergman_tangent_ball(double radius, const Point& x, const Point& y);

// Leading term of the weighted half-space kernel for the weight x_n^alpha e^{g0}.
double eval_weighted_halfspace(double alpha, double g0, const Point& x, const Point& y);

}  // namespace harmkern
