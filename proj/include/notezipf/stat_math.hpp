#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace notezipf::numeric {

/// Upper-tail probability of the chi-square distribution with `dof`
/// degrees of freedom, i.e. Q(dof/2, x/2). Throws DomainError for x < 0
/// or dof < 1.
double chi_square_sf(double x, double dof);

/// Regularized upper incomplete gamma Q(a, x), a > 0, x >= 0.
double gamma_q(double a, double x);

namespace detail {
// The two evaluation branches of gamma_q, exposed so their agreement at
// the switch-over point can be checked directly.
double gamma_p_series(double a, double x);
double gamma_q_continued_fraction(double a, double x);
}  // namespace detail

struct Bracket {
  double lo;
  double hi;
  double f_lo;
  double f_hi;
};

using ScalarFn = std::function<double(double)>;

/// Evaluates f at both ends and validates the sign change.
Bracket make_bracket(const ScalarFn& f, double lo, double hi);

/// Bisection on a sign-changing bracket. Stops once the bracket width is at
/// most rel_tol * |midpoint| (or f hits zero exactly); gives up with
/// NonConvergence after 200 halvings. Never evaluates f outside [lo, hi].
double bisect(const ScalarFn& f, Bracket bracket, double rel_tol);

/// Golden-section search for a local minimum of g on [lo, hi]. Returns the
/// midpoint of the final interval, whose width is at most x_tol.
double golden_minimize(const ScalarFn& g, double lo, double hi, double x_tol);

struct Point {
  double x;
  double y;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  std::size_t points = 0;
};

/// Ordinary least squares of ln(y) on ln(x). Needs at least three points,
/// all coordinates strictly positive.
LineFit loglog_ols(std::span<const Point> points);

}  // namespace notezipf::numeric
