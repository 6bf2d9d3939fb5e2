#include "notezipf/stat_math.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "notezipf/errors.hpp"

namespace notezipf::numeric {

namespace {

constexpr int kMaxGammaIterations = 100000;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min() / kEps;
constexpr int kMaxBisections = 200;

// exp(-x) x^a / Gamma(a), the common prefactor of both branches.
double gamma_prefactor(double a, double x) {
  return std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

namespace detail {

double gamma_p_series(double a, double x) {
  if (x == 0.0) return 0.0;
  double denom = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 0; n < kMaxGammaIterations; ++n) {
    denom += 1.0;
    term *= x / denom;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEps) {
      return sum * gamma_prefactor(a, x);
    }
  }
  throw Error(ErrorCode::NonConvergence, "incomplete gamma series did not converge");
}

// Modified Lentz evaluation of the Legendre continued fraction for Q(a, x).
double gamma_q_continued_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxGammaIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) return h * gamma_prefactor(a, x);
  }
  throw Error(ErrorCode::NonConvergence, "incomplete gamma continued fraction did not converge");
}

}  // namespace detail

double gamma_q(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) {
    throw Error(ErrorCode::DomainError,
                "gamma_q requires a > 0 and x >= 0 (a=" + std::to_string(a) +
                    ", x=" + std::to_string(x) + ")");
  }
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - detail::gamma_p_series(a, x);
  return detail::gamma_q_continued_fraction(a, x);
}

double chi_square_sf(double x, double dof) {
  if (!(x >= 0.0)) {
    throw Error(ErrorCode::DomainError, "chi-square statistic must be non-negative");
  }
  if (!(dof >= 1.0)) {
    throw Error(ErrorCode::DomainError, "chi-square degrees of freedom must be >= 1");
  }
  return gamma_q(0.5 * dof, 0.5 * x);
}

Bracket make_bracket(const ScalarFn& f, double lo, double hi) {
  if (!(lo < hi)) throw Error(ErrorCode::BracketInvalid, "bracket requires lo < hi");
  Bracket br{lo, hi, f(lo), f(hi)};
  if (std::isnan(br.f_lo) || std::isnan(br.f_hi) ||
      (br.f_lo != 0.0 && br.f_hi != 0.0 && std::signbit(br.f_lo) == std::signbit(br.f_hi))) {
    throw Error(ErrorCode::BracketInvalid, "function does not change sign over the bracket");
  }
  return br;
}

double bisect(const ScalarFn& f, Bracket br, double rel_tol) {
  if (!(br.lo < br.hi)) throw Error(ErrorCode::BracketInvalid, "bracket requires lo < hi");
  if (br.f_lo == 0.0) return br.lo;
  if (br.f_hi == 0.0) return br.hi;
  if (std::signbit(br.f_lo) == std::signbit(br.f_hi)) {
    throw Error(ErrorCode::BracketInvalid, "function does not change sign over the bracket");
  }
  double lo = br.lo;
  double hi = br.hi;
  const bool rising = br.f_lo < 0.0;
  for (int it = 0; it < kMaxBisections; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (hi - lo <= rel_tol * std::fabs(mid) || mid == lo || mid == hi) return mid;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == rising) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw Error(ErrorCode::NonConvergence, "bisection exceeded iteration limit");
}

double golden_minimize(const ScalarFn& g, double lo, double hi, double x_tol) {
  if (!(lo < hi)) throw Error(ErrorCode::DomainError, "golden_minimize requires lo < hi");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double g1 = g(x1);
  double g2 = g(x2);
  while (hi - lo > x_tol) {
    if (g1 <= g2) {
      hi = x2;
      x2 = x1;
      g2 = g1;
      x1 = hi - inv_phi * (hi - lo);
      g1 = g(x1);
    } else {
      lo = x1;
      x1 = x2;
      g1 = g2;
      x2 = lo + inv_phi * (hi - lo);
      g2 = g(x2);
    }
  }
  return 0.5 * (lo + hi);
}

LineFit loglog_ols(std::span<const Point> points) {
  const std::size_t n = points.size();
  if (n < 3) throw Error(ErrorCode::InsufficientSupport, "log-log regression needs >= 3 points");
  double sx = 0.0;
  double sy = 0.0;
  for (const auto& p : points) {
    if (!(p.x > 0.0) || !(p.y > 0.0)) {
      throw Error(ErrorCode::DomainError, "log-log regression needs positive coordinates");
    }
    sx += std::log(p.x);
    sy += std::log(p.y);
  }
  const double mx = sx / static_cast<double>(n);
  const double my = sy / static_cast<double>(n);
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& p : points) {
    const double dx = std::log(p.x) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(p.y) - my);
  }
  if (sxx == 0.0) {
    throw Error(ErrorCode::InsufficientSupport, "log-log regression needs distinct x values");
  }
  LineFit fit;
  fit.points = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (const auto& p : points) {
    const double r = std::log(p.y) - (fit.intercept + fit.slope * std::log(p.x));
    sse += r * r;
  }
  fit.slope_stderr = std::sqrt(sse / static_cast<double>(n - 2) / sxx);
  return fit;
}

}  // namespace notezipf::numeric
