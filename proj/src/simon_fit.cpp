#include "notezipf/simon_fit.hpp"

#include <cmath>
#include <string>

#include "notezipf/errors.hpp"
#include "notezipf/stat_math.hpp"

namespace notezipf::simon {

namespace {

// Below this distance from nu = 1 the expansion of the ratio around the
// limit ln(n0) / (1 - 1/n0) is used instead of the general expression.
constexpr double kUnitNuBand = 1e-6;
constexpr double kSolveRelTol = 1e-14;
constexpr double kMaxLogN0 = 700.0;
constexpr double kBoundaryBand = 1e-3;

void check_nu(double nu) {
  if (!(nu > 0.0 && nu < 1.0)) {
    throw Error(ErrorCode::DomainError, "nu must lie in (0, 1), got " + std::to_string(nu));
  }
}

}  // namespace

double length_ratio(double log_n0, double nu) {
  if (log_n0 == 0.0) return 1.0;
  if (std::fabs(1.0 - nu) < kUnitNuBand) {
    // limit x / (1 - e^-x) plus its first-order term in eps = 1 - nu
    const double x = log_n0;
    const double eps = 1.0 - nu;
    return x / -std::expm1(-x) * (1.0 + eps * (0.5 * x - 1.0 + x / std::expm1(x)));
  }
  return nu * std::expm1((1.0 - nu) * log_n0) / ((1.0 - nu) * -std::expm1(-nu * log_n0));
}

double solve_n0(double total, double distinct, double nu) {
  check_nu(nu);
  if (!(distinct >= 1.0) || !(total >= distinct)) {
    throw Error(ErrorCode::DomainError, "solve_n0 requires T >= V >= 1");
  }
  const double target = total / distinct;
  if (target <= 1.0) {
    throw Error(ErrorCode::NoRoot, "T/V = 1 admits no occurrence cap n0 > 1");
  }
  const auto f = [&](double x) { return length_ratio(x, nu) - target; };
  double hi = 1.0;
  while (f(hi) < 0.0) {
    hi *= 2.0;
    if (hi > kMaxLogN0) {
      throw Error(ErrorCode::NoRoot, "n0 overflows for T/V = " + std::to_string(target));
    }
  }
  const double log_n0 = numeric::bisect(f, numeric::Bracket{0.0, hi, 1.0 - target, f(hi)}, kSolveRelTol);
  return std::exp(log_n0);
}

Coefficients coefficients(double n0, double distinct, double nu) {
  if (!(n0 >= 1.0) || !(distinct >= 1.0)) {
    throw Error(ErrorCode::DomainError, "coefficients require n0 >= 1 and V >= 1");
  }
  const double log_n0 = std::log(n0);
  return {std::exp(-nu * log_n0), -std::expm1(-nu * log_n0) / distinct};
}

SimonFit rank_law(double total, double distinct, double nu) {
  SimonFit law;
  law.nu = nu;
  law.z = 1.0 / nu;
  law.n0 = solve_n0(total, distinct, nu);
  const auto c = coefficients(law.n0, distinct, nu);
  law.a = c.a;
  law.b = c.b;
  return law;
}

double predict_n(double rank, const SimonFit& fit) {
  return std::pow(fit.a + fit.b * rank, -fit.z);
}

double fit_objective(const stats::RankTable& table, double nu, Residuals residuals) {
  const auto law = rank_law(static_cast<double>(table.total()), static_cast<double>(table.distinct()), nu);
  double sse = 0.0;
  const auto entries = table.entries();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const double rank = static_cast<double>(i + 1);
    const double observed = static_cast<double>(entries[i].count);
    double r;
    if (residuals == Residuals::Log) {
      r = std::log(observed) + law.z * std::log(law.a + law.b * rank);
    } else {
      r = observed - predict_n(rank, law);
    }
    sse += r * r;
  }
  return sse;
}

SimonFit fit_nu(const stats::RankTable& table, const FitOptions& opts) {
  const auto entries = table.entries();
  if (entries.size() < 3) {
    throw Error(ErrorCode::DegenerateTable, "fit needs at least 3 distinct tokens, got " +
                                                std::to_string(entries.size()));
  }
  if (entries.front().count == entries.back().count) {
    throw Error(ErrorCode::DegenerateTable, "all tokens have the same count");
  }

  const auto objective = [&](double nu) { return fit_objective(table, nu, opts.residuals); };

  const auto steps = static_cast<std::size_t>(std::lround((kNuMax - kNuMin) / opts.grid_step));
  const auto grid_nu = [&](std::size_t i) { return i == steps ? kNuMax : kNuMin + opts.grid_step * i; };
  std::size_t best = 0;
  double best_value = objective(grid_nu(0));
  for (std::size_t i = 1; i <= steps; ++i) {
    const double v = objective(grid_nu(i));
    if (v < best_value) {
      best = i;
      best_value = v;
    }
  }

  const double lo = grid_nu(best == 0 ? 0 : best - 1);
  const double hi = grid_nu(best == steps ? steps : best + 1);
  double nu = numeric::golden_minimize(objective, lo, hi, opts.nu_tol);
  if (objective(nu) > best_value) nu = grid_nu(best);

  SimonFit fit = rank_law(static_cast<double>(table.total()), static_cast<double>(table.distinct()), nu);
  fit.sse_log = fit_objective(table, nu, Residuals::Log);
  fit.boundary_warning = nu - kNuMin < kBoundaryBand || kNuMax - nu < kBoundaryBand;
  const auto gof = chi_square_gof(table, fit, opts.dof_params);
  fit.chi2 = gof.chi2;
  fit.dof = gof.dof;
  fit.p_value = gof.p_value;
  return fit;
}

ChiSquare chi_square_gof(const stats::RankTable& table, const SimonFit& fit, std::size_t dof_params) {
  const auto entries = table.entries();
  if (dof_params >= entries.size()) {
    throw Error(ErrorCode::InvalidArgument, "chi-square test needs more ranks than fitted parameters");
  }
  ChiSquare out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const double expected = predict_n(static_cast<double>(i + 1), fit);
    const double diff = static_cast<double>(entries[i].count) - expected;
    out.chi2 += diff * diff / expected;
  }
  out.dof = entries.size() - dof_params;
  out.p_value = numeric::chi_square_sf(out.chi2, static_cast<double>(out.dof));
  return out;
}

}  // namespace notezipf::simon
