#pragma once

#include <cstddef>
#include <cstdint>

#include "notezipf/freq_stats.hpp"

namespace notezipf::simon {

inline constexpr double kNuMin = 0.02;
inline constexpr double kNuMax = 0.98;

/// T/V implied by the rank law for a given occurrence cap n0 and vocabulary
/// growth exponent nu:  nu (n0^(1-nu) - 1) / ((1 - nu)(1 - n0^-nu)).
/// Evaluated in terms of ln(n0) so it stays accurate as n0 -> 1.
double length_ratio(double log_n0, double nu);

/// Solves length_ratio(ln n0, nu) = T/V for n0 > 1. Throws NoRoot when
/// T <= V and DomainError for nu outside (0, 1) or V < 1.
double solve_n0(double total, double distinct, double nu);

struct Coefficients {
  double a = 1.0;
  double b = 0.0;
};

/// a = n0^-nu, b = (1 - n0^-nu) / V.
Coefficients coefficients(double n0, double distinct, double nu);

enum class Residuals { Log, Linear };

struct FitOptions {
  Residuals residuals = Residuals::Log;
  // Subtracted from V to get the chi-square degrees of freedom.
  std::size_t dof_params = 2;
  double grid_step = 0.01;
  double nu_tol = 1e-4;
};

/// One evaluated rank law n(r) = (a + b r)^(-1/nu) with its fit statistics.
struct SimonFit {
  double nu = 0.0;
  double z = 0.0;
  double n0 = 1.0;
  double a = 1.0;
  double b = 0.0;
  double sse_log = 0.0;
  double chi2 = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
  bool boundary_warning = false;
};

/// Builds the rank law implied by (T, V, nu) with n0 solved from T/V.
/// Goodness-of-fit fields are left at their defaults.
SimonFit rank_law(double total, double distinct, double nu);

double predict_n(double rank, const SimonFit& fit);

/// Sum over ranks of the squared residuals between observed counts and the
/// rank law implied by (T, V, nu).
double fit_objective(const stats::RankTable& table, double nu, Residuals residuals = Residuals::Log);

/// Least-squares fit of nu over [0.02, 0.98]: coarse grid, then golden
/// section refinement around the best grid point. Fills chi-square fields.
/// Throws DegenerateTable when V < 3 or all counts are equal.
SimonFit fit_nu(const stats::RankTable& table, const FitOptions& opts = {});

struct ChiSquare {
  double chi2 = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
};

ChiSquare chi_square_gof(const stats::RankTable& table, const SimonFit& fit, std::size_t dof_params = 2);

}  // namespace notezipf::simon
