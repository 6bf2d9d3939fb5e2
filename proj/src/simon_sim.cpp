#include "notezipf/simon_sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "notezipf/errors.hpp"
#include "notezipf/freq_stats.hpp"
#include "notezipf/rng.hpp"

namespace notezipf::simon {

namespace {
constexpr std::size_t kMinVerifyDistinct = 50;
constexpr std::uint64_t kSpectrumCap = 50;
}  // namespace

void validate(const SimConfig& config) {
  if (config.steps < 1) throw Error(ErrorCode::InvalidArgument, "simulation needs at least one step");
  if (config.steps > std::uint64_t{0xFFFFFFFF}) {
    throw Error(ErrorCode::InvalidArgument, "simulation length exceeds 2^32 - 1 steps");
  }
  if (config.mode == InnovationMode::Constant) {
    // alpha = 0 is the degenerate never-innovate limit.
    if (!(config.rate >= 0.0 && config.rate <= 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "alpha must lie in [0, 1]");
    }
  } else if (!(config.rate > 0.0 && config.rate < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "nu must lie in (0, 1)");
  }
}

double innovation_probability(const SimConfig& config, std::uint64_t t) {
  if (t <= 1) return 1.0;
  if (config.mode == InnovationMode::Constant) return config.rate;
  const double nu = config.rate;
  return std::min(1.0, nu * std::pow(static_cast<double>(t), nu - 1.0));
}

TokenId advance(std::vector<TokenId>& history, std::size_t& distinct, bool innovate, std::size_t pick) {
  const TokenId next = innovate ? static_cast<TokenId>(++distinct) : history[pick];
  history.push_back(next);
  return next;
}

SimResult simulate(const SimConfig& config) {
  validate(config);
  Xoshiro256 rng(config.seed);
  SimResult out;
  out.tokens.reserve(config.steps);
  advance(out.tokens, out.distinct, true, 0);
  for (std::uint64_t t = 2; t <= config.steps; ++t) {
    const bool innovate = rng.uniform() < innovation_probability(config, t);
    const std::size_t pick = innovate ? 0 : rng.below(t - 1);
    advance(out.tokens, out.distinct, innovate, pick);
  }
  return out;
}

ZipfCheck verify_zipf(const SimResult& result) {
  if (result.distinct < kMinVerifyDistinct) {
    throw Error(ErrorCode::InsufficientSupport, "Zipf check needs at least 50 distinct tokens, got " +
                                                    std::to_string(result.distinct));
  }
  const auto table = stats::count_tokens(std::span<const TokenId>(result.tokens));
  const auto spec = stats::spectrum(table);
  const auto gamma = stats::fit_spectrum_gamma(spec, stats::contiguous_support(spec, kSpectrumCap));

  ZipfCheck check;
  check.distinct = table.distinct();
  check.total = table.total();
  check.gamma_hat = gamma.gamma;
  check.gamma_std_error = gamma.std_error;
  check.gamma_n_max = gamma.n_max;
  check.fit = fit_nu(table);
  check.nu_hat = check.fit.nu;
  check.z_hat = check.fit.z;
  return check;
}

}  // namespace notezipf::simon
