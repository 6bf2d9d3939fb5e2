#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "notezipf/simon_fit.hpp"

namespace notezipf::simon {

using TokenId = std::uint32_t;

enum class InnovationMode { Constant, Sublinear };

struct SimConfig {
  InnovationMode mode = InnovationMode::Constant;
  // alpha for Constant, nu for Sublinear
  double rate = 0.1;
  std::uint64_t steps = 1;
  std::uint64_t seed = 0;

  static SimConfig constant(double alpha, std::uint64_t steps, std::uint64_t seed) {
    return {InnovationMode::Constant, alpha, steps, seed};
  }
  static SimConfig sublinear(double nu, std::uint64_t steps, std::uint64_t seed) {
    return {InnovationMode::Sublinear, nu, steps, seed};
  }
};

struct SimResult {
  std::vector<TokenId> tokens;  // ids 1..distinct in order of first appearance
  std::size_t distinct = 0;
};

/// Probability of emitting a new token at step t >= 2: alpha in constant
/// mode, min(1, nu * t^(nu - 1)) in sublinear mode.
double innovation_probability(const SimConfig& config, std::uint64_t t);

/// Appends one token to `history`: a fresh id when `innovate`, otherwise a
/// copy of history[pick]. Copying a uniformly chosen history slot reuses each
/// token with probability proportional to its current count.
TokenId advance(std::vector<TokenId>& history, std::size_t& distinct, bool innovate, std::size_t pick);

/// Runs Simon's process. Step 1 always innovates; each later step t draws
/// u = uniform() and innovates iff u < p_t, else copies history[below(t - 1)].
/// Output is a pure function of the config (see Xoshiro256 for the stream).
SimResult simulate(const SimConfig& config);

void validate(const SimConfig& config);

struct ZipfCheck {
  std::size_t distinct = 0;
  std::uint64_t total = 0;
  double gamma_hat = 0.0;
  double gamma_std_error = 0.0;
  std::uint64_t gamma_n_max = 0;
  double nu_hat = 0.0;
  double z_hat = 0.0;
  SimonFit fit;
};

/// Spectrum exponent (window capped at the contiguous support of w(n), at
/// most n = 50) and fitted rank-law exponent of a simulated stream.
/// Requires V >= 50.
ZipfCheck verify_zipf(const SimResult& result);

}  // namespace notezipf::simon
