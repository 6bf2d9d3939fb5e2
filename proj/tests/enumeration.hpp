// Exhaustive enumeration of the simulator's uniform-over-history reuse rule,
// driven through the library's advance() step.
#pragma once

#include <vector>

#include "notezipf/simon_sim.hpp"
#include "oracles.hpp"

namespace notezipf::oracle {

using simon::TokenId;

// Every random path of the uniform-over-history rule, weighted exactly.
inline void enumerate_uniform_history(std::vector<TokenId>& seq, std::size_t distinct, std::size_t steps,
                               Rational alpha, Rational prob, SequenceDistribution& out) {
  if (seq.size() == steps) {
    out[seq] = out[seq] + prob;
    return;
  }
  if (seq.empty()) {
    auto s = seq;
    auto d = distinct;
    simon::advance(s, d, true, 0);
    enumerate_uniform_history(s, d, steps, alpha, prob, out);
    return;
  }
  {
    auto s = seq;
    auto d = distinct;
    simon::advance(s, d, true, 0);
    enumerate_uniform_history(s, d, steps, alpha, prob * alpha, out);
  }
  const auto history = static_cast<std::int64_t>(seq.size());
  for (std::size_t pick = 0; pick < seq.size(); ++pick) {
    auto s = seq;
    auto d = distinct;
    simon::advance(s, d, false, pick);
    enumerate_uniform_history(s, d, steps, alpha, prob * (Rational(1) - alpha) * Rational(1, history),
                              out);
  }
}

}  // namespace notezipf::oracle
