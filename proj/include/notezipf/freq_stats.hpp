#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "notezipf/errors.hpp"
#include "notezipf/note_tokens.hpp"
#include "notezipf/stat_math.hpp"

namespace notezipf::stats {

struct RankEntry {
  std::string label;
  std::uint64_t count = 0;

  bool operator==(const RankEntry&) const = default;
};

/// Distinct tokens sorted by descending count; rank r is entries()[r - 1].
/// Immutable once built.
class RankTable {
 public:
  RankTable() = default;
  /// Entries must already be in rank order with positive counts.
  explicit RankTable(std::vector<RankEntry> entries);

  /// Builds a table from bare counts in any order, labelling rank r as "r".
  static RankTable from_counts(std::vector<std::uint64_t> counts);

  std::span<const RankEntry> entries() const noexcept { return entries_; }
  std::size_t distinct() const noexcept { return entries_.size(); }  // V
  std::uint64_t total() const noexcept { return total_; }            // T
  std::uint64_t count_at(std::size_t rank) const { return entries_.at(rank - 1).count; }
  std::vector<double> counts() const;

  bool operator==(const RankTable&) const = default;

 private:
  std::vector<RankEntry> entries_;
  std::uint64_t total_ = 0;
};

/// Counts tokens and ranks them by descending count; equal counts keep the
/// ascending order of Token's operator<, so the table depends only on the
/// token multiset. Throws EmptyCorpus on an empty sequence.
template <typename Token, typename LabelFn>
RankTable count_tokens(std::span<const Token> tokens, LabelFn&& label_of) {
  if (tokens.empty()) throw Error(ErrorCode::EmptyCorpus, "cannot rank an empty token sequence");
  std::map<Token, std::uint64_t> counts;
  for (const auto& t : tokens) ++counts[t];
  std::vector<std::pair<const Token*, std::uint64_t>> ranked;
  ranked.reserve(counts.size());
  for (const auto& [token, n] : counts) ranked.emplace_back(&token, n);
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<RankEntry> entries;
  entries.reserve(ranked.size());
  for (const auto& [token, n] : ranked) entries.push_back({label_of(*token), n});
  return RankTable(std::move(entries));
}

RankTable count_tokens(std::span<const notes::NoteToken> tokens);
RankTable count_tokens(std::span<const std::string> tokens);
RankTable count_tokens(std::span<const std::uint32_t> tokens);

/// w(n): number of distinct tokens occurring exactly n times (n with w > 0 only).
using OccurrenceSpectrum = std::map<std::uint64_t, std::uint64_t>;

OccurrenceSpectrum spectrum(const RankTable& table);

struct GammaEstimate {
  double gamma = 0.0;
  double std_error = 0.0;
  std::uint64_t n_max = 0;
  std::size_t points = 0;
};

/// Negated log-log OLS slope of w(n) against n over 1 <= n <= n_max.
GammaEstimate fit_spectrum_gamma(const OccurrenceSpectrum& spec, std::uint64_t n_max = 50);

/// Largest k <= cap with w(1), ..., w(k) all non-zero (at least 3 so the
/// regression stays defined). Beyond the first empty bin the spectrum is
/// too sparse for a per-bin regression.
std::uint64_t contiguous_support(const OccurrenceSpectrum& spec, std::uint64_t cap = 50);

struct RankSlope {
  double z = 0.0;
  double std_error = 0.0;
  std::size_t r_lo = 0;
  std::size_t r_hi = 0;
};

/// Zipf exponent z of n(r) ~ 1/r^z by log-log OLS over ranks [r_lo, r_hi].
RankSlope fit_rank_slope(const RankTable& table, std::size_t r_lo, std::size_t r_hi);
/// Default large-rank window [10, V/10].
RankSlope fit_rank_slope(const RankTable& table);

}  // namespace notezipf::stats
