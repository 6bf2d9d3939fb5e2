#include "notezipf/freq_stats.hpp"

#include <functional>
#include <string>

namespace notezipf::stats {

RankTable::RankTable(std::vector<RankEntry> entries) : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].count == 0) throw Error(ErrorCode::InvalidArgument, "rank table counts must be >= 1");
    if (i > 0 && entries_[i].count > entries_[i - 1].count) {
      throw Error(ErrorCode::InvalidArgument, "rank table counts must be non-increasing");
    }
    total_ += entries_[i].count;
  }
}

RankTable RankTable::from_counts(std::vector<std::uint64_t> counts) {
  std::sort(counts.begin(), counts.end(), std::greater<>());
  std::vector<RankEntry> entries;
  entries.reserve(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) entries.push_back({std::to_string(i + 1), counts[i]});
  return RankTable(std::move(entries));
}

std::vector<double> RankTable::counts() const {
  std::vector<double> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(static_cast<double>(e.count));
  return out;
}

RankTable count_tokens(std::span<const notes::NoteToken> tokens) {
  return count_tokens(tokens, [](const notes::NoteToken& t) { return notes::label(t); });
}

RankTable count_tokens(std::span<const std::string> tokens) {
  return count_tokens(tokens, [](const std::string& s) { return s; });
}

RankTable count_tokens(std::span<const std::uint32_t> tokens) {
  return count_tokens(tokens, [](std::uint32_t id) { return std::to_string(id); });
}

OccurrenceSpectrum spectrum(const RankTable& table) {
  OccurrenceSpectrum w;
  for (const auto& e : table.entries()) ++w[e.count];
  return w;
}

GammaEstimate fit_spectrum_gamma(const OccurrenceSpectrum& spec, std::uint64_t n_max) {
  std::vector<numeric::Point> pts;
  for (const auto& [n, w] : spec) {
    if (n > n_max) break;
    pts.push_back({static_cast<double>(n), static_cast<double>(w)});
  }
  if (pts.size() < 3) {
    throw Error(ErrorCode::InsufficientSupport,
                "spectrum has " + std::to_string(pts.size()) + " support points with n <= " +
                    std::to_string(n_max) + ", need 3");
  }
  const auto line = numeric::loglog_ols(pts);
  return {-line.slope, line.slope_stderr, n_max, line.points};
}

std::uint64_t contiguous_support(const OccurrenceSpectrum& spec, std::uint64_t cap) {
  std::uint64_t k = 0;
  while (k < cap && spec.contains(k + 1)) ++k;
  return std::min<std::uint64_t>(std::max<std::uint64_t>(k, 3), cap);
}

RankSlope fit_rank_slope(const RankTable& table, std::size_t r_lo, std::size_t r_hi) {
  r_lo = std::max<std::size_t>(r_lo, 1);
  r_hi = std::min(r_hi, table.distinct());
  if (r_hi < r_lo + 2) {
    throw Error(ErrorCode::InsufficientSupport, "rank window holds fewer than 3 ranks");
  }
  std::vector<numeric::Point> pts;
  pts.reserve(r_hi - r_lo + 1);
  for (std::size_t r = r_lo; r <= r_hi; ++r) {
    pts.push_back({static_cast<double>(r), static_cast<double>(table.count_at(r))});
  }
  const auto line = numeric::loglog_ols(pts);
  return {-line.slope, line.slope_stderr, r_lo, r_hi};
}

RankSlope fit_rank_slope(const RankTable& table) {
  return fit_rank_slope(table, 10, table.distinct() / 10);
}

}  // namespace notezipf::stats
