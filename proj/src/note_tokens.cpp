#include "notezipf/note_tokens.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <tuple>

#include "notezipf/errors.hpp"

namespace notezipf::notes {

namespace {

__extension__ typedef unsigned __int128 u128;

constexpr std::uint32_t kMaxRatioTerm = 0xFFFF;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::uint32_t parse_term(std::string_view s, std::string_view whole) {
  std::uint32_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw Error(ErrorCode::InvalidArgument, "invalid duration ratio '" + std::string(whole) + "'");
  }
  return v;
}

// Sign of (ticks/division - ratio), computed exactly.
int compare_to(std::uint64_t ticks, std::uint32_t division, const Ratio& r) {
  const u128 lhs = u128{ticks} * r.den();
  const u128 rhs = u128{division} * r.num();
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

// True when ticks/division is at least as close (in log space) to `lower`
// as to `upper`, given lower < ticks/division < upper. The midpoint in log
// space is the geometric mean, so compare ticks^2 * lower.den * upper.den
// against division^2 * lower.num * upper.num.
bool nearer_lower(std::uint64_t ticks, std::uint32_t division, const Ratio& lower, const Ratio& upper) {
  if (ticks < (std::uint64_t{1} << 32)) {
    const u128 t2 = u128{ticks} * ticks;
    const u128 lhs = t2 * (std::uint64_t{lower.den()} * upper.den());
    const u128 rhs = u128{std::uint64_t{division} * division} * (std::uint64_t{lower.num()} * upper.num());
    return lhs <= rhs;
  }
  const long double x = std::log(static_cast<long double>(ticks) / division);
  return x - std::log(static_cast<long double>(lower.num()) / lower.den()) <=
         std::log(static_cast<long double>(upper.num()) / upper.den()) - x;
}

}  // namespace

Ratio::Ratio(std::uint32_t num, std::uint32_t den) {
  if (num == 0 || den == 0) throw Error(ErrorCode::InvalidArgument, "duration ratio must be positive");
  const auto g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
  if (num_ > kMaxRatioTerm || den_ > kMaxRatioTerm) {
    throw Error(ErrorCode::InvalidArgument, "duration ratio terms must not exceed 65535");
  }
}

std::string Ratio::str() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering Ratio::operator<=>(const Ratio& o) const noexcept {
  return std::uint64_t{num_} * o.den_ <=> std::uint64_t{o.num_} * den_;
}

Ratio Ratio::parse(std::string_view text) {
  const auto t = trim(text);
  const auto slash = t.find('/');
  if (slash == std::string_view::npos) return Ratio(parse_term(t, text), 1);
  return Ratio(parse_term(trim(t.substr(0, slash)), text), parse_term(trim(t.substr(slash + 1)), text));
}

DurationGrid::DurationGrid(std::vector<DurationClass> classes) : classes_(std::move(classes)) {
  if (classes_.empty()) throw Error(ErrorCode::InvalidArgument, "duration grid is empty");
  std::sort(classes_.begin(), classes_.end(),
            [](const DurationClass& a, const DurationClass& b) { return a.ratio < b.ratio; });
  for (std::size_t i = 1; i < classes_.size(); ++i) {
    if (classes_[i].ratio == classes_[i - 1].ratio) {
      throw Error(ErrorCode::InvalidArgument, "duplicate duration ratio " + classes_[i].ratio.str());
    }
  }
}

DurationGrid DurationGrid::standard() {
  return DurationGrid({
      {Ratio(8, 1), "double_whole"},
      {Ratio(6, 1), "dotted_whole"},
      {Ratio(4, 1), "whole"},
      {Ratio(3, 1), "dotted_half"},
      {Ratio(2, 1), "half"},
      {Ratio(3, 2), "dotted_quarter"},
      {Ratio(1, 1), "quarter"},
      {Ratio(3, 4), "dotted_eighth"},
      {Ratio(1, 2), "eighth"},
      {Ratio(3, 8), "dotted_sixteenth"},
      {Ratio(1, 4), "sixteenth"},
      {Ratio(1, 3), "eighth_triplet"},
      {Ratio(1, 6), "sixteenth_triplet"},
      {Ratio(3, 16), "dotted_thirty_second"},
      {Ratio(1, 8), "thirty_second"},
      {Ratio(1, 12), "thirty_second_triplet"},
      {Ratio(1, 16), "sixty_fourth"},
  });
}

DurationGrid DurationGrid::parse(std::string_view text) {
  std::vector<DurationClass> classes;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto body = std::string_view(line);
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    Ratio r = Ratio::parse(body);
    classes.push_back({r, r.str()});
  }
  return DurationGrid(std::move(classes));
}

DurationGrid DurationGrid::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open duration grid '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

DurationGrid::Match DurationGrid::classify(std::uint64_t ticks, std::uint32_t division) const {
  if (ticks == 0 || division == 0) {
    throw Error(ErrorCode::DomainError, "duration and division must be positive");
  }
  const auto upper = std::partition_point(classes_.begin(), classes_.end(), [&](const DurationClass& c) {
    return compare_to(ticks, division, c.ratio) > 0;
  });
  if (upper == classes_.end()) return {classes_.size() - 1, true};
  const auto hi = static_cast<std::size_t>(upper - classes_.begin());
  const int cmp = compare_to(ticks, division, upper->ratio);
  if (cmp == 0) return {hi, false};
  if (hi == 0) return {0, true};
  const bool lower = nearer_lower(ticks, division, classes_[hi - 1].ratio, upper->ratio);
  return {lower ? hi - 1 : hi, false};
}

const DurationClass& classify_duration(const DurationGrid& grid, std::uint64_t ticks,
                                       std::uint32_t division) {
  return grid[grid.classify(ticks, division).index];
}

std::string label(const NoteToken& token) {
  return std::to_string(token.pitch) + ":" + token.duration.str();
}

TokenizeResult tokenize(std::span<const smf::RawNote> notes, std::uint32_t division,
                        const TokenizeOptions& opts) {
  std::vector<const smf::RawNote*> order;
  order.reserve(notes.size());
  for (const auto& n : notes) order.push_back(&n);
  std::stable_sort(order.begin(), order.end(), [](const smf::RawNote* a, const smf::RawNote* b) {
    return std::tie(a->onset, a->track, a->channel, a->pitch) <
           std::tie(b->onset, b->track, b->channel, b->pitch);
  });

  TokenizeResult out;
  out.tokens.reserve(notes.size());
  for (const auto* n : order) {
    if (n->duration < opts.min_ticks) {
      ++out.dropped_short;
      continue;
    }
    const auto match = opts.grid.classify(n->duration, division);
    if (match.clamped) ++out.clamped;
    out.tokens.push_back(NoteToken{n->pitch, opts.grid[match.index].ratio});
  }
  if (out.tokens.empty()) throw Error(ErrorCode::EmptyCorpus, "no note tokens survived tokenization");
  return out;
}

}  // namespace notezipf::notes
