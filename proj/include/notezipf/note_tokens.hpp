#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "notezipf/smf.hpp"

namespace notezipf::notes {

/// Positive rational in lowest terms, in quarter-note units.
class Ratio {
 public:
  Ratio(std::uint32_t num, std::uint32_t den);

  std::uint32_t num() const noexcept { return num_; }
  std::uint32_t den() const noexcept { return den_; }
  double value() const noexcept { return static_cast<double>(num_) / den_; }
  std::string str() const;

  bool operator==(const Ratio&) const = default;
  std::strong_ordering operator<=>(const Ratio& o) const noexcept;

  static Ratio parse(std::string_view text);

 private:
  std::uint32_t num_;
  std::uint32_t den_;
};

struct DurationClass {
  Ratio ratio;
  std::string label;
};

/// A sorted set of note-type durations; classification snaps a tick
/// duration to the nearest class in log space, ties going to the shorter.
class DurationGrid {
 public:
  explicit DurationGrid(std::vector<DurationClass> classes);

  /// Double-whole through sixty-fourth, with dotted and triplet values.
  static DurationGrid standard();
  /// One rational per line ("3/2", "1", "1/12"); '#' starts a comment.
  static DurationGrid parse(std::string_view text);
  static DurationGrid load(const std::string& path);

  struct Match {
    std::size_t index;
    bool clamped;  // duration fell outside the grid's range
  };
  Match classify(std::uint64_t ticks, std::uint32_t division) const;

  const DurationClass& operator[](std::size_t i) const { return classes_[i]; }
  std::size_t size() const noexcept { return classes_.size(); }
  std::span<const DurationClass> classes() const noexcept { return classes_; }

 private:
  std::vector<DurationClass> classes_;
};

const DurationClass& classify_duration(const DurationGrid& grid, std::uint64_t ticks,
                                       std::uint32_t division);

struct NoteToken {
  std::uint8_t pitch = 0;
  Ratio duration{1, 1};

  bool operator==(const NoteToken&) const = default;
  // Pitch first, then duration; this is also the rank tie-break order.
  auto operator<=>(const NoteToken&) const = default;
};

/// "<midi key>:<ratio>", e.g. "60:3/2".
std::string label(const NoteToken& token);

struct TokenizeOptions {
  std::uint64_t min_ticks = 0;  // notes shorter than this are dropped
  DurationGrid grid = DurationGrid::standard();
};

struct TokenizeResult {
  std::vector<NoteToken> tokens;
  std::size_t dropped_short = 0;
  std::size_t clamped = 0;
};

/// Maps notes to tokens in onset order (ties by track, channel, pitch).
/// Throws EmptyCorpus when nothing survives the min_ticks filter.
TokenizeResult tokenize(std::span<const smf::RawNote> notes, std::uint32_t division,
                        const TokenizeOptions& opts = {});

}  // namespace notezipf::notes
