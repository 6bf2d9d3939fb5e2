#include "notezipf/smf.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <string>
#include <tuple>

#include "notezipf/errors.hpp"

namespace notezipf::smf {

namespace {

constexpr std::uint8_t kMetaPrefix = 0xFF;
constexpr std::uint8_t kMetaEndOfTrack = 0x2F;
constexpr std::uint8_t kSysexStart = 0xF0;
constexpr std::uint8_t kSysexEscape = 0xF7;

std::uint32_t read_be32(std::span<const std::uint8_t> b, std::size_t pos) {
  return (std::uint32_t{b[pos]} << 24) | (std::uint32_t{b[pos + 1]} << 16) |
         (std::uint32_t{b[pos + 2]} << 8) | std::uint32_t{b[pos + 3]};
}

std::uint16_t read_be16(std::span<const std::uint8_t> b, std::size_t pos) {
  return static_cast<std::uint16_t>((b[pos] << 8) | b[pos + 1]);
}

bool has_tag(std::span<const std::uint8_t> b, std::size_t pos, const char* tag) {
  return std::equal(tag, tag + 4, b.begin() + static_cast<std::ptrdiff_t>(pos),
                    [](char t, std::uint8_t c) { return static_cast<std::uint8_t>(t) == c; });
}

std::string at(std::size_t track, std::size_t offset) {
  return " (track " + std::to_string(track) + ", offset " + std::to_string(offset) + ")";
}

std::string hex_byte(std::uint8_t b) {
  static constexpr char kDigits[] = "0123456789ABCDEF";
  return std::string{"0x"} + kDigits[b >> 4] + kDigits[b & 0x0F];
}

// Channel-voice messages 0xC_ and 0xD_ carry one data byte, the rest two.
int data_length(std::uint8_t status) {
  const int type = status >> 4;
  return (type == 0xC || type == 0xD) ? 1 : 2;
}

struct TrackResult {
  std::vector<TrackEvent> events;
  bool saw_end = false;
};

TrackResult parse_track(std::span<const std::uint8_t> data, std::size_t track) {
  TrackResult out;
  std::size_t pos = 0;
  std::uint64_t tick = 0;
  std::uint64_t last_emitted = 0;
  std::uint8_t running = 0;

  auto require = [&](std::size_t n, std::size_t offset) {
    if (data.size() - pos < n) {
      throw Error(ErrorCode::TruncatedChunk, "event runs past end of track chunk" + at(track, offset));
    }
  };
  auto emit = [&](EventKind kind, std::uint8_t channel, std::uint8_t key, std::uint8_t vel) {
    out.events.push_back(TrackEvent{tick, tick - last_emitted, kind,
                                    channel, key, vel});
    last_emitted = tick;
  };

  while (pos < data.size()) {
    const std::size_t event_start = pos;
    tick += read_vlq(data, pos);
    require(1, event_start);
    const std::uint8_t lead = data[pos];

    if (lead == kMetaPrefix) {
      ++pos;
      require(1, event_start);
      const std::uint8_t type = data[pos++];
      const std::uint32_t len = read_vlq(data, pos);
      require(len, event_start);
      pos += len;
      running = 0;
      if (type == kMetaEndOfTrack) {
        emit(EventKind::EndOfTrack, 0, 0, 0);
        out.saw_end = true;
        return out;
      }
      continue;
    }
    if (lead == kSysexStart || lead == kSysexEscape) {
      ++pos;
      const std::uint32_t len = read_vlq(data, pos);
      require(len, event_start);
      pos += len;
      running = 0;
      continue;
    }

    std::uint8_t status = 0;
    if (lead >= 0xF0) {
      throw Error(ErrorCode::MalformedEvent,
                  "system message " + hex_byte(lead) + " is not valid in a track" +
                      at(track, event_start));
    } else if (lead & 0x80) {
      status = lead;
      running = lead;
      ++pos;
    } else {
      if (running == 0) {
        throw Error(ErrorCode::DanglingStatus, "data byte with no status in scope" + at(track, event_start));
      }
      status = running;
    }

    const int n = data_length(status);
    require(static_cast<std::size_t>(n), event_start);
    const std::uint8_t d1 = data[pos];
    const std::uint8_t d2 = n == 2 ? data[pos + 1] : 0;
    if ((d1 | d2) & 0x80) {
      throw Error(ErrorCode::MalformedEvent, "status byte where data byte expected" + at(track, event_start));
    }
    pos += static_cast<std::size_t>(n);

    const int type = status >> 4;
    const auto channel = static_cast<std::uint8_t>(status & 0x0F);
    if (type == 0x9 && d2 > 0) {
      emit(EventKind::NoteOn, channel, d1, d2);
    } else if (type == 0x9 || type == 0x8) {
      emit(EventKind::NoteOff, channel, d1, d2);
    }
  }
  return out;
}

}  // namespace

std::uint32_t read_vlq(std::span<const std::uint8_t> data, std::size_t& pos) {
  std::uint32_t value = 0;
  for (int i = 0; i < 4; ++i) {
    if (pos >= data.size()) throw Error(ErrorCode::InvalidVlq, "unterminated variable-length quantity");
    const std::uint8_t byte = data[pos++];
    value = (value << 7) | (byte & 0x7Fu);
    if (!(byte & 0x80)) return value;
  }
  throw Error(ErrorCode::InvalidVlq, "variable-length quantity longer than four bytes");
}

SmfFile parse_smf(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || !has_tag(bytes, 0, "MThd")) {
    throw Error(ErrorCode::MissingHeader, "no MThd chunk at offset 0");
  }
  if (bytes.size() < 8) throw Error(ErrorCode::TruncatedChunk, "MThd chunk header is truncated");
  const std::uint32_t header_len = read_be32(bytes, 4);
  if (header_len > bytes.size() - 8) {
    throw Error(ErrorCode::TruncatedChunk, "MThd declared length exceeds file size");
  }
  if (header_len < 6) throw Error(ErrorCode::InvalidHeader, "MThd chunk shorter than 6 bytes");

  const std::uint16_t format = read_be16(bytes, 8);
  const std::uint16_t declared_tracks = read_be16(bytes, 10);
  const std::uint16_t division = read_be16(bytes, 12);
  if (format > 2) throw Error(ErrorCode::InvalidHeader, "unknown SMF format " + std::to_string(format));
  if (division & 0x8000) throw Error(ErrorCode::SmpteDivision, "SMPTE time division is not supported");
  if (division == 0) throw Error(ErrorCode::InvalidHeader, "division must be positive");

  SmfFile file;
  file.header.format = static_cast<SmfFormat>(format);
  file.header.division = division;

  std::size_t pos = 8 + header_len;
  std::size_t parsed = 0;
  while (parsed < declared_tracks && pos < bytes.size()) {
    if (bytes.size() - pos < 8) {
      throw Error(ErrorCode::TruncatedChunk, "chunk header truncated at offset " + std::to_string(pos));
    }
    const std::uint32_t len = read_be32(bytes, pos + 4);
    if (len > bytes.size() - pos - 8) {
      throw Error(ErrorCode::TruncatedChunk,
                  "chunk at offset " + std::to_string(pos) + " declares more bytes than remain");
    }
    const auto body = bytes.subspan(pos + 8, len);
    if (has_tag(bytes, pos, "MTrk")) {
      auto track = parse_track(body, parsed);
      if (!track.saw_end) ++file.diagnostics.tracks_without_eot;
      file.tracks.push_back(std::move(track.events));
      ++parsed;
    } else {
      ++file.diagnostics.skipped_chunks;
    }
    pos += 8 + len;
  }

  if (parsed < declared_tracks) {
    file.diagnostics.missing_tracks = declared_tracks - parsed;
    file.diagnostics.warnings.push_back("header declares " + std::to_string(declared_tracks) +
                                        " tracks, found " + std::to_string(parsed));
  }
  if (pos < bytes.size()) {
    file.diagnostics.trailing_bytes = bytes.size() - pos;
    file.diagnostics.warnings.push_back("ignored " + std::to_string(bytes.size() - pos) +
                                        " trailing bytes after last track");
  }
  file.header.track_count = static_cast<std::uint16_t>(parsed);
  return file;
}

PairedNotes pair_notes(std::span<const std::vector<TrackEvent>> tracks) {
  PairedNotes out;
  auto& diag = out.diagnostics;
  auto close = [&](std::uint64_t onset, std::uint64_t end, std::uint16_t track, std::uint8_t channel,
                   std::uint8_t key) {
    if (end <= onset) {
      ++diag.zero_length;
      return;
    }
    out.notes.push_back(RawNote{key, onset, end - onset, track, channel});
  };

  for (std::size_t t = 0; t < tracks.size(); ++t) {
    const auto track = static_cast<std::uint16_t>(t);
    std::map<std::pair<std::uint8_t, std::uint8_t>, std::deque<std::uint64_t>> open;
    std::uint64_t final_tick = 0;
    for (const auto& ev : tracks[t]) {
      final_tick = std::max(final_tick, ev.tick);
      if (ev.kind == EventKind::EndOfTrack) break;
      auto& queue = open[{ev.channel, ev.key}];
      if (ev.kind == EventKind::NoteOn) {
        ++diag.note_ons;
        queue.push_back(ev.tick);
      } else if (queue.empty()) {
        ++diag.orphan_off;
      } else {
        close(queue.front(), ev.tick, track, ev.channel, ev.key);
        queue.pop_front();
      }
    }
    for (const auto& [id, queue] : open) {
      for (const auto onset : queue) {
        ++diag.unmatched_on;
        close(onset, final_tick, track, id.first, id.second);
      }
    }
  }

  std::sort(out.notes.begin(), out.notes.end(), [](const RawNote& a, const RawNote& b) {
    return std::tie(a.onset, a.track, a.channel, a.pitch, a.duration) <
           std::tie(b.onset, b.track, b.channel, b.pitch, b.duration);
  });
  return out;
}

}  // namespace notezipf::smf
