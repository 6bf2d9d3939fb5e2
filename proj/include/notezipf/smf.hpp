#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace notezipf::smf {

enum class SmfFormat : std::uint8_t { SingleTrack = 0, MultiTrack = 1, MultiSequence = 2 };

struct SmfHeader {
  SmfFormat format = SmfFormat::SingleTrack;
  std::uint16_t track_count = 0;  // tracks actually decoded
  std::uint16_t division = 0;     // ticks per quarter note
};

enum class EventKind : std::uint8_t { NoteOn, NoteOff, EndOfTrack };

/// A decoded channel-voice note event (or the end-of-track marker) at an
/// absolute tick. Note-on with velocity 0 is reported as NoteOff.
struct TrackEvent {
  std::uint64_t tick = 0;
  std::uint64_t delta = 0;  // ticks since the previous decoded event
  EventKind kind = EventKind::NoteOn;
  std::uint8_t channel = 0;
  std::uint8_t key = 0;
  std::uint8_t velocity = 0;

  bool operator==(const TrackEvent&) const = default;
};

struct ParseDiagnostics {
  std::size_t skipped_chunks = 0;      // unknown chunk types
  std::size_t trailing_bytes = 0;      // ignored bytes after the last declared track
  std::size_t missing_tracks = 0;      // declared in MThd but absent from the file
  std::size_t tracks_without_eot = 0;  // track chunk ended without FF 2F
  std::vector<std::string> warnings;
};

struct SmfFile {
  SmfHeader header;
  std::vector<std::vector<TrackEvent>> tracks;
  ParseDiagnostics diagnostics;
};

/// Decodes a complete Standard MIDI File image. Throws notezipf::Error with
/// MissingHeader, InvalidHeader, TruncatedChunk, InvalidVlq, SmpteDivision,
/// DanglingStatus or MalformedEvent.
SmfFile parse_smf(std::span<const std::uint8_t> bytes);

/// Reads a variable-length quantity starting at `pos` within `data`,
/// advancing `pos`. At most four bytes; throws InvalidVlq otherwise.
std::uint32_t read_vlq(std::span<const std::uint8_t> data, std::size_t& pos);

struct RawNote {
  std::uint8_t pitch = 0;
  std::uint64_t onset = 0;
  std::uint64_t duration = 0;
  std::uint16_t track = 0;
  std::uint8_t channel = 0;

  bool operator==(const RawNote&) const = default;
};

struct PairingDiagnostics {
  std::size_t note_ons = 0;
  std::size_t unmatched_on = 0;  // closed at the track's final tick
  std::size_t orphan_off = 0;
  std::size_t zero_length = 0;   // dropped pairs with duration 0
};

struct PairedNotes {
  std::vector<RawNote> notes;
  PairingDiagnostics diagnostics;
};

/// Pairs note-on/note-off events FIFO per (track, channel, key). Notes left
/// open at the end of a track are closed at that track's final tick.
PairedNotes pair_notes(std::span<const std::vector<TrackEvent>> tracks);

}  // namespace notezipf::smf
