// Hand-assembled Standard MIDI Files with their expected note tokens or
// expected decoding error. Shared by the unit and acceptance suites.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "notezipf/errors.hpp"

namespace notezipf::fixtures {

inline std::vector<std::uint8_t> from_hex(const std::string& hex) {
  std::vector<std::uint8_t> out;
  int nibbles = 0;
  unsigned value = 0;
  for (const char c : hex) {
    int v;
    if (c >= '0' && c <= '9') {
      v = c - '0';
    } else if (c >= 'A' && c <= 'F') {
      v = c - 'A' + 10;
    } else if (c >= 'a' && c <= 'f') {
      v = c - 'a' + 10;
    } else {
      continue;
    }
    value = (value << 4) | static_cast<unsigned>(v);
    if (++nibbles == 2) {
      out.push_back(static_cast<std::uint8_t>(value));
      nibbles = 0;
      value = 0;
    }
  }
  return out;
}

struct SmfFixture {
  std::string name;
  std::string hex;
  std::vector<std::string> tokens;  // expected token labels, sorted
  std::optional<ErrorCode> error;
};

// MThd, format 0, one track, 96 ticks per quarter.
inline const std::string kHeader96 = "4D546864 00000006 0000 0001 0060 ";
inline const std::string kMinimalTrack = "4D54726B 0000000C 00903C40 60803C40 00FF2F00";

inline std::vector<SmfFixture> smf_fixtures() {
  return {
      {"minimal note-on/note-off", kHeader96 + kMinimalTrack, {"60:1"}, std::nullopt},
      {"velocity-0 note-on as note-off",
       kHeader96 + "4D54726B 0000000C 00903C40 60903C00 00FF2F00", {"60:1"}, std::nullopt},
      {"running status",
       kHeader96 + "4D54726B 00000011 00903C40 603C00 003E40 603E00 00FF2F00", {"60:1", "62:1"},
       std::nullopt},
      {"overlapping same pitch pairs FIFO",
       "4D546864 00000006 0000 0001 0014 "
       "4D54726B 00000014 00903C40 0A903C40 0A803C40 0A803C40 00FF2F00",
       {"60:1", "60:1"}, std::nullopt},
      {"format 1 with tempo track and two channels",
       "4D546864 00000006 0001 0003 01E0 "
       "4D54726B 00000013 00FF510307A120 00FF580404021808 00FF2F00 "
       "4D54726B 0000000D 00904050 8360804000 00FF2F00 "
       "4D54726B 0000000D 00914350 8740814300 00FF2F00",
       {"64:1", "67:2"}, std::nullopt},
      {"unknown chunk skipped",
       "4D546864 00000006 0000 0001 0060 58464948 00000004 DEADBEEF " + kMinimalTrack, {"60:1"},
       std::nullopt},
      {"sysex, meta and program change consumed",
       kHeader96 + "4D54726B 0000001D 00F0034312F7 00FF010474657374 00903C40 30C005 30803C00 00FF2F00",
       {"60:1"}, std::nullopt},
      {"unmatched note-on closed at end of track, orphan off ignored",
       kHeader96 + "4D54726B 0000000D 00804040 00903C40 8140FF2F00", {"60:2"}, std::nullopt},
      {"trailing bytes after last track ignored", kHeader96 + kMinimalTrack + " 000102", {"60:1"},
       std::nullopt},
      {"format 2 tracks concatenated",
       "4D546864 00000006 0002 0002 0060 " + kMinimalTrack +
           " 4D54726B 0000000C 00904840 30804840 00FF2F00",
       {"60:1", "72:1/2"}, std::nullopt},
      {"dotted quarter and eighth triplet",
       "4D546864 00000006 0000 0001 01E0 "
       "4D54726B 00000016 00903C40 8550803C40 00903E40 8120803E40 00FF2F00",
       {"60:3/2", "62:1/3"}, std::nullopt},
      {"empty track", kHeader96 + "4D54726B 00000004 00FF2F00", {}, std::nullopt},
      {"missing header", "52494646 00000004 524D4944", {}, ErrorCode::MissingHeader},
      {"SMPTE division", "4D546864 00000006 0000 0001 E728 " + kMinimalTrack, {}, ErrorCode::SmpteDivision},
      {"track chunk longer than file", kHeader96 + "4D54726B 00000020 00903C40 60803C40 00FF2F00", {},
       ErrorCode::TruncatedChunk},
      {"event truncated inside track", kHeader96 + "4D54726B 00000003 00903C", {}, ErrorCode::TruncatedChunk},
      {"five-byte delta time", kHeader96 + "4D54726B 0000000C 8181818100 903C40 00FF2F00", {},
       ErrorCode::InvalidVlq},
      {"unterminated delta time", kHeader96 + "4D54726B 00000005 00903C40 81", {}, ErrorCode::InvalidVlq},
      {"data byte without status", kHeader96 + "4D54726B 00000007 003C40 00FF2F00", {},
       ErrorCode::DanglingStatus},
      {"running status cancelled by meta event",
       kHeader96 + "4D54726B 0000000B 00903C40 00FF0100 603C00", {}, ErrorCode::DanglingStatus},
  };
}

}  // namespace notezipf::fixtures
