#include "notezipf/text_tokens.hpp"

#include <fstream>
#include <locale>
#include <sstream>

#include "notezipf/errors.hpp"

namespace notezipf::text {

namespace {

const std::ctype<wchar_t>& unicode_ctype() {
  static const std::locale loc = [] {
    try {
      return std::locale("C.UTF-8");
    } catch (const std::runtime_error&) {
      return std::locale::classic();
    }
  }();
  return std::use_facet<std::ctype<wchar_t>>(loc);
}

[[noreturn]] void bad_utf8(std::size_t offset) {
  throw Error(ErrorCode::DecodeError, "invalid UTF-8 at byte " + std::to_string(offset));
}

char32_t decode(std::string_view s, std::size_t& pos) {
  const std::size_t start = pos;
  const auto lead = static_cast<unsigned char>(s[pos++]);
  if (lead < 0x80) return lead;
  int extra;
  char32_t cp;
  char32_t min;
  if ((lead & 0xE0) == 0xC0) {
    extra = 1, cp = lead & 0x1F, min = 0x80;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2, cp = lead & 0x0F, min = 0x800;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3, cp = lead & 0x07, min = 0x10000;
  } else {
    bad_utf8(start);
  }
  for (int i = 0; i < extra; ++i) {
    if (pos >= s.size()) bad_utf8(start);
    const auto c = static_cast<unsigned char>(s[pos++]);
    if ((c & 0xC0) != 0x80) bad_utf8(start);
    cp = (cp << 6) | (c & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) bad_utf8(start);
  return cp;
}

void encode(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

// Returns the ASCII form of an apostrophe or hyphen, or 0 for anything else.
char joiner(char32_t cp) {
  switch (cp) {
    case U'\'':
    case U'’':
      return '\'';
    case U'-':
    case U'‐':
      return '-';
    default:
      return 0;
  }
}

}  // namespace

std::vector<std::string> tokenize_text(std::string_view utf8) {
  const auto& ct = unicode_ctype();
  std::vector<std::string> words;
  std::string current;
  char pending = 0;

  const auto flush = [&] {
    if (!current.empty()) words.push_back(std::move(current));
    current.clear();
    pending = 0;
  };

  std::size_t pos = 0;
  while (pos < utf8.size()) {
    const char32_t cp = decode(utf8, pos);
    const auto wc = static_cast<wchar_t>(cp);
    if (ct.is(std::ctype_base::alpha, wc)) {
      if (pending) current += pending;
      pending = 0;
      encode(static_cast<char32_t>(ct.tolower(wc)), current);
    } else if (const char j = joiner(cp); j && !current.empty()) {
      if (pending) {
        flush();
      } else {
        pending = j;
      }
    } else {
      flush();
    }
  }
  flush();
  return words;
}

std::vector<std::string> tokenize_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return tokenize_text(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

}  // namespace notezipf::text
