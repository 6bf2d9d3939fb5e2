#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace notezipf::text {

/// Splits UTF-8 text into lowercase words. A word is a run of letters in
/// which single apostrophes (' or U+2019) and hyphens (- or U+2010) may join
/// letters; joiners are normalised to ASCII. Anything else separates words,
/// including doubled joiners ("--"). Throws DecodeError on invalid UTF-8.
std::vector<std::string> tokenize_text(std::string_view utf8);

/// Reads a UTF-8 file and tokenizes it.
std::vector<std::string> tokenize_file(const std::string& path);

}  // namespace notezipf::text
