#include <gtest/gtest.h>

#include <algorithm>
#include <cctype>
#include <random>
#include <string>
#include <vector>

#include "notezipf/errors.hpp"
#include "notezipf/text_tokens.hpp"

namespace notezipf::text {
namespace {

using Words = std::vector<std::string>;

TEST(TokenizeText, Examples) {
  EXPECT_EQ(tokenize_text("The cat the dog"), (Words{"the", "cat", "the", "dog"}));
  EXPECT_EQ(tokenize_text("don't—stop"), (Words{"don't", "stop"}));
  EXPECT_TRUE(tokenize_text("").empty());
}

TEST(TokenizeText, Joiners) {
  EXPECT_EQ(tokenize_text("well-known"), (Words{"well-known"}));
  EXPECT_EQ(tokenize_text("one--two"), (Words{"one", "two"}));
  EXPECT_EQ(tokenize_text("'tis the dogs' -bone-"), (Words{"tis", "the", "dogs", "bone"}));
  EXPECT_EQ(tokenize_text("it’s a co‐op"), (Words{"it's", "a", "co-op"}));
  EXPECT_EQ(tokenize_text("x-'y"), (Words{"x", "y"}));
}

TEST(TokenizeText, SeparatorsAndLetters) {
  EXPECT_EQ(tokenize_text("Hello, World! 42 times_3"), (Words{"hello", "world", "times"}));
  EXPECT_EQ(tokenize_text("ÉTÉ naïve"), (Words{"été", "naïve"}));
}

TEST(TokenizeText, InvalidUtf8) {
  for (const std::string bad : {std::string("ab\xFF"), std::string("\xC3"), std::string("\xC0\xAF"),
                                std::string("\xED\xA0\x80"), std::string("\xE2\x82")}) {
    try {
      tokenize_text(bad);
      ADD_FAILURE() << "accepted invalid input";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::DecodeError);
    }
  }
}

TEST(TokenizeFile, MissingFile) {
  try {
    tokenize_file("/nonexistent/novel.txt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoError);
  }
}

std::string random_text(std::mt19937_64& rng) {
  static const std::vector<std::string> pieces{"a",  "B",  "c",  "Z",  "q",      " ",      " ",  "\n", ",", ".",
                                               "-",  "'",  "--", "7",  "’", "‐", "É", "è",
                                               "—", "\t", "_", "\"", "Xy", "ab-cd", "it's"};
  std::uniform_int_distribution<std::size_t> pick(0, pieces.size() - 1);
  std::uniform_int_distribution<int> len(0, 80);
  std::string s;
  for (int i = len(rng); i > 0; --i) s += pieces[pick(rng)];
  return s;
}

TEST(TokenizeTextProperties, Idempotent) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto words = tokenize_text(random_text(rng));
    std::string joined;
    for (const auto& w : words) joined += w + " ";
    ASSERT_EQ(tokenize_text(joined), words) << joined;
  }
}

TEST(TokenizeTextProperties, CaseInsensitive) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto text = random_text(rng);
    std::string upper = text;
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return c < 0x80 ? static_cast<char>(std::toupper(c)) : static_cast<char>(c); });
    ASSERT_EQ(tokenize_text(upper), tokenize_text(text)) << text;
  }
}

TEST(TokenizeTextProperties, WordsAreWellFormed) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 2000; ++trial) {
    for (const auto& w : tokenize_text(random_text(rng))) {
      ASSERT_FALSE(w.empty());
      ASSERT_NE(w.front(), '-');
      ASSERT_NE(w.front(), '\'');
      ASSERT_NE(w.back(), '-');
      ASSERT_NE(w.back(), '\'');
      ASSERT_EQ(w.find("--"), std::string::npos);
      for (const char c : w) ASSERT_FALSE(std::isupper(static_cast<unsigned char>(c)));
    }
  }
}

}  // namespace
}  // namespace notezipf::text
