#include <gtest/gtest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "stacksort/catalog.hpp"
#include "stacksort/pattern.hpp"

namespace stacksort {
namespace {

using K = PatternToken::Kind;

TEST(ParsePattern, LemmaOneSuffix) {
  PatternRow row = parse_pattern("* n 1");
  PatternSeq expected = {PatternToken::star(), PatternToken::rel(0),
                         PatternToken::abs(1)};
  EXPECT_EQ(row.tokens, expected);
  EXPECT_TRUE(row.label.empty());
  EXPECT_FALSE(row.certified);
}

TEST(ParsePattern, RelativeValues) {
  PatternRow row = parse_pattern("T1a: * (n-1) 2 n");
  PatternSeq expected = {PatternToken::star(), PatternToken::rel(1),
                         PatternToken::abs(2), PatternToken::rel(0)};
  EXPECT_EQ(row.tokens, expected);
  EXPECT_EQ(row.label, "T1a");
  EXPECT_EQ(row.certified, CertifiedClass{3});
}

TEST(ParsePattern, NamedStarsAndConstraint) {
  PatternRow row =
      parse_pattern("* n *A (n-2) *B (n-1) 2 where nonempty(A|B)");
  ASSERT_EQ(row.tokens.size(), 7u);
  EXPECT_EQ(row.tokens[2], PatternToken::star('A'));
  EXPECT_EQ(row.tokens[4], PatternToken::star('B'));
  EXPECT_EQ(row.nonempty, (std::vector<char>{'A', 'B'}));
}

TEST(ParsePattern, AlternationAndExclusion) {
  PatternRow row = parse_pattern("X: * n ? ? 1 minus { * n (n-2) (n-1) 1 }");
  ASSERT_TRUE(row.exclusion);
  EXPECT_EQ(row.exclusion->size(), 5u);
  PatternRow alt = parse_pattern("* n * (n-2) * (n-1) { 1 ? | ? 1 }");
  ASSERT_EQ(alt.tokens.back().kind, K::alt);
  EXPECT_EQ(alt.tokens.back().branches.size(), 2u);
}

TEST(ParsePattern, Errors) {
  auto position_of = [](const char* text) -> std::size_t {
    try {
      parse_pattern(text);
    } catch (const PatternSyntaxError& e) {
      return e.position();
    }
    ADD_FAILURE() << "no error for " << text;
    return 0;
  };
  EXPECT_EQ(position_of("* n $"), 4u);
  EXPECT_THROW(parse_pattern("*A n *A 1"), PatternSyntaxError);
  EXPECT_THROW(parse_pattern("* { | 1 } n"), PatternSyntaxError);
  EXPECT_THROW(parse_pattern("* { 1 } n"), PatternSyntaxError);
  EXPECT_THROW(parse_pattern("* (n+1)"), PatternSyntaxError);
  EXPECT_THROW(parse_pattern("* n 0"), PatternSyntaxError);
  EXPECT_THROW(parse_pattern(""), PatternSyntaxError);
  EXPECT_THROW(parse_pattern("* n where nonempty(A)"), PatternSyntaxError);
  EXPECT_THROW(parse_pattern("* n minus { }"), PatternSyntaxError);
  EXPECT_THROW(parse_pattern(": * n"), PatternSyntaxError);
}

TEST(ParsePattern, CatalogRowsRoundTrip) {
  for (const auto& row : Catalog::standard().rows())
    EXPECT_EQ(parse_pattern(to_string(row)), row) << row.label;
}

// Random patterns for round-trip and matcher equivalence.
PatternSeq random_seq(std::mt19937_64& rng, int depth, char& next_name,
                      std::vector<char>* names) {
  PatternSeq seq;
  int len = 1 + static_cast<int>(rng() % 5);
  for (int i = 0; i < len; ++i) {
    switch (rng() % (depth > 0 ? 6 : 5)) {
      case 0:
        if (next_name <= 'Z' && rng() % 2) {
          if (names) names->push_back(next_name);
          seq.push_back(PatternToken::star(next_name++));
        } else {
          seq.push_back(PatternToken::star());
        }
        break;
      case 1:
        seq.push_back(PatternToken::any_one());
        break;
      case 2:
      case 3:
        seq.push_back(PatternToken::rel(static_cast<unsigned>(rng() % 5)));
        break;
      case 4:
        seq.push_back(PatternToken::abs(1 + static_cast<unsigned>(rng() % 6)));
        break;
      case 5: {
        std::vector<PatternSeq> branches;
        int b = 2 + static_cast<int>(rng() % 2);
        for (int j = 0; j < b; ++j)
          branches.push_back(random_seq(rng, depth - 1, next_name, names));
        seq.push_back(PatternToken::alt(std::move(branches)));
        break;
      }
    }
  }
  return seq;
}

PatternRow random_row(std::mt19937_64& rng) {
  PatternRow row;
  char next = 'A';
  std::vector<char> names;
  row.tokens = random_seq(rng, 1, next, &names);
  if (rng() % 4 == 0) row.exclusion = random_seq(rng, 1, next, nullptr);
  for (char c : names)
    if (rng() % 2) row.nonempty.push_back(c);
  return row;
}

TEST(ParsePattern, RandomRowsRoundTrip) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 3000; ++i) {
    PatternRow row = random_row(rng);
    ASSERT_EQ(parse_pattern(to_string(row)), row) << to_string(row);
  }
}

TEST(Matches, GlobExampleOverS5) {
  PatternRow row = parse_pattern("* n 1 ?");
  std::set<std::string> got;
  oracle::for_each_permutation(5, [&](const std::vector<Letter>& v) {
    if (matches(Word(v), row)) got.insert(to_string(Word(v)));
  });
  std::set<std::string> expected = {"23514", "24513", "32514",
                                    "34512", "42513", "43512"};
  EXPECT_EQ(got, expected);
}

TEST(Matches, SimpleCases) {
  EXPECT_TRUE(matches(parse_word("23514"), parse_pattern("* n 1 ?")));
  EXPECT_FALSE(matches(parse_word("12345"), parse_pattern("* n 1")));
  EXPECT_THROW(matches(Word{3, 9}, parse_pattern("* n")), std::invalid_argument);
  // Values outside 1..n never match.
  EXPECT_FALSE(matches(parse_word("21"), parse_pattern("* (n-5) *")));
  EXPECT_FALSE(matches(parse_word("21"), parse_pattern("* 7 *")));
}

TEST(Matches, ExclusionAndConstraint) {
  PatternRow t4a = parse_pattern("* n ? ? 1 minus { * n (n-2) (n-1) 1 }");
  EXPECT_TRUE(matches(parse_word("246351"), t4a));
  EXPECT_FALSE(matches(parse_word("236451"), t4a));  // excluded
  // 6 is followed by five letters, not three.
  EXPECT_FALSE(matches(parse_word("645231"), t4a));
  EXPECT_FALSE(oracle::naive_matches({6, 4, 5, 2, 3, 1}, t4a));
  PatternRow t5a =
      parse_pattern("* n *A (n-2) *B (n-1) 2 where nonempty(A|B)");
  EXPECT_FALSE(matches(parse_word("136452"), t5a));  // A and B empty
  EXPECT_TRUE(matches(parse_word("613452"), t5a));   // A = 1 3
  EXPECT_TRUE(matches(parse_word("164352"), t5a));   // B = 3
}

TEST(Matches, CatalogRowsAgreeWithNaiveMatcherUpToSeven) {
  const auto& cat = Catalog::standard();
  for (std::size_t n = 1; n <= 7; ++n)
    oracle::for_each_permutation(n, [&](const std::vector<Letter>& v) {
      Word w(v);
      for (const auto& row : cat.rows())
        ASSERT_EQ(matches(w, row), oracle::naive_matches(v, row))
            << row.label << " on " << to_string(w);
    });
}

TEST(Matches, RandomRowsAgreeWithNaiveMatcher) {
  std::mt19937_64 rng(4242);
  for (int i = 0; i < 4000; ++i) {
    PatternRow row = random_row(rng);
    for (int j = 0; j < 10; ++j) {
      auto v = oracle::random_permutation(rng, rng() % 9);
      ASSERT_EQ(matches(Word(v), row), oracle::naive_matches(v, row))
          << to_string(row) << " on " << to_string(Word(v));
    }
  }
}

}  // namespace
}  // namespace stacksort
