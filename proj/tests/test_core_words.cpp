#include <gtest/gtest.h>

#include "pallen/palindrome_table.hpp"
#include "pallen/word.hpp"

using namespace pallen;

TEST(Word, ReverseExamples) {
  EXPECT_EQ(reverse("ab"_w), "ba"_w);
  EXPECT_EQ(reverse("noon"_w), "noon"_w);
  EXPECT_EQ(reverse(Word()), Word());
}

TEST(Word, PalindromeExamples) {
  EXPECT_TRUE(is_palindrome("level"_w));
  EXPECT_FALSE(is_palindrome("ab"_w));
  EXPECT_TRUE(is_palindrome("#a#"_w));
  EXPECT_TRUE(is_palindrome(Word()));
  EXPECT_TRUE(is_palindrome("x"_w));
}

TEST(Word, Utf8RoundTrip) {
  const std::string text = "\xe2\x99\xad" "a\xe2\x99\xad";  // flat sign, a, flat sign
  const Word w = Word::from_utf8(text);
  EXPECT_EQ(w.size(), 3);
  EXPECT_EQ(w[1], U'♭');
  EXPECT_EQ(w.to_utf8(), text);
  EXPECT_THROW(Word::from_utf8("\xe2\x99"), std::invalid_argument);
}

TEST(Word, IndexingIsCheckedNotClamped) {
  const Word w = "abc"_w;
  EXPECT_EQ(w[1], U'a');
  EXPECT_THROW(w[0], std::out_of_range);
  EXPECT_THROW(w[4], std::out_of_range);
  EXPECT_EQ(w.slice(2, 3), "bc"_w);
  EXPECT_THROW(w.slice(3, 2), std::out_of_range);
  EXPECT_THROW(w.slice(2, 4), std::out_of_range);
}

TEST(Word, PadFinite) {
  EXPECT_EQ(pad_finite("ab"_w), "a#b"_w);
  EXPECT_EQ(pad_finite("a"_w), "a"_w);
  EXPECT_EQ(pad_finite("aab"_w), "a#a#b"_w);
  EXPECT_THROW(pad_finite("a#b"_w), std::invalid_argument);
  EXPECT_THROW(pad_finite(Word()), std::invalid_argument);
}

TEST(Word, PadInfinitePrefix) {
  EXPECT_EQ(pad_infinite_prefix("ab"_w, 4), "#a#b"_w);
  EXPECT_EQ(pad_infinite_prefix("a"_w, 1), "#"_w);
  EXPECT_EQ(pad_infinite_prefix("ac"_w, 3), "#a#"_w);
  EXPECT_THROW(pad_infinite_prefix("ab"_w, 5), std::invalid_argument);
}

TEST(Word, PaddingPreservesPalindromicityExhaustive) {
  for (int len = 1; len <= 8; ++len)
    for (int mask = 0; mask < (1 << len); ++mask) {
      std::u32string s;
      for (int i = 0; i < len; ++i) s.push_back((mask >> i) & 1 ? U'b' : U'a');
      const Word u(s);
      ASSERT_EQ(is_palindrome(u), is_palindrome(pad_finite(u))) << u.to_utf8();
    }
}

TEST(Word, ReverseIsInvolution) {
  for (const char* s : {"", "a", "ab", "abc", "#a#b#"}) {
    const Word w = Word::from_utf8(s);
    EXPECT_EQ(reverse(reverse(w)), w);
  }
}

TEST(Word, MirrorExamples) {
  EXPECT_EQ(mirror(1, 11, 3), 9);
  EXPECT_EQ(mirror(1, 11, 6), 6);
  EXPECT_EQ(mirror(2, 5, 2), 5);
  EXPECT_THROW(mirror(2, 5, 6), std::out_of_range);
  for (Pos j = 2; j <= 9; ++j) EXPECT_EQ(mirror(2, 9, mirror(2, 9, j)), j);
}

TEST(Word, MirrorSetExamples) {
  EXPECT_EQ(mirror_set(1, 5, {1, 2}), (PosSet{4, 5}));
  EXPECT_EQ(mirror_set(1, 5, {7}), PosSet{});
  EXPECT_EQ(mirror_set(1, 11, {1, 3, 9, 11}), (PosSet{1, 3, 9, 11}));
  const PosSet d{2, 3, 7};
  EXPECT_EQ(mirror_set(2, 8, mirror_set(2, 8, d)), d);
}

TEST(Word, SpreadExamples) {
  EXPECT_EQ(spread_in({2}, 3, Interval(1, 7)), (PosSet{2, 5}));
  EXPECT_EQ(spread_in({1, 2}, 2, Interval(1, 5)), (PosSet{1, 2, 3, 4, 5}));
  EXPECT_EQ(spread_in({}, 4, Interval(1, 9)), PosSet{});
  EXPECT_THROW(spread_in({1}, 0, Interval(1, 3)), std::invalid_argument);
}

TEST(Word, SpreadIsIdempotent) {
  const Interval win(3, 40);
  for (Pos xi = 1; xi <= 9; ++xi) {
    const PosSet once = spread_in({5, 11, 12}, xi, win);
    EXPECT_EQ(spread_in(once, xi, win), once);
  }
}

TEST(Word, CloseDiamAdd) {
  EXPECT_EQ(diam(PosSet{}), 0);
  EXPECT_FALSE(close(PosSet{}).has_value());
  EXPECT_EQ(diam(PosSet{3, 7}), 5);
  EXPECT_EQ(*close(PosSet{3, 7}), Interval(3, 7));
  EXPECT_EQ(add({3, 7}, -2), (PosSet{1, 5}));
  EXPECT_THROW(add({3, 7}, -3), std::invalid_argument);
}

TEST(Word, PosSetInvariants) {
  const PosSet s{5, 1, 5, 3};
  EXPECT_EQ(s.elements(), (std::vector<Pos>{1, 3, 5}));
  EXPECT_THROW(PosSet({0, 2}), std::invalid_argument);
  EXPECT_THROW(Interval(3, 2), std::invalid_argument);
}

TEST(Word, AlphabetInvariants) {
  EXPECT_THROW(Alphabet({}, U'#'), std::invalid_argument);
  EXPECT_THROW(Alphabet({U'a', U'#'}, U'#'), std::invalid_argument);
  const auto a = Alphabet::latin(3);
  EXPECT_TRUE(a.is_letter(U'c'));
  EXPECT_FALSE(a.is_letter(a.pad()));
}

TEST(PalindromeTable, AgreesWithDirectCheck) {
  for (const char* s : {"a", "abba", "#a#a#c#a#a#", "abaababaab", "aaaa", "abcba"}) {
    const Word w = Word::from_utf8(s);
    const PalindromeTable t(w);
    for (Pos i = 1; i <= w.size(); ++i)
      for (Pos j = i; j <= w.size(); ++j) ASSERT_EQ(t.is_pal(i, j), is_palindrome(w.slice(i, j))) << s << i << j;
  }
}

TEST(PalindromeTable, MaximalAtCenter) {
  const Word z = "#a#a#c#a#a#"_w;
  const PalindromeTable t(z);
  EXPECT_EQ(t.maximal_at(12), (std::pair<Pos, Pos>{1, 11}));
  EXPECT_EQ(t.maximal_at(3), (std::pair<Pos, Pos>{2, 1}));  // between # and a: nothing
  EXPECT_EQ(t.maximal_at(4), (std::pair<Pos, Pos>{1, 3}));
}
