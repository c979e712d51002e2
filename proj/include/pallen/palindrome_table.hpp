#pragma once

#include <algorithm>
#include <string_view>
#include <utility>
#include <vector>

#include "pallen/word.hpp"

namespace pallen {

/// Manacher radii for one word; answers "is w[i, j] a palindrome" in O(1).
class PalindromeTable {
 public:
  explicit PalindromeTable(std::u32string_view s) : n_(static_cast<Pos>(s.size())) {
    const auto n = static_cast<std::ptrdiff_t>(s.size());
    odd_.assign(s.size(), 0);
    even_.assign(s.size(), 0);
    for (std::ptrdiff_t i = 0, l = 0, r = -1; i < n; ++i) {
      std::ptrdiff_t k = (i > r) ? 1 : std::min<std::ptrdiff_t>(odd_[l + r - i], r - i + 1);
      while (i - k >= 0 && i + k < n && s[i - k] == s[i + k]) ++k;
      odd_[i] = k;
      if (i + k - 1 > r) {
        l = i - k + 1;
        r = i + k - 1;
      }
    }
    for (std::ptrdiff_t i = 0, l = 0, r = -1; i < n; ++i) {
      std::ptrdiff_t k = (i > r) ? 0 : std::min<std::ptrdiff_t>(even_[l + r - i + 1], r - i + 1);
      while (i - k - 1 >= 0 && i + k < n && s[i - k - 1] == s[i + k]) ++k;
      even_[i] = k;
      if (i + k - 1 > r) {
        l = i - k;
        r = i + k - 1;
      }
    }
  }
  explicit PalindromeTable(const Word& w) : PalindromeTable(w.view()) {}

  Pos size() const { return n_; }

  /// True iff w[i, j] is a palindrome (1-based, i <= j).
  bool is_pal(Pos i, Pos j) const {
    if (i < 1 || j > n_ || j < i) return false;
    const Pos a = i - 1, b = j - 1, len = j - i + 1;
    if (len % 2 == 1) return odd_[static_cast<std::size_t>((a + b) / 2)] >= (len + 1) / 2;
    return even_[static_cast<std::size_t>((a + b + 1) / 2)] >= len / 2;
  }

  /// Longest palindrome whose doubled center is i + j; empty range (hi < lo) if none.
  std::pair<Pos, Pos> maximal_at(Pos doubled_center) const {
    if (doubled_center % 2 == 0) {
      const Pos c = doubled_center / 2;  // 1-based middle letter
      const Pos k = odd_[static_cast<std::size_t>(c - 1)];
      return {c - k + 1, c + k - 1};
    }
    const Pos right = (doubled_center + 1) / 2;  // first letter of the right half, 1-based
    const Pos k = even_[static_cast<std::size_t>(right - 1)];
    return {right - k, right + k - 1};
  }

 private:
  Pos n_;
  std::vector<std::ptrdiff_t> odd_;
  std::vector<std::ptrdiff_t> even_;
};

}  // namespace pallen
