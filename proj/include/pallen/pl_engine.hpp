#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "pallen/palindrome_table.hpp"
#include "pallen/word.hpp"

namespace pallen {

struct PlProfile {
  Pos word_len = 0;
  std::vector<Pos> prefix_pl;  // prefix_pl[i - 1] = PL(w[1, i])
  Pos max_pl = 0;
};

/// Quadratic reference: PL(w[1, i]) = 1 + min PL(w[1, j - 1]) over palindromic suffixes w[j, i].
/// Palindromic occurrences are listed by center expansion, so the work is proportional to their count.
inline std::vector<Pos> pl_oracle_profile(const Word& w) {
  if (w.empty()) throw std::invalid_argument("PL of the empty word is not defined");
  const auto& s = w.symbols();
  const std::size_t n = s.size();
  std::vector<std::vector<std::uint32_t>> starts_ending_at(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t l = c, r = c;; --l, ++r) {  // odd lengths
      if (s[l] != s[r]) break;
      starts_ending_at[r].push_back(static_cast<std::uint32_t>(l));
      if (l == 0 || r + 1 == n) break;
    }
    for (std::size_t l = c, r = c + 1; r < n;) {  // even lengths
      if (s[l] != s[r]) break;
      starts_ending_at[r].push_back(static_cast<std::uint32_t>(l));
      if (l == 0) break;
      --l;
      ++r;
    }
  }
  std::vector<Pos> f(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    Pos best = std::numeric_limits<Pos>::max();
    for (auto j : starts_ending_at[i - 1]) best = std::min(best, f[j] + 1);
    f[i] = best;
  }
  return {f.begin() + 1, f.end()};
}

inline Pos pl_oracle(const Word& w) { return pl_oracle_profile(w).back(); }

/// Palindromic tree with series links; computes every prefix PL in O(n log n).
class Eertree {
 public:
  explicit Eertree(std::size_t capacity) {
    len_.reserve(capacity + 2);
    link_.reserve(capacity + 2);
    diff_.reserve(capacity + 2);
    slink_.reserve(capacity + 2);
    series_.reserve(capacity + 2);
    add_node(-1, 0);  // imaginary root
    add_node(0, 0);   // empty root
    diff_[1] = diff_[0] = 0;
    last_ = 1;
  }

  PlProfile profile(std::u32string_view s) {
    PlProfile out;
    out.word_len = static_cast<Pos>(s.size());
    out.prefix_pl.reserve(s.size());
    std::vector<Pos> ans(s.size() + 1, 0);
    for (std::size_t i = 0; i < s.size(); ++i) {
      extend(s, i);
      Pos best = std::numeric_limits<Pos>::max();
      const Pos end = static_cast<Pos>(i) + 1;
      for (std::size_t v = last_; len_[v] > 0; v = slink_[v]) {
        series_[v] = ans[static_cast<std::size_t>(end - (len_[slink_[v]] + diff_[v]))];
        if (diff_[v] == diff_[link_[v]]) series_[v] = std::min(series_[v], series_[link_[v]]);
        best = std::min(best, series_[v] + 1);
      }
      ans[static_cast<std::size_t>(end)] = best;
      out.prefix_pl.push_back(best);
      out.max_pl = std::max(out.max_pl, best);
    }
    return out;
  }

 private:
  std::size_t add_node(Pos len, std::size_t link) {
    len_.push_back(len);
    link_.push_back(link);
    diff_.push_back(0);
    slink_.push_back(0);
    series_.push_back(0);
    return len_.size() - 1;
  }

  std::size_t suffix_with_match(std::u32string_view s, std::size_t i, std::size_t v) const {
    while (true) {
      const Pos l = len_[v];
      const auto j = static_cast<std::ptrdiff_t>(i) - l - 1;
      if (j >= 0 && s[static_cast<std::size_t>(j)] == s[i]) return v;
      v = link_[v];
    }
  }

  void extend(std::u32string_view s, std::size_t i) {
    const char32_t c = s[i];
    const std::size_t parent = suffix_with_match(s, i, last_);
    const std::uint64_t key = (static_cast<std::uint64_t>(parent) << 32) | c;
    if (auto it = edges_.find(key); it != edges_.end()) {
      last_ = it->second;
      return;
    }
    const Pos len = len_[parent] + 2;
    std::size_t link = 1;
    if (len > 1) {
      const std::size_t q = suffix_with_match(s, i, link_[parent]);
      link = edges_.at((static_cast<std::uint64_t>(q) << 32) | c);
    }
    const std::size_t v = add_node(len, link);
    edges_.emplace(key, v);
    diff_[v] = len_[v] - len_[link];
    slink_[v] = (diff_[v] == diff_[link]) ? slink_[link] : link;
    last_ = v;
  }

  std::vector<Pos> len_;
  std::vector<std::size_t> link_;
  std::vector<Pos> diff_;
  std::vector<std::size_t> slink_;
  std::vector<Pos> series_;
  std::unordered_map<std::uint64_t, std::size_t> edges_;
  std::size_t last_;
};

inline PlProfile pl_fast(const Word& w) {
  if (w.empty()) throw std::invalid_argument("PL of the empty word is not defined");
  Eertree tree(w.symbols().size());
  return tree.profile(w.view());
}

inline Pos pl(const Word& w) { return pl_fast(w).prefix_pl.back(); }

/// Odd positions letters, even positions the pad.
inline bool has_padded_shape(const Word& w, Symbol pad = kDefaultPad) {
  if (w.empty()) return false;
  for (Pos i = 1; i <= w.size(); ++i)
    if ((i % 2 == 0) != (w[i] == pad)) return false;
  return w.size() % 2 == 1;
}

namespace detail {

// f[i] = PPL(s[1, i]) at letter positions i (odd, relative to `first`), cutting only at pad positions.
inline std::vector<Pos> ppl_profile(const PalindromeTable& pal, Pos first, Pos last) {
  const Pos n = last - first + 1;
  std::vector<Pos> f(static_cast<std::size_t>(n + 1), 0);
  for (Pos i = 1; i <= n; i += 2) {
    Pos best = pal.is_pal(first, first + i - 1) ? 1 : std::numeric_limits<Pos>::max();
    for (Pos j = 2; j < i && best > 1; j += 2)  // j is a pad cut; last palindrome is s[j + 1, i]
      if (pal.is_pal(first + j, first + i - 1)) best = std::min(best, f[static_cast<std::size_t>(j - 1)] + 1);
    f[static_cast<std::size_t>(i)] = best;
  }
  return f;
}

}  // namespace detail

/// Padded palindromic length: fewest palindromes p1 # p2 # ... # pk.
inline Pos ppl(const Word& w, Symbol pad = kDefaultPad) {
  if (!has_padded_shape(w, pad)) throw std::invalid_argument("ppl needs a padded word (letters at odd positions)");
  const PalindromeTable pal(w);
  return detail::ppl_profile(pal, 1, w.size()).back();
}

enum class Scope { prefixes, factors };

inline Pos max_pl(const Word& w, Scope scope) {
  if (w.empty()) throw std::invalid_argument("max_pl of the empty word");
  if (scope == Scope::prefixes) return pl_fast(w).max_pl;
  Pos best = 0;
  for (Pos i = 1; i <= w.size(); ++i) best = std::max(best, pl_fast(w.suffix_from(i)).max_pl);
  return best;
}

/// Pad positions n whose inner slice z[2, n - 1] has PPL exactly m; Cover(0) = {1}.
inline PosSet cover(const Word& z, Pos m, Symbol pad = kDefaultPad) {
  if (z.empty() || z[1] != pad) throw std::invalid_argument("cover needs a word starting with the pad");
  if (m < 0) throw std::invalid_argument("cover degree must be >= 0");
  if (m == 0) return PosSet{1};
  for (Pos i = 2; i <= z.size(); ++i)
    if ((i % 2 == 1) != (z[i] == pad)) throw std::invalid_argument("cover needs pads exactly at odd positions");
  if (z.size() < 3) return {};
  const PalindromeTable pal(z);
  const Pos last_letter = (z.size() % 2 == 0) ? z.size() : z.size() - 1;
  const auto f = detail::ppl_profile(pal, 2, last_letter);
  std::vector<Pos> out;
  for (Pos n = 3; n <= z.size(); n += 2)
    if (f[static_cast<std::size_t>(n - 2)] == m) out.push_back(n);
  return PosSet(std::move(out));
}

/// All Cover(m) for m = 1..max, from one DP.
inline std::vector<PosSet> cover_levels(const Word& z, Symbol pad = kDefaultPad) {
  std::vector<PosSet> levels{PosSet{1}};
  if (z.empty() || z[1] != pad) throw std::invalid_argument("cover needs a word starting with the pad");
  if (z.size() < 3) return levels;
  const PalindromeTable pal(z);
  const Pos last_letter = (z.size() % 2 == 0) ? z.size() : z.size() - 1;
  const auto f = detail::ppl_profile(pal, 2, last_letter);
  for (Pos n = 3; n <= z.size(); n += 2) {
    const Pos m = f[static_cast<std::size_t>(n - 2)];
    while (static_cast<Pos>(levels.size()) <= m) levels.emplace_back();
    levels[static_cast<std::size_t>(m)].insert(n);
  }
  return levels;
}

}  // namespace pallen
