#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pallen {

using Symbol = char32_t;
using Pos = std::int64_t;

/// Reserved separator used by padded words in text I/O.
inline constexpr Symbol kDefaultPad = U'#';

/// Raised when a construction contradicts an invariant the theory guarantees.
class consistency_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when an exact search would exceed its configured limits.
class budget_exceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace utf8 {

inline std::u32string decode(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    auto lead = static_cast<unsigned char>(text[i]);
    std::size_t extra = 0;
    char32_t cp = 0;
    if (lead < 0x80) {
      cp = lead;
    } else if ((lead >> 5) == 0x6) {
      cp = lead & 0x1F;
      extra = 1;
    } else if ((lead >> 4) == 0xE) {
      cp = lead & 0x0F;
      extra = 2;
    } else if ((lead >> 3) == 0x1E) {
      cp = lead & 0x07;
      extra = 3;
    } else {
      throw std::invalid_argument("invalid UTF-8 lead byte");
    }
    for (std::size_t k = 1; k <= extra; ++k) {
      if (i + k >= text.size()) throw std::invalid_argument("truncated UTF-8 sequence");
      auto cont = static_cast<unsigned char>(text[i + k]);
      if ((cont >> 6) != 0x2) throw std::invalid_argument("invalid UTF-8 continuation byte");
      cp = (cp << 6) | (cont & 0x3F);
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

inline std::string encode(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : text) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

}  // namespace utf8

/// Finite word with 1-based positions. Slices and accesses are validated, never clamped.
class Word {
 public:
  Word() = default;
  explicit Word(std::u32string symbols) : symbols_(std::move(symbols)) {}

  static Word from_utf8(std::string_view text) { return Word(utf8::decode(text)); }
  std::string to_utf8() const { return utf8::encode(symbols_); }

  Pos size() const { return static_cast<Pos>(symbols_.size()); }
  bool empty() const { return symbols_.empty(); }

  /// w[i] for 1 <= i <= |w|.
  Symbol operator[](Pos i) const {
    if (i < 1 || i > size()) throw std::out_of_range("word position out of range");
    return symbols_[static_cast<std::size_t>(i - 1)];
  }

  /// w[i, j] for 1 <= i <= j <= |w|.
  Word slice(Pos i, Pos j) const {
    if (i < 1 || j < i || j > size()) throw std::out_of_range("word slice out of range");
    return Word(symbols_.substr(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - i + 1)));
  }

  /// w[i, |w|]; empty when i = |w| + 1.
  Word suffix_from(Pos i) const {
    if (i < 1 || i > size() + 1) throw std::out_of_range("word suffix out of range");
    return Word(symbols_.substr(static_cast<std::size_t>(i - 1)));
  }

  const std::u32string& symbols() const { return symbols_; }
  std::u32string_view view() const { return symbols_; }

  bool contains(Symbol s) const { return symbols_.find(s) != std::u32string::npos; }

  Word operator+(const Word& other) const { return Word(symbols_ + other.symbols_); }
  Word& operator+=(const Word& other) {
    symbols_ += other.symbols_;
    return *this;
  }
  Word repeated(Pos times) const {
    std::u32string out;
    for (Pos k = 0; k < times; ++k) out += symbols_;
    return Word(std::move(out));
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) { return a.symbols_ <=> b.symbols_; }

 private:
  std::u32string symbols_;
};

inline Word operator""_w(const char* text, std::size_t len) { return Word::from_utf8({text, len}); }

/// Letters plus the distinguished pad symbol, which is never a letter.
class Alphabet {
 public:
  Alphabet(std::set<Symbol> letters, Symbol pad = kDefaultPad) : letters_(std::move(letters)), pad_(pad) {
    if (letters_.empty()) throw std::invalid_argument("alphabet needs at least one letter");
    if (letters_.contains(pad_)) throw std::invalid_argument("pad symbol must not be a letter");
  }

  /// The first k lowercase latin letters.
  static Alphabet latin(int k, Symbol pad = kDefaultPad) {
    if (k < 1 || k > 26) throw std::invalid_argument("latin alphabet size must be in [1, 26]");
    std::set<Symbol> letters;
    for (int i = 0; i < k; ++i) letters.insert(static_cast<Symbol>(U'a' + i));
    return Alphabet(std::move(letters), pad);
  }

  const std::set<Symbol>& letters() const { return letters_; }
  Symbol pad() const { return pad_; }
  bool is_letter(Symbol s) const { return letters_.contains(s); }

 private:
  std::set<Symbol> letters_;
  Symbol pad_;
};

/// Closed integer range [lo, hi] with 1 <= lo <= hi.
struct Interval {
  Pos lo;
  Pos hi;

  Interval(Pos lo_, Pos hi_) : lo(lo_), hi(hi_) {
    if (lo < 1 || hi < lo) throw std::invalid_argument("interval requires 1 <= lo <= hi");
  }
  Pos length() const { return hi - lo + 1; }
  bool contains(Pos n) const { return lo <= n && n <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
  friend auto operator<=>(const Interval&, const Interval&) = default;
};

/// Finite set of positive positions, deduplicated, ascending.
class PosSet {
 public:
  using const_iterator = std::vector<Pos>::const_iterator;

  PosSet() = default;
  PosSet(std::initializer_list<Pos> items) : PosSet(std::vector<Pos>(items)) {}
  explicit PosSet(std::vector<Pos> items) : items_(std::move(items)) {
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
    if (!items_.empty() && items_.front() < 1) throw std::invalid_argument("positions must be >= 1");
  }

  /// [lo, hi] as a set.
  static PosSet range(Pos lo, Pos hi) {
    std::vector<Pos> v;
    for (Pos n = lo; n <= hi; ++n) v.push_back(n);
    return PosSet(std::move(v));
  }

  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  Pos min() const {
    if (items_.empty()) throw std::logic_error("min of empty set");
    return items_.front();
  }
  Pos max() const {
    if (items_.empty()) throw std::logic_error("max of empty set");
    return items_.back();
  }
  bool contains(Pos n) const { return std::binary_search(items_.begin(), items_.end(), n); }
  const_iterator begin() const { return items_.begin(); }
  const_iterator end() const { return items_.end(); }
  const std::vector<Pos>& elements() const { return items_; }

  void insert(Pos n) {
    if (n < 1) throw std::invalid_argument("positions must be >= 1");
    auto it = std::lower_bound(items_.begin(), items_.end(), n);
    if (it == items_.end() || *it != n) items_.insert(it, n);
  }

  /// Elements within [lo, hi].
  PosSet restricted(Pos lo, Pos hi) const {
    PosSet out;
    auto first = std::lower_bound(items_.begin(), items_.end(), lo);
    auto last = std::upper_bound(items_.begin(), items_.end(), hi);
    out.items_.assign(first, last);
    return out;
  }

  bool is_subset_of(const PosSet& other) const {
    return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
  }

  PosSet united(const PosSet& other) const {
    PosSet out;
    std::set_union(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                   std::back_inserter(out.items_));
    return out;
  }
  PosSet intersected(const PosSet& other) const {
    PosSet out;
    std::set_intersection(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                          std::back_inserter(out.items_));
    return out;
  }
  PosSet minus(const PosSet& other) const {
    PosSet out;
    std::set_difference(items_.begin(), items_.end(), other.items_.begin(), other.items_.end(),
                        std::back_inserter(out.items_));
    return out;
  }

  friend bool operator==(const PosSet&, const PosSet&) = default;
  friend auto operator<=>(const PosSet& a, const PosSet& b) { return a.items_ <=> b.items_; }

 private:
  std::vector<Pos> items_;
};

inline Word reverse(const Word& w) {
  std::u32string s = w.symbols();
  std::reverse(s.begin(), s.end());
  return Word(std::move(s));
}

/// True iff w equals its reverse; the empty word and single symbols qualify.
inline bool is_palindrome(std::u32string_view s) {
  for (std::size_t i = 0, j = s.size(); i + 1 < j; ++i, --j) {
    if (s[i] != s[j - 1]) return false;
  }
  return true;
}
inline bool is_palindrome(const Word& w) { return is_palindrome(w.view()); }

/// u1 pad u2 pad ... pad un.
inline Word pad_finite(const Word& u, Symbol pad = kDefaultPad) {
  if (u.empty()) throw std::invalid_argument("pad_finite needs a nonempty word");
  if (u.contains(pad)) throw std::invalid_argument("word contains the reserved pad symbol");
  std::u32string out;
  out.reserve(static_cast<std::size_t>(2 * u.size() - 1));
  for (std::size_t i = 0; i < u.symbols().size(); ++i) {
    if (i > 0) out.push_back(pad);
    out.push_back(u.symbols()[i]);
  }
  return Word(std::move(out));
}

/// Length-n prefix of pad u1 pad u2 ...: odd positions hold the pad, even positions the letters.
inline Word pad_infinite_prefix(const Word& u, Pos n, Symbol pad = kDefaultPad) {
  if (u.contains(pad)) throw std::invalid_argument("word contains the reserved pad symbol");
  if (n < 0 || n > 2 * u.size()) throw std::invalid_argument("requested prefix exceeds the padded material");
  std::u32string out;
  out.reserve(static_cast<std::size_t>(n));
  for (Pos i = 1; i <= n; ++i) out.push_back(i % 2 == 1 ? pad : u[i / 2]);
  return Word(std::move(out));
}

/// Reflection of j inside [lo, hi]: j - lo = hi - result.
inline Pos mirror(Pos lo, Pos hi, Pos j) {
  if (j < lo || j > hi) throw std::out_of_range("mirror position outside [lo, hi]");
  return lo + hi - j;
}

/// Reflection of D inside [lo, hi]; elements outside the range are dropped.
inline PosSet mirror_set(Pos lo, Pos hi, const PosSet& d) {
  std::vector<Pos> out;
  for (Pos j : d)
    if (lo <= j && j <= hi) out.push_back(lo + hi - j);
  return PosSet(std::move(out));
}

inline Pos floor_mod(Pos a, Pos m) {
  Pos r = a % m;
  return r < 0 ? r + m : r;
}

/// {s + k*xi | s in S, k in Z} restricted to the window.
inline PosSet spread_in(const PosSet& s, Pos xi, Interval window) {
  if (xi < 1) throw std::invalid_argument("spread step must be >= 1");
  std::vector<Pos> out;
  std::set<Pos> residues;
  for (Pos v : s) residues.insert(floor_mod(v, xi));
  for (Pos r : residues) {
    Pos first = window.lo + floor_mod(r - window.lo, xi);
    for (Pos n = first; n <= window.hi; n += xi) out.push_back(n);
  }
  return PosSet(std::move(out));
}

inline Pos diam(const PosSet& d) { return d.empty() ? 0 : d.max() - d.min() + 1; }

/// [min D, max D], or nothing for the empty set.
inline std::optional<Interval> close(const PosSet& d) {
  if (d.empty()) return std::nullopt;
  return Interval(d.min(), d.max());
}

/// Every element shifted by j; the result must stay positive.
inline PosSet add(const PosSet& d, Pos j) {
  std::vector<Pos> out;
  out.reserve(d.size());
  for (Pos v : d) {
    if (v + j < 1) throw std::invalid_argument("shift produces a non-positive position");
    out.push_back(v + j);
  }
  return PosSet(std::move(out));
}

}  // namespace pallen
