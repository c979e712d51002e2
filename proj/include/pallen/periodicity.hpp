#pragma once

#include <compare>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "pallen/palindrome_table.hpp"
#include "pallen/word.hpp"

namespace pallen {

/// Exact nonnegative fraction, kept in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    auto g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return (a.num * b.den) <=> (b.num * a.den);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    os << r.num;
    if (r.den != 1) os << '/' << r.den;
    return os;
  }
};

/// Border array: pi[k] = length of the longest proper border of s[0, k].
inline std::vector<Pos> prefix_function(std::u32string_view s) {
  std::vector<Pos> pi(s.size(), 0);
  for (std::size_t i = 1; i < s.size(); ++i) {
    Pos k = pi[i - 1];
    while (k > 0 && s[i] != s[static_cast<std::size_t>(k)]) k = pi[static_cast<std::size_t>(k - 1)];
    if (s[i] == s[static_cast<std::size_t>(k)]) ++k;
    pi[i] = k;
  }
  return pi;
}

inline Pos mper(std::u32string_view s) {
  if (s.empty()) throw std::invalid_argument("minimal period of the empty word");
  return static_cast<Pos>(s.size()) - prefix_function(s).back();
}

/// order(s) < 2, decided exactly as |s| < 2 mper(s).
inline bool is_non_periodic(std::u32string_view s) { return static_cast<Pos>(s.size()) < 2 * mper(s); }

/// All periods xi <= |w|, ascending; |w| is always included.
inline PosSet periods(const Word& w) {
  if (w.empty()) throw std::invalid_argument("periods of the empty word");
  auto pi = prefix_function(w.view());
  std::vector<Pos> out;
  for (Pos b = pi.back();; b = pi[static_cast<std::size_t>(b - 1)]) {
    out.push_back(w.size() - b);
    if (b == 0) break;
  }
  return PosSet(std::move(out));
}

struct MperOrder {
  Pos mper;
  Rational order;
};

inline MperOrder mper_order(const Word& w) {
  if (w.empty()) throw std::invalid_argument("order of the empty word");
  Pos p = mper(w.view());
  return {p, Rational(w.size(), p)};
}

inline bool has_period(std::u32string_view s, Pos xi) {
  for (std::size_t i = 0; i + static_cast<std::size_t>(xi) < s.size(); ++i)
    if (s[i] != s[i + static_cast<std::size_t>(xi)]) return false;
  return true;
}

/// Largest n2 such that xi is a period of z[n1, n2].
inline Pos per_prolong(const Word& z, Pos n1, Pos xi) {
  if (n1 < 1 || n1 > z.size()) throw std::out_of_range("per_prolong start out of range");
  if (xi < 1) throw std::invalid_argument("period must be >= 1");
  const auto& s = z.symbols();
  Pos n2 = n1 + xi - 1;
  if (n2 >= z.size()) return z.size();
  while (n2 < z.size() && s[static_cast<std::size_t>(n2)] == s[static_cast<std::size_t>(n2 - xi)]) ++n2;
  return n2;
}

struct Run {
  Pos nu1;
  Pos nu2;
  Pos xi;
  friend bool operator==(const Run&, const Run&) = default;
  friend auto operator<=>(const Run&, const Run&) = default;
};

/// Whether s splits as p1 p2 with palindromes p1, p2 (p2 nonempty) and order(p1 p2 p1) < 2.
inline bool splits_into_couple(std::u32string_view s) {
  const PalindromeTable pal(s);
  const Pos n = static_cast<Pos>(s.size());
  for (Pos k = 0; k < n; ++k) {
    if (k > 0 && !pal.is_pal(1, k)) continue;
    if (!pal.is_pal(k + 1, n)) continue;
    std::u32string tripled(s);
    tripled.append(s.substr(0, static_cast<std::size_t>(k)));
    if (is_non_periodic(tripled)) return true;
  }
  return false;
}

/// Every run of z, enumerated per (nu1, xi) with prolongation and filtered by the couple-prefix clause.
inline std::vector<Run> find_runs(const Word& z) {
  if (z.empty()) throw std::invalid_argument("runs of the empty word");
  std::vector<Run> out;
  const auto& s = z.symbols();
  for (Pos nu1 = 1; nu1 <= z.size(); ++nu1) {
    for (Pos xi = 1; nu1 + xi - 1 <= z.size(); ++xi) {
      if (nu1 > 1 && s[static_cast<std::size_t>(nu1 - 2)] == s[static_cast<std::size_t>(nu1 - 2 + xi)])
        continue;  // not left-maximal
      Pos nu2 = per_prolong(z, nu1, xi);
      if (!splits_into_couple(z.view().substr(static_cast<std::size_t>(nu1 - 1), static_cast<std::size_t>(xi))))
        continue;
      out.push_back({nu1, nu2, xi});
    }
  }
  return out;
}

/// Checks every clause of the run definition for one triple.
inline bool is_run(const Word& z, const Run& r) {
  if (r.nu1 < 1 || r.nu2 > z.size() || r.nu2 < r.nu1 || r.xi < 1) return false;
  if (r.nu2 - r.nu1 + 1 < r.xi) return false;
  if (per_prolong(z, r.nu1, r.xi) != r.nu2) return false;
  if (r.nu1 > 1 && z[r.nu1 - 1] == z[r.nu1 - 1 + r.xi]) return false;
  return splits_into_couple(z.view().substr(static_cast<std::size_t>(r.nu1 - 1), static_cast<std::size_t>(r.xi)));
}

}  // namespace pallen
