#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pallen/word.hpp"

namespace pallen {

enum class Family { thue_morse, fibonacci, period_doubling, periodic, random };

inline Family parse_family(std::string_view name) {
  if (name == "thue_morse") return Family::thue_morse;
  if (name == "fibonacci") return Family::fibonacci;
  if (name == "period_doubling") return Family::period_doubling;
  if (name == "periodic") return Family::periodic;
  if (name == "random") return Family::random;
  throw std::invalid_argument("unknown generator family: " + std::string(name));
}

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::thue_morse: return "thue_morse";
    case Family::fibonacci: return "fibonacci";
    case Family::period_doubling: return "period_doubling";
    case Family::periodic: return "periodic";
    case Family::random: return "random";
  }
  return "unknown";
}

struct GeneratorSpec {
  Family family = Family::thue_morse;
  Pos length = 1;
  Word preperiod{};     // periodic only
  Word period{};        // periodic only
  int alphabet_size = 2;  // random only
  std::uint64_t seed = 1;  // random only
};

/// xorshift64* : x ^= x >> 12; x ^= x << 25; x ^= x >> 27; out = x * 0x2545F4914F6CDD1D.
class XorShift64Star {
 public:
  explicit XorShift64Star(std::uint64_t seed) : state_(seed == 0 ? 0x9E3779B97F4A7C15ULL : seed) {}
  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }
  /// Uniform-ish value in [0, bound) from the high 32 bits.
  std::uint64_t below(std::uint64_t bound) { return (next() >> 32) % bound; }

 private:
  std::uint64_t state_;
};

namespace detail {

// Fixed point of a -> first_image, b -> second_image, truncated to n letters.
inline std::u32string substitution_prefix(Pos n, std::u32string_view a_image, std::u32string_view b_image) {
  std::u32string w = U"a";
  while (static_cast<Pos>(w.size()) < n) {
    std::u32string next;
    next.reserve(w.size() * 2);
    for (char32_t c : w) next += (c == U'a') ? a_image : b_image;
    w = std::move(next);
  }
  w.resize(static_cast<std::size_t>(n));
  return w;
}

}  // namespace detail

inline Word generate(const GeneratorSpec& spec) {
  if (spec.length < 1) throw std::invalid_argument("generator length must be >= 1");
  const Pos n = spec.length;
  std::u32string out;
  out.reserve(static_cast<std::size_t>(n));
  switch (spec.family) {
    case Family::thue_morse:
      for (Pos i = 0; i < n; ++i)
        out.push_back(std::popcount(static_cast<std::uint64_t>(i)) % 2 == 0 ? U'a' : U'b');
      break;
    case Family::fibonacci:
      out = detail::substitution_prefix(n, U"ab", U"a");
      break;
    case Family::period_doubling:
      out = detail::substitution_prefix(n, U"ab", U"aa");
      break;
    case Family::periodic: {
      if (spec.period.empty()) throw std::invalid_argument("periodic family needs a nonempty period");
      out = spec.preperiod.symbols();
      while (static_cast<Pos>(out.size()) < n) out += spec.period.symbols();
      out.resize(static_cast<std::size_t>(n));
      break;
    }
    case Family::random: {
      if (spec.alphabet_size < 1 || spec.alphabet_size > 26)
        throw std::invalid_argument("random alphabet size must be in [1, 26]");
      XorShift64Star rng(spec.seed);
      for (Pos i = 0; i < n; ++i)
        out.push_back(static_cast<char32_t>(U'a' + rng.below(static_cast<std::uint64_t>(spec.alphabet_size))));
      break;
    }
  }
  return Word(std::move(out));
}

inline Word thue_morse(Pos n) { return generate({.family = Family::thue_morse, .length = n}); }
inline Word fibonacci(Pos n) { return generate({.family = Family::fibonacci, .length = n}); }
inline Word period_doubling(Pos n) { return generate({.family = Family::period_doubling, .length = n}); }
inline Word periodic(const Word& pre, const Word& per, Pos n) {
  return generate({.family = Family::periodic, .length = n, .preperiod = pre, .period = per});
}
inline Word random_word(Pos n, int k, std::uint64_t seed) {
  return generate({.family = Family::random, .length = n, .alphabet_size = k, .seed = seed});
}

/// z_1 = pad, z_{i+1} = z_i ẑ_i z_i with ẑ_1 = a and ẑ_i = a pad c_i pad a, c_i a fresh letter.
/// Returns z_1, ..., z_h; z_h has exactly h non-periodic palindromic prefixes.
inline std::vector<Word> nested_palindromes(Pos h, Symbol pad = kDefaultPad) {
  if (h < 1 || h > 24) throw std::invalid_argument("nested_palindromes needs 1 <= h <= 24");
  std::vector<Word> out{Word(std::u32string(1, pad))};
  for (Pos i = 1; i < h; ++i) {
    std::u32string hat = i == 1 ? U"a" : std::u32string{U'a', pad, static_cast<Symbol>(U'b' + i - 1), pad, U'a'};
    out.push_back(out.back() + Word(std::move(hat)) + out.back());
  }
  return out;
}

}  // namespace pallen
