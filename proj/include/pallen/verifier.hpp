#pragma once

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pallen/base_positions.hpp"
#include "pallen/covering_palindromes.hpp"
#include "pallen/generators.hpp"
#include "pallen/nps.hpp"
#include "pallen/palindrome_table.hpp"
#include "pallen/palindromics.hpp"
#include "pallen/periodicity.hpp"
#include "pallen/pl_engine.hpp"
#include "pallen/word.hpp"

namespace pallen {

class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PadMode { none, finite, infinite };

inline PadMode parse_pad_mode(std::string_view s) {
  if (s == "none") return PadMode::none;
  if (s == "finite") return PadMode::finite;
  if (s == "infinite") return PadMode::infinite;
  throw config_error("unknown pad mode: " + std::string(s));
}

/// A corpus word: either given verbatim or generated, then optionally padded.
struct CorpusEntry {
  std::optional<Word> literal;
  GeneratorSpec spec;
  PadMode pad = PadMode::none;

  Word resolve() const {
    const Word w = literal ? *literal : generate(spec);
    switch (pad) {
      case PadMode::none: return w;
      case PadMode::finite: return pad_finite(w);
      case PadMode::infinite: return pad_infinite_prefix(w, 2 * w.size() - 1);
    }
    return w;
  }
};

/// Hooks that corrupt the checking side, to show the suites notice.
struct Mutations {
  bool flip_palindrome = false;    // the check answers wrongly on words of length 3
  bool mirror_off_by_one = false;  // mirror(lo, hi, j) = lo + hi - j + 1
};

struct SuiteConfig {
  std::vector<CorpusEntry> corpus;
  std::map<std::string, Pos> scales;
  std::uint64_t seed = 1;
  std::set<std::string> enabled;  // empty means every suite
  Mutations mutations;
};

struct Counterexample {
  std::string word;
  std::string params;
  std::uint64_t seed = 0;
  std::string detail;

  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct SuiteResult {
  std::string name;
  Pos instances_run = 0;
  std::vector<Counterexample> failures;
  std::vector<std::string> skipped;

  friend bool operator==(const SuiteResult&, const SuiteResult&) = default;
};

struct Report {
  std::vector<SuiteResult> suites;  // ordered by name

  bool passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.failures.empty(); });
  }
  friend bool operator==(const Report&, const Report&) = default;
};

/// Scale limits: the default and the largest value a suite accepts.
struct ScaleLimit {
  Pos fallback;
  Pos cap;
};

inline const std::map<std::string, ScaleLimit>& scale_limits() {
  static const std::map<std::string, ScaleLimit> limits{
      {"pl_random_words", {100, 5000}}, {"pl_max_len", {400, 4000}},    {"table_max_len", {200, 2000}},
      {"known_instances", {1000, 100000}}, {"pal_max_len", {40, 40}},    {"pal_exhaustive_len", {16, 40}},
      {"padded_max_len", {255, 1023}},     {"ordinary_max_h", {5, 6}},   {"base_max_h", {5, 7}},
      {"nps_max_word", {48, 64}},
  };
  return limits;
}

class SuiteContext {
 public:
  SuiteContext(const SuiteConfig& cfg, std::vector<Word> words) : cfg_(cfg), words_(std::move(words)) {}

  const std::vector<Word>& words() const { return words_; }
  std::uint64_t seed() const { return cfg_.seed; }

  Pos scale(const std::string& name) const {
    const auto it = cfg_.scales.find(name);
    return it != cfg_.scales.end() ? it->second : scale_limits().at(name).fallback;
  }

  bool is_pal(const Word& w) const {
    const bool p = is_palindrome(w);
    return cfg_.mutations.flip_palindrome && w.size() == 3 ? !p : p;
  }

  Pos mirror(Pos lo, Pos hi, Pos j) const { return pallen::mirror(lo, hi, j) + (cfg_.mutations.mirror_off_by_one ? 1 : 0); }

  /// Pad-initial form: the word itself if it already has pads at odd positions, else its
  /// infinite-style padding cut to padded_max_len.
  std::optional<Word> padded(const Word& w) const {
    const Pos cap = scale("padded_max_len");
    if (is_pad_initial(w)) return w.size() <= cap ? std::optional<Word>(w) : std::nullopt;
    if (w.contains(kDefaultPad)) return std::nullopt;
    const Pos n = std::min(2 * w.size() - 1, cap % 2 ? cap : cap - 1);
    return pad_infinite_prefix(w.slice(1, std::min(w.size(), (n + 1) / 2)), n);
  }

  static bool is_pad_initial(const Word& w) {
    if (w.size() % 2 == 0) return false;
    for (Pos i = 1; i <= w.size(); ++i)
      if ((i % 2 == 1) != (w[i] == kDefaultPad)) return false;
    return true;
  }

 private:
  const SuiteConfig& cfg_;
  std::vector<Word> words_;
};

namespace detail {

/// Greedy shortening from either end while the check still fails.
inline Word shrink_word(Word w, const std::function<bool(const Word&)>& fails, Pos step = 1) {
  for (bool progress = true; progress && w.size() > step;) {
    progress = false;
    for (const Word& cand : {w.slice(1 + step, w.size()), w.slice(1, w.size() - step)})
      if (fails(cand)) {
        w = cand;
        progress = true;
        break;
      }
  }
  return w;
}

inline std::string show(const std::vector<Pos>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

class SuiteRun {
 public:
  explicit SuiteRun(std::string name) { r_.name = std::move(name); }
  void count(Pos n = 1) { r_.instances_run += n; }
  void fail(const Word& w, std::string params, std::uint64_t seed, std::string detail) {
    if (r_.failures.size() < 20) r_.failures.push_back({w.to_utf8(), std::move(params), seed, std::move(detail)});
  }
  void skip(std::string why) { r_.skipped.push_back(std::move(why)); }
  SuiteResult done() { return std::move(r_); }

 private:
  SuiteResult r_;
};

inline SuiteResult suite_pl_oracle(const SuiteContext& ctx) {
  SuiteRun run("pl_oracle");
  const Pos cap = ctx.scale("pl_max_len");
  auto mismatch = [](const Word& w) { return pl_fast(w).prefix_pl != pl_oracle_profile(w); };
  for (const Word& w : ctx.words()) {
    const Word u = w.size() > cap ? w.slice(1, cap) : w;
    if (u.size() < w.size()) run.skip("pl_oracle: word cut to " + std::to_string(cap) + " letters");
    run.count();
    if (mismatch(u)) run.fail(shrink_word(u, mismatch), "prefix profile", 0, "pl_fast differs from pl_oracle");
  }
  for (Pos i = 0; i < ctx.scale("pl_random_words"); ++i) {
    const std::uint64_t s = ctx.seed() * 1000003 + static_cast<std::uint64_t>(i);
    const Word w = random_word(1 + static_cast<Pos>(s % static_cast<std::uint64_t>(std::min<Pos>(cap, 300))), 2 + static_cast<int>(i % 2), s);
    run.count();
    if (mismatch(w)) run.fail(shrink_word(w, mismatch), "random", s, "pl_fast differs from pl_oracle");
  }
  return run.done();
}

inline SuiteResult suite_palindrome_table(const SuiteContext& ctx) {
  SuiteRun run("palindrome_table");
  const Pos cap = ctx.scale("table_max_len");
  for (const Word& w : ctx.words()) {
    const Word u = w.size() > cap ? w.slice(1, cap) : w;
    const PalindromeTable tab(u);
    auto first_bad = [&](const Word& x, const PalindromeTable& t) -> std::optional<std::pair<Pos, Pos>> {
      for (Pos i = 1; i <= x.size(); ++i)
        for (Pos j = i; j <= std::min(x.size(), i + 39); ++j)
          if (t.is_pal(i, j) != ctx.is_pal(x.slice(i, j))) return std::pair{i, j};
      return std::nullopt;
    };
    run.count(u.size());
    if (const auto bad = first_bad(u, tab)) {
      const Word small = shrink_word(u, [&](const Word& x) { return first_bad(x, PalindromeTable(x)).has_value(); });
      const auto at = *first_bad(small, PalindromeTable(small));
      run.fail(small, "i=" + std::to_string(at.first) + " j=" + std::to_string(at.second), 0,
               "palindrome table disagrees with the direct check");
    }
  }
  return run.done();
}

inline SuiteResult suite_fine_wilf(const SuiteContext& ctx) {
  SuiteRun run("fine_wilf");
  for (Pos i = 0; i < ctx.scale("known_instances"); ++i) {
    const std::uint64_t s = ctx.seed() * 7919 + static_cast<std::uint64_t>(i);
    const Word base = random_word(1 + static_cast<Pos>(s % 7), 2, s);
    const Word w = periodic(Word(), base, 1 + static_cast<Pos>(s % 200));
    const auto ps = periods(w).elements();
    run.count();
    for (Pos p : ps)
      for (Pos q : ps)
        if (p <= q && w.size() >= p + q - std::gcd(p, q) && !has_period(w.view(), std::gcd(p, q)))
          run.fail(w, "i=" + std::to_string(p) + " j=" + std::to_string(q), s, "gcd is not a period");
  }
  // exhaustive over all binary words up to length 12
  for (Pos n = 1; n <= 12; ++n)
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
      std::u32string s;
      for (Pos k = 0; k < n; ++k) s.push_back(m >> k & 1 ? U'b' : U'a');
      const Word w(s);
      const auto ps = periods(w).elements();
      run.count();
      for (Pos p : ps)
        for (Pos q : ps)
          if (p <= q && n >= p + q - std::gcd(p, q) && !has_period(w.view(), std::gcd(p, q)))
            run.fail(w, "i=" + std::to_string(p) + " j=" + std::to_string(q), 0, "gcd is not a period");
    }
  return run.done();
}

inline SuiteResult suite_period_gluing(const SuiteContext& ctx) {
  SuiteRun run("period_gluing");
  for (Pos i = 0; i < ctx.scale("known_instances"); ++i) {
    const std::uint64_t s = ctx.seed() * 104729 + static_cast<std::uint64_t>(i);
    XorShift64Star rng(s);
    const Pos j = 1 + static_cast<Pos>(rng.below(6));
    const Pos lu = static_cast<Pos>(rng.below(10)), lv = j + static_cast<Pos>(rng.below(10)), lw = static_cast<Pos>(rng.below(10));
    // v is j-periodic; u and w continue it on each side
    const Word uvw = periodic(Word(), random_word(j, 2, s), lu + lv + lw);
    run.count();
    const Word uv = uvw.slice(1, lu + lv), vw = uvw.slice(lu + 1, lu + lv + lw);
    if (has_period(uv.view(), j) && has_period(vw.view(), j) && !periods(uvw).contains(j))
      run.fail(uvw, "j=" + std::to_string(j), s, "glued word loses the period");
  }
  // exhaustive: every binary uvw with |uvw| <= 10 split every way
  for (Pos n = 1; n <= 10; ++n)
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
      std::u32string s;
      for (Pos k = 0; k < n; ++k) s.push_back(m >> k & 1 ? U'b' : U'a');
      const Word w(s);
      for (Pos a = 0; a <= n; ++a)
        for (Pos b = a; b <= n; ++b)
          for (Pos j = 1; j <= b - a; ++j) {
            const auto view = w.view();
            if (!has_period(view.substr(0, static_cast<std::size_t>(b)), j) ||
                !has_period(view.substr(static_cast<std::size_t>(a)), j))
              continue;
            run.count();
            if (!has_period(view, j)) run.fail(w, "j=" + std::to_string(j), 0, "glued word loses the period");
          }
    }
  return run.done();
}

// p = (p1 p2)^q p1 with |p1 p2| = j and both parts palindromes.
inline std::optional<std::string> decomposes(const SuiteContext& ctx, const Word& p, Pos j) {
  const Pos k = p.size() % j;
  const Word p1 = k ? p.slice(1, k) : Word(), p2 = p.slice(k + 1, j);
  if (!(k == 0 || ctx.is_pal(p1)) || !ctx.is_pal(p2)) return "parts are not palindromes";
  if ((p1 + p2).repeated(p.size() / j) + p1 != p) return "parts do not rebuild p";
  return std::nullopt;
}

inline SuiteResult suite_palindrome_periods(const SuiteContext& ctx) {
  SuiteRun run("palindrome_periods");
  const Pos cap = ctx.scale("pal_max_len");
  auto check = [&](const Word& p, std::uint64_t seed) {
    for (Pos j : periods(p)) {
      run.count();
      if (const auto why = decomposes(ctx, p, j)) run.fail(p, "j=" + std::to_string(j), seed, *why);
    }
  };
  for (Pos i = 0; i < ctx.scale("known_instances"); ++i) {
    const std::uint64_t s = ctx.seed() * 15485863 + static_cast<std::uint64_t>(i);
    const Pos len = 1 + static_cast<Pos>(s % static_cast<std::uint64_t>(cap));
    const Word half = random_word((len + 1) / 2, 2, s);
    // low-entropy halves give palindromes with many periods
    const Word h2 = i % 3 ? half : periodic(Word(), half.slice(1, std::min<Pos>(half.size(), 3)), half.size());
    const Word p = h2 + (len % 2 == 0 ? reverse(h2) : h2.size() > 1 ? reverse(h2.slice(1, h2.size() - 1)) : Word());
    check(p, s);
  }
  // every binary palindrome up to pal_exhaustive_len
  for (Pos n = 1; n <= std::min(ctx.scale("pal_exhaustive_len"), cap); ++n)
    for (std::uint32_t m = 0; m < (1u << ((n + 1) / 2)); ++m) {
      std::u32string s(static_cast<std::size_t>(n), U'a');
      for (Pos k = 0; k < (n + 1) / 2; ++k)
        s[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(n - 1 - k)] = m >> k & 1 ? U'b' : U'a';
      check(Word(s), 0);
    }
  return run.done();
}

inline SuiteResult suite_prefix_palindrome_period(const SuiteContext& ctx) {
  SuiteRun run("prefix_palindrome_period");
  auto check = [&](const Word& t, std::uint64_t seed) {
    for (Pos l = 1; l < t.size(); ++l) {
      if (!ctx.is_pal(t.slice(1, l))) continue;
      run.count();
      if (!has_period(t.view(), t.size() - l))
        run.fail(t, "|u|=" + std::to_string(l), seed, "|t| - |u| is not a period");
    }
  };
  for (Pos i = 0; i < ctx.scale("known_instances"); ++i) {
    const std::uint64_t s = ctx.seed() * 32452843 + static_cast<std::uint64_t>(i);
    const Word half = random_word(1 + static_cast<Pos>(s % 20), 2, s);
    check(s % 2 ? half + reverse(half) : half + reverse(half.slice(1, std::max<Pos>(1, half.size() - 1))), s);
  }
  for (Pos n = 1; n <= 16; ++n)
    for (std::uint32_t m = 0; m < (1u << ((n + 1) / 2)); ++m) {
      std::u32string s(static_cast<std::size_t>(n), U'a');
      for (Pos k = 0; k < (n + 1) / 2; ++k)
        s[static_cast<std::size_t>(k)] = s[static_cast<std::size_t>(n - 1 - k)] = m >> k & 1 ? U'b' : U'a';
      const Word t(s);
      if (ctx.is_pal(t)) check(t, 0);
    }
  return run.done();
}

inline SuiteResult suite_cover_chain(const SuiteContext& ctx) {
  SuiteRun run("cover_chain");
  for (const Word& w : ctx.words()) {
    const auto z = ctx.padded(w);
    if (!z) {
      run.skip("cover_chain: word is neither raw nor pad-initial within padded_max_len");
      continue;
    }
    const PalIndex idx(*z);
    const auto levels = cover_levels(*z);
    for (std::size_t m = 1; m < levels.size(); ++m) {
      PosSet reach;
      for (Pos n : levels[m - 1])
        for (Pos e : idx.pal_prefix_ends(n)) reach.insert(e);
      run.count();
      const PosSet miss = levels[m].minus(reach);
      if (!miss.empty())
        run.fail(*z, "m=" + std::to_string(m), 0, "Cover(m) positions outside the extensions: " + show(miss.elements()));
    }
  }
  return run.done();
}

inline std::vector<Word> ordinary_factors(const SuiteContext& ctx, SuiteRun& run) {
  std::vector<Word> out;
  for (const Word& w : ctx.words()) {
    const auto z = ctx.padded(w);
    if (!z) {
      run.skip("ordinary factors: word is neither raw nor pad-initial within padded_max_len");
      continue;
    }
    for (Pos h0 = 2; h0 <= ctx.scale("ordinary_max_h"); ++h0)
      if (const auto iv = find_ordinary(*z, h0)) {
        const Word f = z->slice(iv->lo, iv->hi);
        if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
      }
  }
  return out;
}

inline SuiteResult suite_mirror_symmetry(const SuiteContext& ctx) {
  SuiteRun run("mirror_symmetry");
  for (const Word& z : ordinary_factors(ctx, run)) {
    const PalIndex idx(z);
    for (Pos n = 1; n <= z.size(); ++n) {
      const Pos bar = z.size() - n + 1;
      std::set<PalSpan> mirrored, right;
      for (const auto& s : cov_pal(idx, bar, CovKind::edge_left))
        mirrored.insert({ctx.mirror(1, z.size(), s.n2), ctx.mirror(1, z.size(), s.n1)});
      for (const auto& s : cov_pal(idx, n, CovKind::edge_right)) right.insert(s);
      run.count();
      if (mirrored != right) run.fail(z, "n=" + std::to_string(n), 0, "right edge spans differ from mirrored left ones");
    }
  }
  return run.done();
}

inline SuiteResult suite_cardinality_bounds(const SuiteContext& ctx) {
  SuiteRun run("cardinality_bounds");
  for (const Word& z : ordinary_factors(ctx, run)) {
    const PalIndex idx(z);
    const Pos h = static_cast<Pos>(npp(z).size());
    for (Pos n = 1; n <= z.size(); ++n) {
      run.count();
      const Pos g = static_cast<Pos>(idx.gamma(n).size());
      const Pos cmd = static_cast<Pos>(cov_pal_cmd(idx, n).size());
      const Pos left = static_cast<Pos>(runs_of(idx, cov_pal(idx, n, CovKind::edge_left)).runs.size());
      const Pos edge = static_cast<Pos>(runs_of(idx, cov_pal(idx, n, CovKind::edge)).runs.size());
      const std::string at = "n=" + std::to_string(n) + " h=" + std::to_string(h);
      if (g > h) run.fail(z, at, 0, "|Gamma(n)| = " + std::to_string(g));
      if (cmd > h) run.fail(z, at, 0, "|CovPalCmd(n)| = " + std::to_string(cmd));
      if (left > 2 * h) run.fail(z, at, 0, "edge-left runs = " + std::to_string(left));
      if (edge > 4 * h) run.fail(z, at, 0, "edge runs = " + std::to_string(edge));
    }
  }
  return run.done();
}

inline SuiteResult suite_base_positions(const SuiteContext& ctx) {
  SuiteRun run("base_positions");
  for (Pos h = 2; h <= ctx.scale("base_max_h"); ++h) {
    const Word z = nested_palindromes(h).back();
    const auto base = build_base(z);
    for (Pos g = 1; g <= h; ++g) {
      run.count();
      if (base.count_of(g) != Pos{1} << (h - g)) run.fail(z, "g=" + std::to_string(g), 0, "base position count is not 2^(h-g)");
    }
    const PosSet s = base.tilde();
    const PalIndex idx(z);
    for (Pos a = 1; a <= z.size(); ++a)
      for (Pos b = a; b <= z.size(); ++b)
        for (Pos xi : idx.periods_of(a, b)) {
          run.count();
          if (!uc_witness(base, s, a, b, xi))
            run.fail(z, "mu1=" + std::to_string(a) + " mu2=" + std::to_string(b) + " xi=" + std::to_string(xi), 0,
                     "no uniform cover witness");
        }
  }
  return run.done();
}

inline SuiteResult suite_nps_chain(const SuiteContext& ctx) {
  SuiteRun run("nps_chain");
  std::vector<Word> words;
  for (Pos h = 2; h <= std::min<Pos>(4, ctx.scale("base_max_h")); ++h) words.push_back(nested_palindromes(h).back());
  for (const Word& z : ordinary_factors(ctx, run))
    if (z.size() <= ctx.scale("nps_max_word")) words.push_back(z);
  for (const Word& z : words) {
    const PalIndex idx(z);
    const Pos h = static_cast<Pos>(npp(z).size());
    NpsBuilder nb(idx, h);
    for (const auto& lvl : nb.cover_chain(3 * h)) {
      run.count();
      const std::string at = "m=" + std::to_string(lvl.m);
      if (!lvl.uncovered.empty()) run.fail(z, at, 0, "uncovered positions " + show(lvl.uncovered.elements()));
      if (BigInt(lvl.cover.members.size()) > boost::multiprecision::pow(BigInt(kC3 * h), static_cast<unsigned>(lvl.m)))
        run.fail(z, at, 0, "cover larger than (c3 h)^m");
      for (const auto& c : lvl.cover.members)
        if (const auto why = validate(z, c, theta_fn(h))) run.fail(z, at, 0, *why);
    }
  }
  return run.done();
}

}  // namespace detail

using SuiteFn = std::function<SuiteResult(const SuiteContext&)>;

inline const std::map<std::string, SuiteFn>& suite_registry() {
  static const std::map<std::string, SuiteFn> suites{
      {"base_positions", detail::suite_base_positions},
      {"cardinality_bounds", detail::suite_cardinality_bounds},
      {"cover_chain", detail::suite_cover_chain},
      {"fine_wilf", detail::suite_fine_wilf},
      {"mirror_symmetry", detail::suite_mirror_symmetry},
      {"nps_chain", detail::suite_nps_chain},
      {"palindrome_periods", detail::suite_palindrome_periods},
      {"palindrome_table", detail::suite_palindrome_table},
      {"period_gluing", detail::suite_period_gluing},
      {"pl_oracle", detail::suite_pl_oracle},
      {"prefix_palindrome_period", detail::suite_prefix_palindrome_period},
  };
  return suites;
}

inline void check_config(const SuiteConfig& cfg) {
  for (const auto& name : cfg.enabled)
    if (!suite_registry().contains(name)) throw config_error("unknown suite: " + name);
  for (const auto& [name, value] : cfg.scales) {
    const auto it = scale_limits().find(name);
    if (it == scale_limits().end()) throw config_error("unknown scale: " + name);
    if (value < 1 || value > it->second.cap)
      throw config_error("scale " + name + " must lie in [1, " + std::to_string(it->second.cap) + "]");
  }
}

/// Runs the enabled suites concurrently and orders the report by suite name. An empty corpus
/// gives an empty report.
inline Report run_suites(const SuiteConfig& cfg) {
  check_config(cfg);
  Report report;
  if (cfg.corpus.empty()) return report;
  std::vector<Word> words;
  for (const auto& e : cfg.corpus) words.push_back(e.resolve());
  const SuiteContext ctx(cfg, std::move(words));
  std::vector<std::future<SuiteResult>> jobs;
  for (const auto& [name, fn] : suite_registry())
    if (cfg.enabled.empty() || cfg.enabled.contains(name)) jobs.push_back(std::async(std::launch::async, fn, std::cref(ctx)));
  for (auto& j : jobs) report.suites.push_back(j.get());
  return report;
}

}  // namespace pallen
