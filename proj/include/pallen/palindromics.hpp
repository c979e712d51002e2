#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pallen/palindrome_table.hpp"
#include "pallen/periodicity.hpp"
#include "pallen/word.hpp"

namespace pallen {

/// (p1, p2): p1 a possibly empty palindrome, p2 a nonempty palindrome, order(p1 p2 p1) < 2.
struct PalCouple {
  Word p1;
  Word p2;

  Pos xi() const { return p1.size() + p2.size(); }
  friend bool operator==(const PalCouple&, const PalCouple&) = default;
  friend auto operator<=>(const PalCouple&, const PalCouple&) = default;
};

/// (n, p1, p2, alpha): (p1 p2)^alpha p1 is a palindromic prefix of z[n, |z|].
struct PalExtTuple {
  Pos n;
  PalCouple couple;
  Pos alpha;

  friend bool operator==(const PalExtTuple&, const PalExtTuple&) = default;
  friend auto operator<=>(const PalExtTuple&, const PalExtTuple&) = default;
};

inline Pos sigma(const PalExtTuple& t) { return t.n - 1 + t.alpha * t.couple.xi() + t.couple.p1.size(); }

/// Ascending lengths of the nonempty non-periodic palindromic prefixes of w.
inline std::vector<Pos> npp(const Word& w) {
  if (w.empty()) throw std::invalid_argument("NPP of the empty word");
  const PalindromeTable pal(w);
  const auto pi = prefix_function(w.view());
  std::vector<Pos> out;
  for (Pos len = 1; len <= w.size(); ++len) {
    if (!pal.is_pal(1, len)) continue;
    const Pos period = len - pi[static_cast<std::size_t>(len - 1)];
    if (len < 2 * period) out.push_back(len);
  }
  return out;
}

/// Every couple with p1 p2 p1 = p0, found by trying each split |p1| in [0, (|p0| - 1) / 2].
inline std::vector<PalCouple> pal_couples_of(const Word& p0) {
  if (p0.empty() || !is_palindrome(p0)) throw std::invalid_argument("pal_couples_of needs a nonempty palindrome");
  std::vector<PalCouple> out;
  if (!is_non_periodic(p0.view())) return out;
  const Pos n = p0.size();
  for (Pos k = 0; k <= (n - 1) / 2; ++k) {
    Word p1 = k == 0 ? Word() : p0.slice(1, k);
    Word p2 = p0.slice(k + 1, n - k);
    if (is_palindrome(p1) && is_palindrome(p2)) out.push_back({std::move(p1), std::move(p2)});
  }
  return out;
}

struct TauResult {
  Pos tau;
  bool ordinary;
};

namespace detail {

// |NPP(w[i, |w|])| for every start i, and the NPP lengths themselves when requested.
inline std::vector<std::vector<Pos>> npp_per_start(const Word& w, const PalindromeTable& pal) {
  std::vector<std::vector<Pos>> out(static_cast<std::size_t>(w.size()));
  for (Pos i = 1; i <= w.size(); ++i) {
    const auto pi = prefix_function(w.view().substr(static_cast<std::size_t>(i - 1)));
    auto& lens = out[static_cast<std::size_t>(i - 1)];
    for (Pos len = 1; i + len - 1 <= w.size(); ++len) {
      if (!pal.is_pal(i, i + len - 1)) continue;
      if (len < 2 * (len - pi[static_cast<std::size_t>(len - 1)])) lens.push_back(len);
    }
  }
  return out;
}

}  // namespace detail

/// tau = max |NPP(u)| over factors u; ordinary iff |NPP(w)| reaches it.
inline TauResult tau_and_ordinary(const Word& w) {
  if (w.empty()) throw std::invalid_argument("tau of the empty word");
  const PalindromeTable pal(w);
  const auto per_start = detail::npp_per_start(w, pal);
  Pos tau = 0;
  for (const auto& lens : per_start) tau = std::max<Pos>(tau, static_cast<Pos>(lens.size()));
  return {tau, static_cast<Pos>(per_start.front().size()) == tau};
}

/// Searches w for an ordinary non-periodic palindromic factor starting with the pad and having >= h0 NPPs.
inline std::optional<Interval> find_ordinary(const Word& w, Pos h0, Symbol pad = kDefaultPad) {
  if (w.empty() || h0 < 1) return std::nullopt;
  const PalindromeTable pal(w);
  const auto per_start = detail::npp_per_start(w, pal);

  // A prefix v of some pad-initial suffix with exactly h0 NPPs; leftmost start wins.
  std::optional<Interval> v;
  for (Pos s = 1; s <= w.size() && !v; ++s) {
    const auto& lens = per_start[static_cast<std::size_t>(s - 1)];
    if (w[s] == pad && static_cast<Pos>(lens.size()) >= h0) v = Interval(s, s + lens[static_cast<std::size_t>(h0 - 1)] - 1);
  }
  if (!v) return std::nullopt;

  // Inside v, the tau-maximizing starts; the longest NPP of such a factor is the tau-th NPP of that start.
  const Word vw = w.slice(v->lo, v->hi);
  const PalindromeTable vpal(vw);
  const auto v_starts = detail::npp_per_start(vw, vpal);
  Pos tau = 0;
  for (const auto& lens : v_starts) tau = std::max<Pos>(tau, static_cast<Pos>(lens.size()));

  std::optional<Interval> best_pad, best_any;
  auto better = [](const std::optional<Interval>& cur, const Interval& cand) {
    return !cur || cand.length() < cur->length() || (cand.length() == cur->length() && cand.lo < cur->lo);
  };
  for (Pos i = 1; i <= vw.size(); ++i) {
    const auto& lens = v_starts[static_cast<std::size_t>(i - 1)];
    if (static_cast<Pos>(lens.size()) != tau) continue;
    Interval cand(i, i + lens.back() - 1);
    if (vw[i] == pad) {
      if (better(best_pad, cand)) best_pad = cand;
    } else if (better(best_any, cand)) {
      best_any = cand;
    }
  }
  // v itself attains tau when it is ordinary; otherwise the shortest, leftmost candidate
  const Pos v_count = static_cast<Pos>(v_starts.front().size());
  std::optional<Interval> chosen = v_count == tau ? std::optional(Interval(1, vw.size())) : best_pad;
  if (!chosen && best_any && best_any->lo > 1 && best_any->hi < vw.size() && vw[best_any->lo - 1] == pad &&
      vw[best_any->hi + 1] == pad) {
    chosen = Interval(best_any->lo - 1, best_any->hi + 1);  // pad-adjust to the enclosing pad letters
  }
  if (!chosen) return std::nullopt;

  Interval result(v->lo + chosen->lo - 1, v->lo + chosen->hi - 1);
  const Word zw = w.slice(result.lo, result.hi);
  const auto zn = npp(zw);
  if (!is_palindrome(zw) || !is_non_periodic(zw.view()) || zw[1] != pad || static_cast<Pos>(zn.size()) < h0 ||
      !tau_and_ordinary(zw).ordinary)
    return std::nullopt;
  return result;
}

/// Couple of the palindrome at a known start, by lengths; materialized on demand.
struct CoupleShape {
  Pos p1_len;
  Pos p2_len;
  Pos xi() const { return p1_len + p2_len; }
  friend bool operator==(const CoupleShape&, const CoupleShape&) = default;
  friend auto operator<=>(const CoupleShape&, const CoupleShape&) = default;
};

/// Palindromic structure of one ambient word z: couples, firm prefixes, Gamma, PalExt, pToRun.
/// Per-start border arrays and couple lookups are cached; the cache is guarded for concurrent reads.
class PalIndex {
 public:
  explicit PalIndex(Word z) : z_(std::move(z)), pal_(z_), borders_(static_cast<std::size_t>(z_.size())) {
    if (z_.empty()) throw std::invalid_argument("PalIndex needs a nonempty word");
  }

  const Word& word() const { return z_; }
  const PalindromeTable& pal() const { return pal_; }
  Pos size() const { return z_.size(); }
  bool is_pal(Pos i, Pos j) const { return pal_.is_pal(i, j); }

  /// Minimal period of z[a, b].
  Pos mper_of(Pos a, Pos b) const {
    check_span(a, b);
    const auto& pi = borders_from(a);
    return (b - a + 1) - pi[static_cast<std::size_t>(b - a)];
  }
  bool non_periodic(Pos a, Pos b) const { return (b - a + 1) < 2 * mper_of(a, b); }

  /// Periods xi <= |z[a, b]| of z[a, b], ascending.
  std::vector<Pos> periods_of(Pos a, Pos b) const {
    check_span(a, b);
    const auto& pi = borders_from(a);
    const Pos len = b - a + 1;
    std::vector<Pos> out;
    for (Pos br = pi[static_cast<std::size_t>(len - 1)];; br = pi[static_cast<std::size_t>(br - 1)]) {
      out.push_back(len - br);
      if (br == 0) break;
    }
    return out;
  }

  Pos per_prolong(Pos n1, Pos xi) const { return pallen::per_prolong(z_, n1, xi); }

  /// NPP lengths of z[n, |z|].
  std::vector<Pos> npp_at(Pos n) const {
    check_pos(n);
    const auto& pi = borders_from(n);
    std::vector<Pos> out;
    for (Pos len = 1; n + len - 1 <= size(); ++len)
      if (pal_.is_pal(n, n + len - 1) && len < 2 * (len - pi[static_cast<std::size_t>(len - 1)])) out.push_back(len);
    return out;
  }

  /// Ends of all palindromic prefixes of z[n, |z|].
  std::vector<Pos> pal_prefix_ends(Pos n) const {
    check_pos(n);
    std::vector<Pos> out;
    for (Pos e = n; e <= size(); ++e)
      if (pal_.is_pal(n, e)) out.push_back(e);
    return out;
  }

  /// Couples of z[n1, n2] (a palindrome) by split, each with order(p0) < 2.
  std::vector<CoupleShape> couples_of_span(Pos n1, Pos n2) const {
    check_span(n1, n2);
    std::vector<CoupleShape> out;
    if (!pal_.is_pal(n1, n2) || !non_periodic(n1, n2)) return out;
    const Pos len = n2 - n1 + 1;
    for (Pos k = 0; k <= (len - 1) / 2; ++k) {
      if (k > 0 && !pal_.is_pal(n1, n1 + k - 1)) continue;
      if (pal_.is_pal(n1 + k, n2 - k)) out.push_back({k, len - 2 * k});
    }
    return out;
  }

  /// z[n, n + len - 1] is a firm palindromic prefix of z[n, |z|].
  bool is_firm(Pos n, Pos len) const {
    const Pos n2 = n + len - 1;
    if (n2 > size() || !pal_.is_pal(n, n2) || !non_periodic(n, n2)) return false;
    for (const auto& c : couples_of_span(n, n2))
      if (per_prolong(n, c.xi()) >= n2 + c.xi()) return false;  // (p1 p2)^2 p1 fits as a prefix
    return true;
  }

  std::vector<Pos> firm_pal_prefixes(Pos n) const {
    std::vector<Pos> out;
    for (Pos len : npp_at(n))
      if (is_firm(n, len)) out.push_back(len);
    return out;
  }

  /// The unique couple of the palindrome z[n1, n2] per the firm / square-extension cases, or none when
  /// no couple has (p1 p2)^alpha p1 = z[n1, n2] (a periodic palindrome whose p1 p2 p1 is itself periodic).
  std::optional<CoupleShape> try_to_pal_couple_shape(Pos n1, Pos n2) const {
    check_span(n1, n2);
    if (!pal_.is_pal(n1, n2)) throw std::invalid_argument("to_pal_couple needs a palindromic span");
    {
      std::lock_guard lock(mu_);
      if (auto it = couple_cache_.find({n1, n2}); it != couple_cache_.end()) return it->second;
    }
    const Pos len = n2 - n1 + 1;
    std::optional<CoupleShape> result = CoupleShape{0, len};
    if (!is_firm(n1, len)) {
      std::vector<CoupleShape> found;
      for (Pos xi : periods_of(n1, n2)) {
        const Pos k = len % xi;
        if (k > 0 && !pal_.is_pal(n1, n1 + k - 1)) continue;
        if (!pal_.is_pal(n1 + k, n1 + xi - 1)) continue;
        if (!non_periodic(n1, n1 + xi + k - 1)) continue;
        if (n1 + 2 * xi + k - 1 > size() || per_prolong(n1, xi) < n1 + 2 * xi + k - 1) continue;
        found.push_back({k, xi - k});
      }
      if (found.size() > 1)
        throw consistency_error("to_pal_couple: " + std::to_string(found.size()) + " couples for [" +
                                std::to_string(n1) + ", " + std::to_string(n2) + "]");
      result = found.empty() ? std::nullopt : std::optional(found.front());
    }
    std::lock_guard lock(mu_);
    couple_cache_.emplace(std::pair{n1, n2}, result);
    return result;
  }

  CoupleShape to_pal_couple_shape(Pos n1, Pos n2) const {
    if (auto c = try_to_pal_couple_shape(n1, n2)) return *c;
    throw consistency_error("to_pal_couple: no couple for [" + std::to_string(n1) + ", " + std::to_string(n2) + "]");
  }

  PalCouple materialize(Pos start, CoupleShape c) const {
    Word p1 = c.p1_len == 0 ? Word() : z_.slice(start, start + c.p1_len - 1);
    Word p2 = z_.slice(start + c.p1_len, start + c.xi() - 1);
    return {std::move(p1), std::move(p2)};
  }

  PalCouple to_pal_couple(Pos n1, Pos n2) const { return materialize(n1, to_pal_couple_shape(n1, n2)); }

  /// Couples anchored at n, one per non-periodic palindromic prefix.
  std::set<PalCouple> gamma(Pos n) const {
    std::set<PalCouple> out;
    for (Pos len : npp_at(n)) out.insert(to_pal_couple(n, n + len - 1));
    return out;
  }

  /// One tuple per palindromic prefix of z[n, |z|] that has a couple, using that couple.
  std::vector<PalExtTuple> pal_ext(Pos n) const {
    std::vector<PalExtTuple> out;
    for (Pos e : pal_prefix_ends(n)) {
      const auto c = try_to_pal_couple_shape(n, e);
      if (!c) continue;
      const Pos alpha = ((e - n + 1) - c->p1_len) / c->xi();
      out.push_back({n, materialize(n, *c), alpha});
    }
    return out;
  }

  /// sigma(PalExt(n)) without materializing the couples.
  std::vector<Pos> pal_ext_ends(Pos n) const {
    std::vector<Pos> out;
    for (Pos e : pal_prefix_ends(n))
      if (try_to_pal_couple_shape(n, e)) out.push_back(e);
    return out;
  }

  /// The run whose canonical palindromes include z[n1, n2].
  Run p_to_run(Pos n1, Pos n2) const {
    const auto c = to_pal_couple_shape(n1, n2);
    const Pos xi = c.xi();
    Pos nu1 = n1;
    while (nu1 > 1 && z_[nu1 - 1] == z_[nu1 - 1 + xi]) --nu1;
    const Run r{nu1, per_prolong(nu1, xi), xi};
    if (r.nu2 < n2 || !is_run(z_, r))
      throw consistency_error("p_to_run: maximal stretch around [" + std::to_string(n1) + ", " + std::to_string(n2) +
                              "] is not a run");
    return r;
  }

 private:
  void check_pos(Pos n) const {
    if (n < 1 || n > size()) throw std::out_of_range("position out of range");
  }
  void check_span(Pos a, Pos b) const {
    if (a < 1 || b < a || b > size()) throw std::out_of_range("span out of range");
  }

  const std::vector<Pos>& borders_from(Pos a) const {
    std::lock_guard lock(mu_);
    auto& slot = borders_[static_cast<std::size_t>(a - 1)];
    if (!slot) slot = std::make_unique<std::vector<Pos>>(prefix_function(z_.view().substr(static_cast<std::size_t>(a - 1))));
    return *slot;
  }

  Word z_;
  PalindromeTable pal_;
  mutable std::mutex mu_;
  mutable std::vector<std::unique_ptr<std::vector<Pos>>> borders_;
  mutable std::map<std::pair<Pos, Pos>, std::optional<CoupleShape>> couple_cache_;
};

inline std::vector<Pos> firm_pal_prefixes(const Word& z, Pos n) { return PalIndex(z).firm_pal_prefixes(n); }
inline PalCouple to_pal_couple(const Word& z, Pos n1, Pos n2) { return PalIndex(z).to_pal_couple(n1, n2); }
inline std::set<PalCouple> gamma(const Word& z, Pos n) { return PalIndex(z).gamma(n); }
inline std::vector<PalExtTuple> pal_ext(const Word& z, Pos n) { return PalIndex(z).pal_ext(n); }
inline Run p_to_run(const Word& z, Pos n1, Pos n2) { return PalIndex(z).p_to_run(n1, n2); }

}  // namespace pallen
