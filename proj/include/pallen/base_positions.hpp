#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pallen/nps.hpp"
#include "pallen/palindromics.hpp"
#include "pallen/periodicity.hpp"
#include "pallen/pl_engine.hpp"
#include "pallen/word.hpp"

namespace pallen {

/// (g, e): e is the start of a base occurrence of z_g.
struct BasePos {
  Pos g;
  Pos e;

  friend bool operator==(const BasePos&, const BasePos&) = default;
  friend auto operator<=>(const BasePos&, const BasePos&) = default;
};

/// z_1 ⊏ ... ⊏ z_h with z_{i+1} = z_i ẑ_i z_i.
struct NppChain {
  std::vector<Word> z;    // z[0] is z_1
  std::vector<Word> hat;  // hat[0] is ẑ_1

  Pos h() const { return static_cast<Pos>(z.size()); }
  Pos len(Pos g) const { return z.at(static_cast<std::size_t>(g - 1)).size(); }
};

inline NppChain npp_chain(const Word& z) {
  const auto lens = npp(z);
  if (lens.empty() || lens.back() != z.size()) throw std::invalid_argument("npp_chain: z must be a non-periodic palindrome");
  NppChain c;
  for (Pos l : lens) c.z.push_back(z.slice(1, l));
  for (std::size_t i = 0; i + 1 < c.z.size(); ++i) {
    const Word& a = c.z[i];
    const Word& b = c.z[i + 1];
    if (2 * a.size() >= b.size() || b.slice(b.size() - a.size() + 1, b.size()) != a)
      throw consistency_error("npp_chain: z_{i+1} is not z_i hat z_i");
    Word mid = b.slice(a.size() + 1, b.size() - a.size());
    if (!is_palindrome(mid)) throw consistency_error("npp_chain: middle word is not a palindrome");
    c.hat.push_back(std::move(mid));
  }
  return c;
}

struct BaseIndex {
  Word z;
  NppChain chain;
  std::set<BasePos> bb;

  Pos h() const { return chain.h(); }
  Pos len(Pos g) const { return chain.len(g); }

  /// B̃, the start positions of every base position.
  PosSet tilde() const {
    std::vector<Pos> v;
    for (const auto& b : bb) v.push_back(b.e);
    return PosSet(std::move(v));
  }

  /// BB(n1, n2): base occurrences lying inside [n1, n2].
  std::vector<BasePos> within(Pos n1, Pos n2) const {
    std::vector<BasePos> out;
    for (const auto& b : bb)
      if (n1 <= b.e && b.e + len(b.g) - 1 <= n2) out.push_back(b);
    return out;
  }

  Pos count_of(Pos g) const {
    return static_cast<Pos>(std::count_if(bb.begin(), bb.end(), [g](const BasePos& b) { return b.g == g; }));
  }
};

/// BB_h by the recursion BB_j = shift(BB_{j-1}) ∪ BB_{j-1} ∪ {(j, 1)}.
inline BaseIndex build_base(const Word& z, Symbol pad = kDefaultPad) {
  BaseIndex out{z, npp_chain(z), {}};
  const Pos h = out.h();
  if (h < 2) throw std::invalid_argument("build_base: NPP chain shorter than 2");
  out.bb.insert({1, 1});
  for (Pos j = 2; j <= h; ++j) {
    const Pos shift = out.len(j - 1) + out.chain.hat[static_cast<std::size_t>(j - 2)].size();
    std::vector<BasePos> moved;
    for (const auto& b : out.bb) moved.push_back({b.g, b.e + shift});
    out.bb.insert(moved.begin(), moved.end());
    out.bb.insert({j, 1});
  }
  for (const auto& b : out.bb) {
    const Pos end = b.e + out.len(b.g) - 1;
    if (end > z.size() || z.slice(b.e, end) != out.chain.z[static_cast<std::size_t>(b.g - 1)] || z[b.e] != pad)
      throw consistency_error("build_base: base position is not an occurrence starting with the pad");
  }
  return out;
}

struct HeightWidth {
  Pos height = 0;
  Pos width = 0;

  friend bool operator==(const HeightWidth&, const HeightWidth&) = default;
};

/// The max of e1 + |z_g1| - e2 over all pairs reduces to (last end + 1) - first start.
inline HeightWidth height_width(const BaseIndex& base, Pos n1, Pos n2) {
  if (n1 > n2) throw std::invalid_argument("height_width needs n1 <= n2");
  HeightWidth hw;
  Pos first = 0, past = 0;
  for (const auto& b : base.within(n1, n2)) {
    hw.height = std::max(hw.height, b.g);
    first = first == 0 ? b.e : std::min(first, b.e);
    past = std::max(past, b.e + base.len(b.g));
  }
  if (hw.height > 0) hw.width = past - first;
  return hw;
}

/// At most four subintervals of [n1, n2] holding the same base positions, each of width <= |z_β|.
inline std::vector<Interval> y_decomposition(const BaseIndex& base, Pos n1, Pos n2) {
  const auto hw = height_width(base, n1, n2);
  if (hw.height == 0) throw std::invalid_argument("y_decomposition: no base position inside the interval");
  const Pos beta = hw.height, lb = base.len(beta);
  std::vector<Pos> tops;
  for (const auto& b : base.within(n1, n2))
    if (b.g == beta) tops.push_back(b.e);
  if (tops.size() > 2) throw consistency_error("y_decomposition: more than two top occurrences");
  std::vector<Interval> y;
  const Pos n3 = tops.front() - 1, n4 = tops.back() + lb;
  if (n1 <= n3) y.emplace_back(n1, n3);
  for (Pos e : tops) y.emplace_back(e, e + lb - 1);
  if (n4 <= n2) y.emplace_back(n4, n2);

  std::set<BasePos> joined;
  bool has_top = false;
  for (const auto& iv : y) {
    if (height_width(base, iv.lo, iv.hi).width > lb) throw consistency_error("y_decomposition: width above |z_beta|");
    has_top = has_top || base.z.slice(iv.lo, iv.hi) == base.chain.z[static_cast<std::size_t>(beta - 1)];
    for (const auto& b : base.within(iv.lo, iv.hi)) joined.insert(b);
  }
  const auto all = base.within(n1, n2);
  if (!has_top || joined != std::set<BasePos>(all.begin(), all.end()))
    throw consistency_error("y_decomposition: intervals lose base positions");
  return y;
}

/// E with |E| <= c2 and S ∩ N(mu1, mu2) covered by the xi-windows at E, E = {δ1, δ1 + xi} over the
/// Y-intervals (δ1, δ2). Windows are read inside [mu1, mu2]; unclipped, a window overshoots mu2.
inline std::optional<PosSet> uc_witness(const BaseIndex& base, const PosSet& s, Pos mu1, Pos mu2, Pos xi) {
  if (mu1 < 1 || mu1 > mu2 || mu2 > base.z.size() || xi < 1) throw std::invalid_argument("uc_witness: bad interval");
  if (!detail::word_has_period(base.z, mu1, mu2, xi)) throw std::invalid_argument("uc_witness: xi is not a period");
  const PosSet want = s.restricted(mu1, mu2);
  if (want.empty()) return PosSet{};
  if (height_width(base, mu1, mu2).height == 0) return std::nullopt;
  PosSet e;
  for (const auto& iv : y_decomposition(base, mu1, mu2)) {
    e.insert(iv.lo);
    if (iv.lo + xi <= mu2) e.insert(iv.lo + xi);
  }
  PosSet got;
  for (Pos d : e) got = got.united(want.restricted(d, d + xi - 1));
  if (static_cast<Pos>(e.size()) > kC2 || got != want) return std::nullopt;
  return e;
}

struct PsiReport {
  Pos m = 0;
  Pos clusters_checked = 0;
  Pos max_intersection = 0;
  BigInt bound;
  bool exact = false;
  bool ok = true;
};

/// max |D ∩ B̃| over degree-m clusters, against λ(h, m). Exact for m = 0, and for m = 1 when every
/// window cut fits under θ(1) (|z| <= 48 < θ(1)), so that each periodic interval is itself a member.
/// Otherwise the clusters of cover_chain at level m are checked.
inline PsiReport psi_check(const Word& z, Pos m, NpsBudget budget = {}) {
  if (m < 0) throw std::invalid_argument("psi_check needs m >= 0");
  const auto base = build_base(z);
  const PosSet s = base.tilde();
  PsiReport r{m, 0, 0, lambda(base.h(), m), false, true};
  const auto count = [&](const PosSet& d) {
    ++r.clusters_checked;
    r.max_intersection = std::max<Pos>(r.max_intersection, static_cast<Pos>(d.intersected(s).size()));
  };
  if (m == 0) {
    for (Pos n = 1; n <= z.size(); ++n) count({n});
    r.exact = true;
  } else if (m == 1 && z.size() <= 48 && z.size() <= budget.max_word) {
    NpsChecker chk(z, base.h(), budget);
    for (Pos a = 1; a <= z.size(); ++a)
      for (Pos b = a; b <= z.size(); ++b) {
        const PosSet d = PosSet::range(a, b);
        for (Pos xi : periods(z.slice(a, b))) {
          if (!chk.member(1, d, xi)) throw consistency_error("psi_check: periodic interval is not a degree-1 cluster");
          count(d);
        }
      }
    r.exact = true;
  } else {
    const PalIndex idx(z);
    NpsBuilder nb(idx, base.h());
    const auto chain = nb.cover_chain(m);
    if (static_cast<Pos>(chain.size()) > m)
      for (const auto& c : chain.back().cover.members) count(c.d);
  }
  r.ok = BigInt(r.max_intersection) <= r.bound;
  return r;
}

/// Counting inequality: 2^(h-1) > k (c3 h)^m λ(h, m) for every m in [1, k].
inline bool count_inequality_holds(Pos h, Pos k) {
  if (h < 1 || k < 1) throw std::invalid_argument("count_inequality_holds needs h, k >= 1");
  const BigInt lhs = boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(h - 1));
  for (Pos m = 1; m <= k; ++m)
    if (!(lhs > BigInt(k) * boost::multiprecision::pow(BigInt(kC3 * h), static_cast<unsigned>(m)) * lambda(h, m)))
      return false;
  return true;
}

/// Least h0 such that the counting inequality holds for every h >= h0. Past h = 2(k + k^2) the ratio of the two
/// sides grows with h, so one success there settles the tail.
inline Pos h0_scan(Pos k) {
  if (k < 1) throw std::invalid_argument("h0_scan needs k >= 1");
  const Pos tail = 2 * (k + k * k);
  Pos last_fail = 0;
  for (Pos h = 1;; ++h) {
    if (!count_inequality_holds(h, k))
      last_fail = h;
    else if (h >= tail)
      return last_fail + 1;
  }
}

/// Same threshold by a downward walk from a doubling bound, with λ as the product
/// of c2 (2 c1 c3 h)^(2i-1) and powers of two by shifts.
inline Pos h0_rescan(Pos k) {
  if (k < 1) throw std::invalid_argument("h0_rescan needs k >= 1");
  const auto holds = [k](Pos h) {
    const BigInt lhs = BigInt(1) << static_cast<unsigned>(h - 1);
    BigInt lam = 1, poly = 1;
    for (Pos m = 1; m <= k; ++m) {
      BigInt step = kC2;
      for (Pos i = 0; i < 2 * m - 1; ++i) step *= 2 * kC1 * kC3 * h;
      lam *= step;
      poly *= kC3 * h;
      if (lhs <= k * poly * lam) return false;
    }
    return true;
  };
  Pos top = 1;
  while (top < 2 * (k + k * k) || !holds(top)) top *= 2;
  Pos h = top;
  while (h > 1 && holds(h - 1)) --h;
  return h;
}

struct HarnessReport {
  Pos h = 0;
  Pos k = 0;
  Pos base_count = 0;
  std::vector<std::pair<Pos, PosSet>> cover_intersections;  // (m, B̃ ∩ Cover(m))
  Pos observed = 0;
  std::vector<Pos> cover_sizes;  // |cover_chain level m|, m = 0..k
  bool covers_complete = true;
  BigInt lambda_hk;
  BigInt theta_hk;
  BigInt bound;  // k (c3 h)^k λ(h, k)
  Pos h0 = 0;
  bool bound_exceeds_observed = false;
  bool count_inequality = false;
};

inline HarnessReport counting_harness(const Word& z, Pos k) {
  if (k < 1) throw std::invalid_argument("counting_harness needs k >= 1");
  const auto base = build_base(z);
  const PosSet s = base.tilde();
  HarnessReport r;
  r.h = base.h();
  r.k = k;
  r.base_count = static_cast<Pos>(s.size());
  const auto levels = cover_levels(z);
  for (Pos m = 1; m <= k; ++m) {
    PosSet hit = m < static_cast<Pos>(levels.size()) ? levels[static_cast<std::size_t>(m)].intersected(s) : PosSet{};
    r.observed += static_cast<Pos>(hit.size());
    r.cover_intersections.emplace_back(m, std::move(hit));
  }
  const PalIndex idx(z);
  NpsBuilder nb(idx, r.h);
  for (const auto& lvl : nb.cover_chain(k)) {
    r.cover_sizes.push_back(static_cast<Pos>(lvl.cover.members.size()));
    r.covers_complete = r.covers_complete && lvl.uncovered.empty();
  }
  r.lambda_hk = lambda(r.h, k);
  r.theta_hk = theta(r.h, k);
  r.bound = BigInt(k) * boost::multiprecision::pow(BigInt(kC3 * r.h), static_cast<unsigned>(k)) * r.lambda_hk;
  r.h0 = h0_scan(k);
  r.bound_exceeds_observed = r.bound >= BigInt(r.observed);
  r.count_inequality = count_inequality_holds(r.h, k);
  return r;
}

}  // namespace pallen
