#pragma once

#include <algorithm>
#include <bit>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "pallen/covering_palindromes.hpp"
#include "pallen/palindromics.hpp"
#include "pallen/periodicity.hpp"
#include "pallen/pl_engine.hpp"
#include "pallen/word.hpp"

namespace pallen {

using BigInt = boost::multiprecision::cpp_int;

/// θ(m) = (2 c1 c3 h)^m.
inline BigInt theta(Pos h, Pos m) {
  if (h < 1 || m < 0) throw std::invalid_argument("theta needs h >= 1 and m >= 0");
  return boost::multiprecision::pow(BigInt(2 * kC1 * kC3 * h), static_cast<unsigned>(m));
}

/// λ(h, m) = c2^m (2 c1 c3 h)^(m^2).
inline BigInt lambda(Pos h, Pos m) {
  if (h < 1 || m < 0) throw std::invalid_argument("lambda needs h >= 1 and m >= 0");
  return boost::multiprecision::pow(BigInt(kC2), static_cast<unsigned>(m)) *
         boost::multiprecision::pow(BigInt(2 * kC1 * kC3 * h), static_cast<unsigned>(m * m));
}

inline Pos saturate(const BigInt& v) {
  constexpr Pos top = std::numeric_limits<Pos>::max();
  return v > BigInt(top) ? top : static_cast<Pos>(v);
}

using ThetaFn = std::function<Pos(Pos)>;

inline ThetaFn theta_fn(Pos h) {
  return [h](Pos m) { return saturate(theta(h, m)); };
}

struct Nps {
  PosSet d;
  Pos xi = 1;

  friend bool operator==(const Nps&, const Nps&) = default;
  friend auto operator<=>(const Nps&, const Nps&) = default;
};

namespace detail {

inline Pos floor_div(Pos a, Pos b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0)) ? 1 : 0); }
inline Pos ceil_div(Pos a, Pos b) { return -floor_div(-a, b); }

inline bool word_has_period(const Word& z, Pos a, Pos b, Pos xi) {
  return has_period(z.view().substr(static_cast<std::size_t>(a - 1), static_cast<std::size_t>(b - a + 1)), xi);
}

}  // namespace detail

/// (D, xi) with D nonempty, D = Spread(D, xi) ∩ Close(D), and xi a period of z[min D, max D].
inline bool is_tilde_nestper(const Word& z, const PosSet& d, Pos xi) {
  if (d.empty() || xi < 1 || d.max() > z.size()) return false;
  if (!detail::word_has_period(z, d.min(), d.max(), xi)) return false;
  return spread_in(d, xi, *close(d)) == d;
}

/// Distinct maximal window cuts D ∩ [a, a + xi - 1]; {∅} for empty D.
/// Windows starting at an element of D dominate all others, and a window can only be contained in
/// the previous kept one.
inline std::vector<PosSet> cuts(const PosSet& d, Pos xi) {
  if (xi < 1) throw std::invalid_argument("cut width must be >= 1");
  if (d.empty()) return {PosSet{}};
  std::vector<PosSet> out;
  for (Pos a : d) {
    PosSet w = d.restricted(a, a + xi - 1);
    if (!out.empty() && w.is_subset_of(out.back())) continue;
    out.push_back(std::move(w));
  }
  return out;
}

/// Subsets D̄ ⊆ D with diam(D̄) <= xi and Spread(D̄, xi) ∩ Close(D) = D. Each one hits every residue
/// of D exactly once, so it is the window cut starting at its minimum.
inline std::set<PosSet> bottoms(const PosSet& d, Pos xi) {
  std::set<PosSet> out;
  if (d.empty()) return out;
  for (Pos a : d) {
    PosSet w = d.restricted(a, a + xi - 1);
    if (spread_in(w, xi, *close(d)) == d) out.insert(std::move(w));
  }
  return out;
}

struct Separation {
  Pos mu3 = 0;
  PosSet d1;  // far from mu3
  PosSet d2;  // within c1 xi of mu3
};

/// D2 = D ∩ [mu3 - c1 xi + 1, mu3] with mu3 = perProlong(min D, xi); D1 = D \ D2.
inline Separation separate(const Word& z, const PosSet& d, Pos xi) {
  if (d.empty()) throw std::invalid_argument("separate needs a nonempty set");
  Separation s;
  s.mu3 = per_prolong(z, d.min(), xi);
  s.d2 = d.restricted(s.mu3 - kC1 * xi + 1, s.mu3);
  s.d1 = d.minus(s.d2);
  return s;
}

struct BottomsAndSeparation {
  std::set<PosSet> bottoms;
  Separation separation;
};

inline BottomsAndSeparation bottom_and_separate(const Word& z, const Nps& nps) {
  if (!is_tilde_nestper(z, nps.d, nps.xi)) throw std::invalid_argument("bottom_and_separate needs a valid NPS");
  return {bottoms(nps.d, nps.xi), separate(z, nps.d, nps.xi)};
}

/// A cluster of a fixed degree with a cover of its first xi-window by clusters one degree lower.
/// Every other cut is covered by pieces of that base shifted by multiples of xi, which is how the
/// cut condition is witnessed without an exhaustive search.
struct Cluster {
  PosSet d;
  Pos xi = 1;
  Pos degree = 0;
  std::vector<Cluster> base;

  Nps nps() const { return {d, xi}; }
  PosSet first_window() const { return d.restricted(d.min(), d.min() + xi - 1); }
};

struct NpsCover {
  Pos degree = 0;
  std::vector<Cluster> members;

  PosSet united() const {
    PosSet out;
    for (const auto& c : members) out = out.united(c.d);
    return out;
  }
};

inline Cluster singleton_cluster(Pos n) { return {PosSet{n}, 1, 0, {}}; }

inline Cluster translate(const Cluster& c, Pos k) {
  Cluster out{add(c.d, k), c.xi, c.degree, {}};
  out.base.reserve(c.base.size());
  for (const auto& b : c.base) out.base.push_back(translate(b, k));
  return out;
}

/// Drops clusters whose positions are contained in another kept cluster.
inline void drop_dominated(std::vector<Cluster>& cs) {
  std::stable_sort(cs.begin(), cs.end(), [](const Cluster& a, const Cluster& b) {
    if (a.d.size() != b.d.size()) return a.d.size() > b.d.size();
    return a.d < b.d;
  });
  std::vector<Cluster> kept;
  for (auto& c : cs) {
    bool dominated = false;
    for (const auto& k : kept) dominated = dominated || c.d.is_subset_of(k.d);
    if (!dominated) kept.push_back(std::move(c));
  }
  cs = std::move(kept);
}

inline std::optional<Cluster> restrict_to(const Cluster& c, Pos lo, Pos hi);

/// Pieces of the generators, each restricted and shifted by a multiple of xi, covering `cut` inside
/// Close(cut). Valid wherever z has period xi on a stretch holding both the generators and the cut.
inline std::vector<Cluster> cover_by_translates(const std::vector<Cluster>& gens, Pos xi, const PosSet& cut) {
  std::vector<Cluster> out;
  if (cut.empty()) return out;
  const Pos lo = cut.min(), hi = cut.max();
  for (const auto& g : gens) {
    const Pos kmin = detail::ceil_div(lo - g.d.max(), xi), kmax = detail::floor_div(hi - g.d.min(), xi);
    for (Pos k = kmin; k <= kmax; ++k) {
      auto piece = restrict_to(g, lo - k * xi, hi - k * xi);
      if (!piece) continue;
      out.push_back(k == 0 ? std::move(*piece) : translate(*piece, k * xi));
    }
  }
  drop_dominated(out);
  return out;
}

/// D ∩ [lo, hi] with a base rebuilt for the new first window.
inline std::optional<Cluster> restrict_to(const Cluster& c, Pos lo, Pos hi) {
  PosSet d = c.d.restricted(lo, hi);
  if (d.empty()) return std::nullopt;
  if (d == c.d) return c;
  Cluster out{std::move(d), c.xi, c.degree, {}};
  if (c.degree > 0) out.base = cover_by_translates(c.base, c.xi, out.first_window());
  return out;
}

/// Cover of a xi-cut of the cluster by clusters one degree lower: the base shifted into the (at
/// most two) xi-windows the cut meets, each piece clipped to Close(cut).
inline std::vector<Cluster> cut_cover(const Cluster& c, const PosSet& cut) {
  if (c.degree < 1) throw std::invalid_argument("cut_cover needs a cluster of degree >= 1");
  if (!cut.is_subset_of(c.d) || diam(cut) > c.xi) throw std::invalid_argument("cut_cover: not a cut of the cluster");
  auto out = cover_by_translates(c.base, c.xi, cut);
  if (out.size() > 2 * c.base.size()) throw consistency_error("cut_cover: more than twice the base size");
  return out;
}

/// Reflection of the cluster inside [lo, hi]; the new first window is the image of the old last one.
inline Cluster mirror_cluster(const Cluster& c, Pos lo, Pos hi) {
  Cluster out{mirror_set(lo, hi, c.d), c.xi, c.degree, {}};
  if (out.d.size() != c.d.size()) throw std::out_of_range("mirror_cluster: cluster leaves [lo, hi]");
  if (c.degree > 0) {
    const PosSet last = c.d.restricted(c.d.max() - c.xi + 1, c.d.max());
    for (const auto& piece : cut_cover(c, last)) out.base.push_back(mirror_cluster(piece, lo, hi));
  }
  return out;
}

struct FoldResult {
  PosSet g;
  std::vector<Cluster> blocks;
};

/// Cuts the cluster into xi2-blocks of the window and shifts block i left by (i - 1) xi2, so every
/// block lands in the first xi2 positions of the window and D ⊆ Spread(G, xi2).
inline FoldResult fold_cover(const Word& z, const Cluster& c, Interval window, Pos xi2, Pos alpha) {
  if (xi2 < 1 || alpha < 1) throw std::invalid_argument("fold_cover needs xi2 >= 1 and alpha >= 1");
  if (c.d.empty() || c.d.min() < window.lo || c.d.max() > window.hi)
    throw std::invalid_argument("fold_cover: cluster not inside the window");
  if (window.hi > z.size() || !detail::word_has_period(z, window.lo, window.hi, xi2))
    throw std::invalid_argument("fold_cover: xi2 is not a period of the window");
  if (window.length() > alpha * xi2) throw std::invalid_argument("fold_cover: window longer than alpha xi2");
  FoldResult out;
  for (Pos i = 1; i <= alpha; ++i) {
    const Pos lo = window.lo + (i - 1) * xi2;
    auto piece = restrict_to(c, lo, lo + xi2 - 1);
    if (!piece) continue;
    out.blocks.push_back(i == 1 ? std::move(*piece) : translate(*piece, -(i - 1) * xi2));
    out.g = out.g.united(out.blocks.back().d);
  }
  if (out.g.max() > window.lo + xi2 - 1) throw consistency_error("fold_cover: G leaves the first block");
  if (!c.d.is_subset_of(spread_in(out.g, xi2, window))) throw consistency_error("fold_cover: D not in Spread(G)");
  return out;
}

/// Structural check of a cluster and, recursively, its base: the NPS clauses, the base placement,
/// and a cover of size at most theta(degree) for every maximal cut. Returns the first problem found.
inline std::optional<std::string> validate(const Word& z, const Cluster& c, const ThetaFn& theta_of) {
  const auto where = [&] { return " (min " + std::to_string(c.d.empty() ? 0 : c.d.min()) + ", xi " +
                                  std::to_string(c.xi) + ", degree " + std::to_string(c.degree) + ")"; };
  if (!is_tilde_nestper(z, c.d, c.xi)) return "not spread-closed and periodic" + where();
  if (c.degree == 0) {
    if (c.d.size() != 1 || !c.base.empty()) return "degree 0 must be a singleton" + where();
    return std::nullopt;
  }
  const PosSet c0 = c.first_window();
  PosSet reach;
  for (const auto& b : c.base) {
    if (b.degree != c.degree - 1) return "base degree mismatch" + where();
    if (b.d.min() < c0.min() || b.d.max() > c0.max()) return "base leaves Close(first window)" + where();
    if (auto err = validate(z, b, theta_of)) return err;
    reach = reach.united(b.d);
  }
  if (!c0.is_subset_of(reach)) return "base does not cover the first window" + where();
  const Pos cap = theta_of(c.degree);
  for (const auto& w : cuts(c.d, c.xi)) {
    const auto pieces = cover_by_translates(c.base, c.xi, w);
    PosSet got;
    for (const auto& p : pieces) {
      if (!is_tilde_nestper(z, p.d, p.xi)) return "cut piece not spread-closed and periodic" + where();
      got = got.united(p.d);
    }
    if (!w.is_subset_of(got)) return "cut not covered" + where();
    if (static_cast<Pos>(pieces.size()) > cap) return "cut cover exceeds theta" + where();
  }
  return std::nullopt;
}

struct NpsBudget {
  Pos max_word = 64;
  Pos max_degree = 2;
  Pos max_set = 16;
};

/// Exact membership and minimal covers by memoized exhaustive search.
///
/// Clusters covering a subset T of D can be taken as S(T, xi') = Spread(T, xi') ∩ [min T, max T] with
/// xi' <= diam(T): any cluster containing T, cut down to [min T, max T], contains S(T, xi') and its
/// cuts dominate those of S. Coverable groups are therefore closed under subsets, and omega is a
/// minimum partition of D into coverable groups. Not thread-safe; use one checker per thread.
class NpsChecker {
 public:
  NpsChecker(const Word& z, Pos h, NpsBudget budget = {}, ThetaFn theta_override = {})
      : z_(z), budget_(budget), theta_(theta_override ? std::move(theta_override) : theta_fn(h)) {
    if (z.size() > budget_.max_word)
      throw budget_exceeded("exact NPS search limited to |z| <= " + std::to_string(budget_.max_word));
    const Pos n = z.size();
    prolong_.assign(static_cast<std::size_t>(n + 1), std::vector<Pos>(static_cast<std::size_t>(n + 1), 0));
    for (Pos a = 1; a <= n; ++a)
      for (Pos xi = 1; xi <= n; ++xi) prolong_[a][xi] = per_prolong(z, a, xi);
  }

  Pos theta_at(Pos m) const { return theta_(m); }

  bool member(Pos m, const PosSet& d, Pos xi) {
    check_degree(m);
    if (!tilde(d, xi)) return false;
    if (m == 0) return d.size() == 1;
    const auto key = std::make_tuple(m, d.elements(), xi);
    if (auto it = member_memo_.find(key); it != member_memo_.end()) return it->second;
    bool ok = true;
    const Pos cap = theta_at(m);
    for (const auto& w : cuts(d, xi)) {
      if (static_cast<Pos>(w.size()) <= cap) continue;  // singletons already fit
      if (omega(m - 1, w) > cap) {
        ok = false;
        break;
      }
    }
    member_memo_.emplace(key, ok);
    return ok;
  }

  Pos omega(Pos m, const PosSet& d) {
    check_degree(m);
    if (d.empty()) return 0;
    if (m == 0) return static_cast<Pos>(d.size());
    return static_cast<Pos>(partition(m, d).size());
  }

  /// A minimal cover: groups chosen for the smallest uncovered position first, larger groups (by
  /// bitmask) preferred on ties, each with the least admissible xi.
  std::vector<Nps> min_cover(Pos m, const PosSet& d) {
    check_degree(m);
    if (d.empty()) return {};
    if (m == 0) {
      std::vector<Nps> out;
      for (Pos n : d) out.push_back({PosSet{n}, 1});
      return out;
    }
    return partition(m, d);
  }

  /// The cluster with its base taken from minimal covers, recursively.
  Cluster certify(Pos m, const PosSet& d, Pos xi) {
    if (!member(m, d, xi)) throw std::invalid_argument("certify: not a member at this degree");
    Cluster out{d, xi, m, {}};
    if (m == 0) return out;
    for (const auto& g : min_cover(m - 1, out.first_window())) out.base.push_back(certify(m - 1, g.d, g.xi));
    return out;
  }

 private:
  void check_degree(Pos m) const {
    if (m < 0) throw std::invalid_argument("degree must be >= 0");
    if (m > budget_.max_degree)
      throw budget_exceeded("exact NPS search limited to degree <= " + std::to_string(budget_.max_degree));
  }

  bool has_period_on(Pos a, Pos b, Pos xi) const { return xi >= b - a + 1 || b <= prolong_[a][xi]; }

  bool tilde(const PosSet& d, Pos xi) const {
    if (d.empty() || xi < 1 || d.max() > z_.size()) return false;
    if (!has_period_on(d.min(), d.max(), xi)) return false;
    return spread_in(d, xi, *close(d)) == d;
  }

  const std::vector<Nps>& partition(Pos m, const PosSet& d) {
    const auto key = std::make_pair(m, d.elements());
    if (auto it = omega_memo_.find(key); it != omega_memo_.end()) return it->second;
    if (static_cast<Pos>(d.size()) > budget_.max_set)
      throw budget_exceeded("exact cover search limited to |D| <= " + std::to_string(budget_.max_set));
    const auto& el = d.elements();
    const std::size_t n = el.size();
    const std::uint32_t full = (1u << n) - 1;
    std::vector<Pos> xi_of(full + 1, 0);  // 0 = not coverable
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      if (std::popcount(mask) == 1) {
        xi_of[mask] = 1;
        continue;
      }
      bool subs_ok = true;
      for (std::uint32_t rest = mask; rest && subs_ok; rest &= rest - 1) subs_ok = xi_of[mask ^ (rest & -rest)] != 0;
      if (!subs_ok) continue;
      std::vector<Pos> t;
      for (std::size_t b = 0; b < n; ++b)
        if (mask >> b & 1) t.push_back(el[b]);
      const PosSet ts(std::move(t));
      const Pos lo = ts.min(), hi = ts.max();
      for (Pos xi = 1; xi <= hi - lo + 1; ++xi) {
        if (!has_period_on(lo, hi, xi)) continue;
        if (member(m, spread_in(ts, xi, {lo, hi}), xi)) {
          xi_of[mask] = xi;
          break;
        }
      }
    }
    constexpr Pos inf = std::numeric_limits<Pos>::max() / 2;
    std::vector<Pos> best(full + 1, inf);
    std::vector<std::uint32_t> pick(full + 1, 0);
    best[0] = 0;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      const std::uint32_t low = mask & -mask, rest = mask ^ low;
      for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
        const std::uint32_t group = sub | low;
        if (xi_of[group] && best[mask ^ group] + 1 < best[mask]) {
          best[mask] = best[mask ^ group] + 1;
          pick[mask] = group;
        }
        if (sub == 0) break;
      }
    }
    std::vector<Nps> groups;
    for (std::uint32_t mask = full; mask; mask ^= pick[mask]) {
      std::vector<Pos> t;
      for (std::size_t b = 0; b < n; ++b)
        if (pick[mask] >> b & 1) t.push_back(el[b]);
      const PosSet ts(std::move(t));
      const Pos xi = xi_of[pick[mask]];
      groups.push_back({spread_in(ts, xi, *close(ts)), xi});
    }
    return omega_memo_.emplace(key, std::move(groups)).first->second;
  }

  const Word& z_;
  NpsBudget budget_;
  ThetaFn theta_;
  std::vector<std::vector<Pos>> prolong_;
  std::map<std::tuple<Pos, std::vector<Pos>, Pos>, bool> member_memo_;
  std::map<std::pair<Pos, std::vector<Pos>>, std::vector<Nps>> omega_memo_;
};

/// σ(PalExt(D)).
inline PosSet sigma_ext(const PalIndex& idx, const PosSet& d) {
  std::vector<Pos> out;
  for (Pos n : d)
    for (Pos e : idx.pal_ext_ends(n)) out.push_back(e);
  return PosSet(std::move(out));
}

struct ChainLevel {
  Pos m = 0;
  PosSet target;  // Cover(m)
  NpsCover cover;
  PosSet uncovered;
};

/// Builds covers of palindromic extensions of clusters, following the constructive proofs: inside
/// the periodic prolongation, near its end, and through the runs that cross it.
class NpsBuilder {
 public:
  NpsBuilder(const PalIndex& idx, Pos h) : idx_(idx), h_(h) {
    if (h < 1) throw std::invalid_argument("NpsBuilder needs h >= 1");
  }
  explicit NpsBuilder(const PalIndex& idx) : NpsBuilder(idx, std::max<Pos>(1, npp(idx.word()).size())) {}

  Pos h() const { return h_; }
  const PalIndex& index() const { return idx_; }

  /// Cover of σ(PalExt(D)) by clusters of degree c.degree + 1.
  NpsCover extend_cluster(const Cluster& c) {
    const auto key = std::make_tuple(c.d.elements(), c.xi, c.degree);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    NpsCover out = c.degree == 0 ? base_extension(c) : general_extension(c);
    drop_dominated(out.members);
    return memo_.emplace(key, std::move(out)).first->second;
  }

  /// A cluster (G, xi) of degree m + 1 with σ(PalExt(D)) ∩ [mu1, mu3] ⊆ G; none when that set is empty.
  std::optional<Cluster> inside_extension(const Cluster& c) {
    if (c.degree < 1) throw std::invalid_argument("inside_extension needs degree >= 1");
    const Pos m = c.degree, xi = c.xi, mu1 = c.d.min();
    const Pos mu3 = idx_.per_prolong(mu1, xi);
    const Pos hi = std::min(mu3, mu1 + kC1 * xi - 1);
    std::vector<Cluster> blocks;
    Pos widest = 0;
    for (const auto& ci : c.base) {
      const auto ext = extend_cluster(ci);
      widest = std::max(widest, static_cast<Pos>(ext.members.size()));
      for (const auto& e : ext.members) {
        auto t = restrict_to(e, mu1, hi);
        if (!t) continue;
        for (auto& b : fold_cover(idx_.word(), *t, {mu1, hi}, xi, kC1).blocks) blocks.push_back(std::move(b));
      }
    }
    drop_dominated(blocks);
    const BigInt th = theta(h_, m);
    if (BigInt(c.base.size()) > th) throw consistency_error("inside_extension: base larger than theta(m)");
    if (widest > kC3 * h_) throw consistency_error("inside_extension: extension cover larger than c3 h");
    if (BigInt(blocks.size()) > BigInt(kC1 * kC3 * h_) * th)
      throw consistency_error("inside_extension: folded cover larger than c1 c3 h theta(m)");
    if (blocks.empty()) return std::nullopt;
    PosSet g0;
    for (const auto& b : blocks) g0 = g0.united(b.d);
    Cluster out{spread_in(g0, xi, {mu1, mu3}), xi, m + 1, {}};
    out.base = cover_by_translates(blocks, xi, out.first_window());
    if (BigInt(2 * blocks.size()) > theta(h_, m + 1))
      throw consistency_error("inside_extension: 2 c1 c3 h theta(m) exceeds theta(m + 1)");
    return out;
  }

  /// At most c1 clusters covering σ(PalExt(D2)) when diam(D2) <= c1 xi: one per xi-slice, each
  /// lifted to period |z| and extended inside.
  NpsCover near_extension(const Cluster& c2) {
    if (c2.degree < 1) throw std::invalid_argument("near_extension needs degree >= 1");
    if (diam(c2.d) > kC1 * c2.xi) throw std::invalid_argument("near_extension: D2 wider than c1 xi");
    NpsCover out{c2.degree + 1, {}};
    const Pos lo = c2.d.min();
    for (Pos i = 1; i <= kC1; ++i) {
      auto part = restrict_to(c2, lo + (i - 1) * c2.xi, lo + i * c2.xi - 1);
      if (!part) continue;
      part->xi = idx_.size();  // diam <= xi, so the base still covers the whole slice
      if (auto g = inside_extension(*part)) out.members.push_back(std::move(*g));
    }
    return out;
  }

  /// The single cluster Spread(Mirror(d1, d2, D1), xi2) ∩ [mu3 + 1, nu2] of degree m + 1 holding every
  /// extension of D1 through canonical palindromes of the run.
  Cluster outside_extension(const Cluster& c1, const Run& run) {
    if (c1.degree < 1) throw std::invalid_argument("outside_extension needs degree >= 1");
    const PalSpan dd = min_run_pal(idx_, c1.d, c1.xi, run);
    const Pos mu3 = idx_.per_prolong(c1.d.min(), c1.xi);
    const auto bar = restrict_to(c1, dd.n1, c1.d.max());
    const Cluster g0 = mirror_cluster(*bar, dd.n1, dd.n2);
    if (diam(g0.d) > run.xi) throw consistency_error("outside_extension: diam(G0) exceeds xi2");
    Cluster out{spread_in(g0.d, run.xi, {mu3 + 1, run.nu2}), run.xi, c1.degree + 1, {}};
    if (out.d.empty()) throw consistency_error("outside_extension: empty spread past mu3");
    out.base = cover_by_translates({g0}, run.xi, out.first_window());
    return out;
  }

  /// Covers of Cover(m), m = 0..k, each level built by extending the clusters of the previous one and
  /// clipping to Close(Cover(m)). Stops early once Cover(m) is empty.
  std::vector<ChainLevel> cover_chain(Pos k) {
    if (k < 0) throw std::invalid_argument("cover_chain needs k >= 0");
    std::vector<ChainLevel> out;
    out.push_back({0, PosSet{1}, {0, {singleton_cluster(1)}}, {}});
    for (Pos m = 1; m <= k; ++m) {
      ChainLevel lvl{m, cover(idx_.word(), m), {m, {}}, {}};
      if (lvl.target.empty()) break;
      for (const auto& c : out.back().cover.members)
        for (const auto& e : extend_cluster(c).members) {
          auto t = restrict_to(e, lvl.target.min(), lvl.target.max());
          if (t && !t->d.intersected(lvl.target).empty()) lvl.cover.members.push_back(std::move(*t));
        }
      drop_dominated(lvl.cover.members);
      lvl.uncovered = lvl.target.minus(lvl.cover.united());
      out.push_back(std::move(lvl));
    }
    return out;
  }

 private:
  // One cluster per couple: the ends of (p1 p2)^alpha p1 form Spread({mu1}, xi) ∩ [mu1, mu2].
  NpsCover base_extension(const Cluster& c) {
    if (c.d.size() != 1) throw std::invalid_argument("degree 0 cluster must be a singleton");
    std::map<PalCouple, std::vector<Pos>> by_couple;
    for (const auto& t : idx_.pal_ext(c.d.min())) by_couple[t.couple].push_back(sigma(t));
    NpsCover out{1, {}};
    for (auto& [couple, ends] : by_couple) {
      PosSet d(std::move(ends));
      const Pos xi = couple.xi(), mu1 = d.min();
      if (spread_in(PosSet{mu1}, xi, {mu1, d.max()}) != d)
        throw consistency_error("extensions of one couple are not an arithmetic progression");
      out.members.push_back({std::move(d), xi, 1, {singleton_cluster(mu1)}});
    }
    return out;
  }

  NpsCover general_extension(const Cluster& c) {
    const Pos xi = c.xi, mu1 = c.d.min();
    const Pos mu3 = idx_.per_prolong(mu1, xi);
    const Pos lo2 = mu3 - kC1 * xi + 1;
    NpsCover out{c.degree + 1, {}};
    const auto part1 = restrict_to(c, mu1, lo2 - 1);
    const auto part2 = restrict_to(c, lo2, mu3);
    if (part1)
      if (auto g = inside_extension(*part1)) out.members.push_back(std::move(*g));
    if (part2)
      for (auto& g : near_extension(*part2).members) out.members.push_back(std::move(g));
    if (part1 && mu3 < idx_.size()) {
      for (const Run& r : runs_of(idx_, cov_pal(idx_, mu3 + 1, CovKind::edge)).runs) {
        if (outside_extension_spans(idx_, part1->d, xi, run_info(idx_, r)).empty()) continue;
        out.members.push_back(outside_extension(*part1, r));
      }
    }
    return out;
  }

  const PalIndex& idx_;
  Pos h_;
  std::map<std::tuple<std::vector<Pos>, Pos, Pos>, NpsCover> memo_;
};

}  // namespace pallen
