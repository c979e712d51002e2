#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pallen/palindromics.hpp"
#include "pallen/periodicity.hpp"
#include "pallen/word.hpp"

namespace pallen {

inline constexpr Pos kC1 = 5;
inline constexpr Pos kC2 = 8;
inline constexpr Pos kC3 = 10;

/// Integer or half-integer position stored doubled.
struct HalfPos {
  Pos doubled;
  friend bool operator==(const HalfPos&, const HalfPos&) = default;
  friend auto operator<=>(const HalfPos&, const HalfPos&) = default;
};

struct PalSpan {
  Pos n1;
  Pos n2;
  Pos length() const { return n2 - n1 + 1; }
  Pos doubled_center() const { return n1 + n2; }
  friend bool operator==(const PalSpan&, const PalSpan&) = default;
  friend auto operator<=>(const PalSpan&, const PalSpan&) = default;
};

/// Centers of the p1 copy and the p2 copy of a couple placed at n1.
inline std::pair<HalfPos, HalfPos> pi_centers(const Word& z, Pos n1, const PalCouple& c) {
  const Pos xi = c.xi();
  if (n1 < 1 || n1 + xi - 1 > z.size() || z.slice(n1, n1 + xi - 1) != c.p1 + c.p2)
    throw std::invalid_argument("pi_centers: p1 p2 is not a prefix of z[n1, |z|]");
  const Pos n3 = n1 + xi - 1;
  const Pos n2 = n3 - c.p2.size() + 1;
  return {HalfPos{n1 + n2 - 1}, HalfPos{n2 + n3}};
}

/// A run together with its couple and base centers.
struct RunInfo {
  Run run;
  CoupleShape couple;
  HalfPos gamma1;
  HalfPos gamma2;

  /// (n1 + n2) / 2 lies in the xi-spread of the base centers and the span sits inside the run.
  bool canonical(Pos n1, Pos n2) const {
    if (n1 < run.nu1 || n2 > run.nu2 || n2 < n1) return false;
    const Pos mod = 2 * run.xi;
    const Pos c = floor_mod(n1 + n2, mod);
    return c == floor_mod(gamma1.doubled, mod) || c == floor_mod(gamma2.doubled, mod);
  }
};

/// The couple (p1, p2) with |p1 p2| = xi that prefixes the run.
inline RunInfo run_info(const PalIndex& idx, const Run& r) {
  if (!is_run(idx.word(), r)) throw std::invalid_argument("run_info: not a run");
  const std::u32string_view head = idx.word().view().substr(static_cast<std::size_t>(r.nu1 - 1),
                                                            static_cast<std::size_t>(r.xi));
  std::optional<CoupleShape> found;
  for (Pos k = 0; k < r.xi; ++k) {
    if (!is_palindrome(head.substr(0, static_cast<std::size_t>(k)))) continue;
    if (!is_palindrome(head.substr(static_cast<std::size_t>(k)))) continue;
    std::u32string tripled(head);
    tripled.append(head.substr(0, static_cast<std::size_t>(k)));
    if (!is_non_periodic(tripled)) continue;
    if (found) throw consistency_error("run_info: two couples share the same p1 p2");
    found = CoupleShape{k, r.xi - k};
  }
  if (!found) throw consistency_error("run_info: run without couple prefix");
  const Pos n3 = r.nu1 + r.xi - 1;
  const Pos n2 = n3 - found->p2_len + 1;
  return {r, *found, HalfPos{r.nu1 + n2 - 1}, HalfPos{n2 + n3}};
}

/// Canonical palindromes of a run.
inline std::vector<PalSpan> run_pal(const PalIndex& idx, const Run& r) {
  const auto info = run_info(idx, r);
  std::vector<PalSpan> out;
  for (Pos a = r.nu1; a <= r.nu2; ++a)
    for (Pos b = a; b <= r.nu2; ++b)
      if (info.canonical(a, b)) {
        if (!idx.is_pal(a, b))
          throw consistency_error("run_pal: canonical span [" + std::to_string(a) + ", " + std::to_string(b) +
                                  "] is not a palindrome");
        out.push_back({a, b});
      }
  return out;
}

enum class CovKind { all, left, right, edge, edge_left, edge_right };

inline CovKind parse_cov_kind(std::string_view s) {
  if (s == "all") return CovKind::all;
  if (s == "left") return CovKind::left;
  if (s == "right") return CovKind::right;
  if (s == "edge") return CovKind::edge;
  if (s == "edge_left") return CovKind::edge_left;
  if (s == "edge_right") return CovKind::edge_right;
  throw std::invalid_argument("unknown covering kind: " + std::string(s));
}

/// Palindromic spans containing n, filtered by kind; edge spans are the maximal palindrome of their center.
inline std::vector<PalSpan> cov_pal(const PalIndex& idx, Pos n, CovKind kind) {
  if (n < 1 || n > idx.size()) throw std::out_of_range("cov_pal position out of range");
  const bool edge_only = kind == CovKind::edge || kind == CovKind::edge_left || kind == CovKind::edge_right;
  const bool left = kind == CovKind::left || kind == CovKind::edge_left;
  const bool right = kind == CovKind::right || kind == CovKind::edge_right;
  std::vector<PalSpan> out;
  for (Pos c = 2; c <= 2 * idx.size(); ++c) {
    if (left && c < 2 * n) continue;
    if (right && c > 2 * n) continue;
    const auto [lo, hi] = idx.pal().maximal_at(c);
    if (hi < lo || lo > n || hi < n) continue;
    if (edge_only) {
      out.push_back({lo, hi});
      continue;
    }
    // nested palindromes [lo + k, hi - k] that still contain n
    for (Pos a = lo, b = hi; a <= b && a <= n && b >= n; ++a, --b) out.push_back({a, b});
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Couple of the centered sub-palindrome z[n, Mirror(n1, n2, n)].
inline PalCouple ct_pc(const PalIndex& idx, const PalSpan& span, Pos n) {
  const auto edge_left = cov_pal(idx, n, CovKind::edge_left);
  if (std::find(edge_left.begin(), edge_left.end(), span) == edge_left.end())
    throw std::invalid_argument("ct_pc: span is not an edge-left covering palindrome of n");
  return idx.to_pal_couple(n, mirror(span.n1, span.n2, n));
}

/// Whether z[n1, n2] occurs in (p1 p2)^infinity; checked against an unrolling of length |span| + 2 xi,
/// which holds every factor of that length since some occurrence starts within the first period.
inline bool is_factor_of_power(std::u32string_view factor, std::u32string_view period) {
  std::u32string unrolled;
  while (unrolled.size() < factor.size() + 2 * period.size()) unrolled += period;
  return unrolled.find(factor) != std::u32string::npos;
}

/// Edge-left covering spans that are not factors of a power of their center couple.
inline std::vector<PalSpan> cov_pal_cmd(const PalIndex& idx, Pos n) {
  std::vector<PalSpan> out;
  for (const auto& span : cov_pal(idx, n, CovKind::edge_left)) {
    const auto c = idx.try_to_pal_couple_shape(n, mirror(span.n1, span.n2, n));
    if (!c) {  // no center couple, so not a power of one
      out.push_back(span);
      continue;
    }
    const auto period = idx.word().view().substr(static_cast<std::size_t>(n - 1), static_cast<std::size_t>(c->xi()));
    const auto factor =
        idx.word().view().substr(static_cast<std::size_t>(span.n1 - 1), static_cast<std::size_t>(span.length()));
    if (!is_factor_of_power(factor, period)) out.push_back(span);
  }
  return out;
}

/// Extension tuples of D that start in the span and end at the mirror of their start.
inline std::vector<PalExtTuple> pal_ext_in_span(const PalIndex& idx, const PosSet& d, const PalSpan& span) {
  std::vector<PalExtTuple> out;
  for (Pos n : d.restricted(span.n1, span.n2))
    for (const auto& t : idx.pal_ext(n))
      if (sigma(t) == mirror(span.n1, span.n2, n)) out.push_back(t);
  return out;
}

/// Runs reached from palindromic spans; spans with no couple have no run and are listed apart.
struct RunImage {
  std::set<Run> runs;
  std::vector<PalSpan> without_couple;
};

inline RunImage runs_of(const PalIndex& idx, const std::vector<PalSpan>& spans) {
  RunImage out;
  for (const auto& s : spans) {
    if (idx.try_to_pal_couple_shape(s.n1, s.n2))
      out.runs.insert(idx.p_to_run(s.n1, s.n2));
    else
      out.without_couple.push_back(s);
  }
  return out;
}

/// D ∩ [mu3 - c1 xi + 1, mu3] is empty, with mu3 the prolongation of (min D, xi).
inline bool far_from_prolongation(const PalIndex& idx, const PosSet& d, Pos xi) {
  if (d.empty()) return false;
  const Pos mu3 = idx.per_prolong(d.min(), xi);
  return d.restricted(mu3 - kC1 * xi + 1, mu3).empty();
}

/// Extension spans (n, sigma) of D1 that end past mu3 and are canonical for the run.
inline std::vector<PalSpan> outside_extension_spans(const PalIndex& idx, const PosSet& d1, Pos xi1,
                                                    const RunInfo& info) {
  std::vector<PalSpan> out;
  if (d1.empty()) return out;
  const Pos mu3 = idx.per_prolong(d1.min(), xi1);
  for (Pos n : d1)
    for (Pos e : idx.pal_ext_ends(n))
      if (e > mu3 && info.canonical(n, e)) out.push_back({n, e});
  return out;
}

/// The minimal canonical palindrome (d1, d2) for an extension set of D1 through the run.
inline PalSpan min_run_pal(const PalIndex& idx, const PosSet& d1, Pos xi1, const Run& r) {
  if (d1.empty() || !far_from_prolongation(idx, d1, xi1))
    throw std::invalid_argument("min_run_pal: D1 must be nonempty and outside the c1 window before mu3");
  const auto info = run_info(idx, r);
  const auto spans = outside_extension_spans(idx, d1, xi1, info);
  if (spans.empty()) throw std::invalid_argument("min_run_pal: empty extension set");
  PalSpan best = spans.front();
  for (const auto& s : spans)
    if (s < best) best = s;
  const Pos mu3 = idx.per_prolong(d1.min(), xi1);
  if (!(best.n2 - (mu3 + 1) < r.xi))
    throw consistency_error("min_run_pal: d2 - (mu3 + 1) < xi2 violated");
  if (!(d1.max() - best.n1 + 1 <= r.xi))
    throw consistency_error("min_run_pal: max(D1) - d1 + 1 <= xi2 violated");
  return best;
}

}  // namespace pallen
