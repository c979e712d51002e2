#include <gtest/gtest.h>

#include <bit>
#include <map>

#include "pallen/generators.hpp"
#include "pallen/nps.hpp"

using namespace pallen;

namespace {

const Word z3 = "#a#a#c#a#a#"_w;

using Mask = std::uint32_t;

PosSet to_set(Mask m) {
  std::vector<Pos> v;
  for (Pos i = 1; m; ++i, m >>= 1)
    if (m & 1) v.push_back(i);
  return PosSet(std::move(v));
}

Pos lo_of(Mask m) { return std::countr_zero(m) + 1; }
Pos hi_of(Mask m) { return 32 - std::countl_zero(m); }

// NestPer straight from the definitions: every xi-cut (all subsets, not just windows) and covers
// drawn from every lower-degree cluster inside Close(cut). Positions are bits, so |z| <= 12.
class BruteNestPer {
 public:
  BruteNestPer(const Word& z, std::vector<Pos> theta) : z_(z), theta_(std::move(theta)) {
    const Pos n = z.size();
    for (Mask d = 1; d < (Mask{1} << n); ++d)
      for (Pos xi = 1; xi <= n; ++xi)
        if (tilde(d, xi)) tilde_.push_back({d, xi});
    levels_.emplace_back();
    for (const auto& [d, xi] : tilde_)
      if (std::popcount(d) == 1) levels_[0].insert(d);
  }

  bool tilde(Mask d, Pos xi) const {
    const Pos lo = lo_of(d), hi = hi_of(d);
    for (Pos i = lo; i + xi <= hi; ++i)
      if (z_[i] != z_[i + xi]) return false;
    for (Pos i = lo; i <= hi; ++i)
      for (Pos j = lo; j <= hi; ++j)
        if ((d >> (i - 1) & 1) && (i - j) % xi == 0 && !(d >> (j - 1) & 1)) return false;
    return true;
  }

  // Cluster masks of NestPer(m), computed level by level.
  const std::set<Mask>& level(Pos m) {
    while (static_cast<Pos>(levels_.size()) <= m) {
      const Pos k = static_cast<Pos>(levels_.size());
      std::set<Mask> next;
      for (const auto& [d, xi] : tilde_)
        if (member(k, d, xi)) next.insert(d);
      levels_.push_back(std::move(next));
    }
    return levels_[static_cast<std::size_t>(m)];
  }

  bool member(Pos m, Mask d, Pos xi) {
    if (!tilde(d, xi)) return false;
    if (m == 0) return std::popcount(d) == 1;
    level(m - 1);
    for (Mask s = d; s; s = (s - 1) & d)
      if (hi_of(s) - lo_of(s) + 1 <= xi && omega(m - 1, s) > theta_[static_cast<std::size_t>(m)]) return false;
    return true;
  }

  Pos omega(Pos m, Mask x) {
    if (m == 0) return std::popcount(x);
    const auto& lvl = level(m);
    std::vector<Mask> cands;
    const Pos lo = lo_of(x), hi = hi_of(x);
    for (Mask c : lvl)
      if (lo_of(c) >= lo && hi_of(c) <= hi && (c & x)) cands.push_back(c);
    for (Pos k = 1;; ++k)
      if (cover_within(cands, x, k)) return k;
  }

 private:
  static bool cover_within(const std::vector<Mask>& cands, Mask left, Pos k) {
    if (!left) return true;
    if (k == 0) return false;
    const Mask low = left & -left;
    for (Mask c : cands)
      if ((c & low) && cover_within(cands, left & ~c, k - 1)) return true;
    return false;
  }

  Word z_;
  std::vector<Pos> theta_;
  std::vector<std::pair<Mask, Pos>> tilde_;
  std::vector<std::set<Mask>> levels_;
};

// Independent checks of the NPS clauses.
bool brute_tilde(const Word& z, const PosSet& d, Pos xi) {
  if (d.empty() || d.max() > z.size()) return false;
  for (Pos i = d.min(); i + xi <= d.max(); ++i)
    if (z[i] != z[i + xi]) return false;
  for (Pos a : d)
    for (Pos b = d.min(); b <= d.max(); ++b)
      if ((b - a) % xi == 0 && !d.contains(b)) return false;
  return true;
}

// Every subset of D with diam <= xi that is maximal under inclusion.
std::set<PosSet> brute_maximal_cuts(const PosSet& d, Pos xi) {
  const auto& el = d.elements();
  std::vector<PosSet> all;
  for (Mask m = 1; m < (Mask{1} << el.size()); ++m) {
    std::vector<Pos> v;
    for (std::size_t b = 0; b < el.size(); ++b)
      if (m >> b & 1) v.push_back(el[b]);
    PosSet s(std::move(v));
    if (diam(s) <= xi) all.push_back(std::move(s));
  }
  std::set<PosSet> out;
  for (const auto& s : all) {
    bool maximal = true;
    for (const auto& t : all) maximal = maximal && (s == t || !s.is_subset_of(t));
    if (maximal) out.insert(s);
  }
  return out;
}

std::vector<Word> ordinary_corpus() {
  std::vector<Word> out;
  for (Pos h = 2; h <= 5; ++h) out.push_back(nested_palindromes(h).back());
  // long periodic stretches around a centre, so positions far from mu3 still reach past it
  out.push_back("#a#a#a#a#a#a#a#a#b#a#a#a#a#a#a#a#a#"_w);
  out.push_back("#a#a#a#a#a#a#b#a#a#a#a#a#a#c#a#a#a#a#a#a#b#a#a#a#a#a#a#"_w);
  const Word tm = pad_infinite_prefix(thue_morse(64), 127);
  for (Pos h0 = 3; h0 <= 5; ++h0)
    if (const auto iv = find_ordinary(tm, h0); iv && iv->length() <= 64) out.push_back(tm.slice(iv->lo, iv->hi));
  return out;
}

// W̃ clusters with xi <= 6 and a span of at most 24, one per (span, xi, residue set).
std::vector<Nps> small_clusters(const Word& z) {
  std::vector<Nps> out;
  for (Pos a = 1; a <= z.size(); ++a)
    for (Pos b = a; b <= std::min(z.size(), a + 23); ++b)
      for (Pos xi = 1; xi <= std::min<Pos>(6, b - a + 1); ++xi) {
        if (!detail::word_has_period(z, a, b, xi)) continue;
        for (Mask r = 0; r < (Mask{1} << xi); ++r) {
          if (!(r & 1)) continue;
          std::vector<Pos> v;
          for (Pos k = 0; k < xi; ++k)
            if (r >> k & 1)
              for (Pos n = a + k; n <= b; n += xi) v.push_back(n);
          PosSet d(std::move(v));
          if (d.max() == b && (xi > 1 || d.size() == static_cast<std::size_t>(b - a + 1))) out.push_back({d, xi});
        }
      }
  return out;
}

}  // namespace

TEST(NpsConstants, ThetaAndLambda) {
  EXPECT_EQ(theta(3, 0), 1);
  EXPECT_EQ(theta(3, 1), 300);
  EXPECT_EQ(lambda(3, 1), 2400);
  EXPECT_EQ(lambda(3, 2), BigInt("518400000000"));
  for (Pos h = 1; h <= 12; ++h)
    for (Pos m = 0; m <= 6; ++m) {
      BigInt t = 1, l = 1;
      for (Pos i = 0; i < m; ++i) t *= 100 * h;
      for (Pos i = 0; i < m; ++i) l *= 8 * t;
      ASSERT_EQ(theta(h, m), t);
      ASSERT_EQ(lambda(h, m), l);
    }
  EXPECT_THROW(theta(0, 1), std::invalid_argument);
  EXPECT_EQ(saturate(theta(50, 20)), std::numeric_limits<Pos>::max());
  EXPECT_LE(1 + kC1 + 4 * 1, kC3 * 1);
}

TEST(TildeNestPer, Examples) {
  EXPECT_TRUE(is_tilde_nestper(z3, {1, 3, 5}, 2));
  EXPECT_FALSE(is_tilde_nestper(z3, {1, 5}, 2));
  for (Pos n = 1; n <= z3.size(); ++n) EXPECT_TRUE(is_tilde_nestper(z3, {n}, 1));
  EXPECT_FALSE(is_tilde_nestper(z3, {}, 1));
  EXPECT_FALSE(is_tilde_nestper(z3, {1, 12}, 11));
  EXPECT_TRUE(is_tilde_nestper(z3, {2, 5}, z3.size()));
}

TEST(TildeNestPer, MatchesDefinition) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Word z = random_word(4 + static_cast<Pos>(seed % 6), 2, seed);
    for (Mask m = 1; m < (Mask{1} << z.size()); ++m)
      for (Pos xi = 1; xi <= z.size(); ++xi) ASSERT_EQ(is_tilde_nestper(z, to_set(m), xi), brute_tilde(z, to_set(m), xi));
  }
}

TEST(Cuts, Examples) {
  EXPECT_EQ(cuts({1, 3, 5}, 2), (std::vector<PosSet>{{1}, {3}, {5}}));
  EXPECT_EQ(cuts({2, 4}, 4), (std::vector<PosSet>{{2, 4}}));
  EXPECT_EQ(cuts({}, 3), (std::vector<PosSet>{PosSet{}}));
  EXPECT_THROW(cuts({1}, 0), std::invalid_argument);
}

TEST(Cuts, WindowsAreExactlyTheMaximalCuts) {
  for (Mask m = 1; m < (Mask{1} << 10); ++m)
    for (Pos xi = 1; xi <= 6; ++xi) {
      const auto w = cuts(to_set(m), xi);
      ASSERT_EQ(std::set<PosSet>(w.begin(), w.end()), brute_maximal_cuts(to_set(m), xi));
      ASSERT_EQ(std::set<PosSet>(w.begin(), w.end()).size(), w.size());
    }
}

TEST(NestPer, Examples) {
  NpsChecker chk(z3, 3);
  for (Pos n = 1; n <= z3.size(); ++n)
    for (Pos m = 0; m <= 2; ++m) EXPECT_TRUE(chk.member(m, {n}, 1));
  EXPECT_TRUE(chk.member(1, {1, 3, 5}, 2));
  EXPECT_FALSE(chk.member(0, {1, 3, 5}, 2));
  EXPECT_FALSE(chk.member(1, {1, 5}, 2));
  EXPECT_FALSE(chk.member(2, {1, 3, 5, 7}, 2));  // 2 is not a period of z3[1, 7]
  EXPECT_THROW(chk.member(3, {1}, 1), budget_exceeded);
  EXPECT_THROW(NpsChecker(pad_finite(thue_morse(40)), 3), budget_exceeded);
}

TEST(NestPer, MembershipAndOmegaMatchDefinitionOnTinyWords) {
  std::vector<Word> words{"#a#a#c#"_w, "aabaa"_w, "#a#b#a#"_w, "abababa"_w};
  for (std::uint64_t seed = 1; seed <= 6; ++seed) words.push_back(random_word(6 + static_cast<Pos>(seed % 2), 2, seed));
  for (const auto& theta_small : {std::vector<Pos>{1, 1, 1}, std::vector<Pos>{1, 1, 2}, std::vector<Pos>{1, 2, 1}})
    for (const Word& z : words) {
      BruteNestPer brute(z, theta_small);
      NpsChecker chk(z, 1, {}, [&](Pos m) { return theta_small[static_cast<std::size_t>(m)]; });
      for (Mask d = 1; d < (Mask{1} << z.size()); ++d) {
        for (Pos m = 1; m <= 2; ++m) {
          ASSERT_EQ(chk.omega(m, to_set(d)), brute.omega(m, d)) << z.to_utf8() << " D=" << d << " m=" << m;
          for (Pos xi = 1; xi <= z.size(); ++xi)
            ASSERT_EQ(chk.member(m, to_set(d), xi), brute.member(m, d, xi)) << z.to_utf8() << " D=" << d;
        }
      }
    }
}

TEST(Omega, Examples) {
  NpsChecker chk(z3, 3);
  EXPECT_EQ(chk.omega(1, {7}), 1);
  EXPECT_EQ(chk.omega(1, {1, 3, 5}), 1);
  EXPECT_EQ(chk.omega(0, {1, 3, 5}), 3);
  EXPECT_EQ(chk.omega(2, {}), 0);
  // with theta(1) = 1 a degree-1 cluster is a progression on a periodic stretch
  NpsChecker tight(z3, 3, {}, [](Pos) { return Pos{1}; });
  EXPECT_EQ(tight.omega(1, {1, 3, 5}), 1);
  EXPECT_EQ(tight.omega(1, {1, 3, 9, 11}), 2);
  EXPECT_EQ(tight.omega(1, {1, 3, 5, 7, 9, 11}), 2);
}

TEST(Omega, WitnessIsAMinimalDeterministicCover) {
  NpsChecker tight(z3, 3, {}, [](Pos) { return Pos{1}; });
  for (Mask d = 1; d < (Mask{1} << z3.size()); d += 7) {
    const PosSet ds = to_set(d);
    const auto cover = tight.min_cover(1, ds);
    EXPECT_EQ(static_cast<Pos>(cover.size()), tight.omega(1, ds));
    PosSet reach;
    for (const auto& c : cover) {
      EXPECT_TRUE(tight.member(1, c.d, c.xi));
      EXPECT_GE(c.d.min(), ds.min());
      EXPECT_LE(c.d.max(), ds.max());
      reach = reach.united(c.d);
    }
    EXPECT_TRUE(ds.is_subset_of(reach));
    NpsChecker again(z3, 3, {}, [](Pos) { return Pos{1}; });
    EXPECT_EQ(again.min_cover(1, ds), cover);
  }
}

TEST(BottomAndSeparate, Examples) {
  const auto r = bottom_and_separate(z3, {{1, 3, 5}, 2});
  EXPECT_TRUE(r.bottoms.contains(PosSet{1}));
  EXPECT_EQ(spread_in({1}, 2, {1, 5}), (PosSet{1, 3, 5}));
  // mu3 = 5, so all of D is within c1 xi of it
  EXPECT_EQ(r.separation.mu3, 5);
  EXPECT_TRUE(r.separation.d1.empty());
  EXPECT_EQ(r.separation.d2, (PosSet{1, 3, 5}));
  const Word per = periodic(Word(), "ab"_w, 40);
  const auto far = separate(per, {1, 3, 5}, 2);
  EXPECT_EQ(far.mu3, 40);
  EXPECT_TRUE(far.d2.empty());
  EXPECT_THROW(bottom_and_separate(z3, {{1, 5}, 2}), std::invalid_argument);
}

TEST(BottomAndSeparate, MatchesDefinitions) {
  for (const Word& z : ordinary_corpus()) {
    if (z.size() > 27) continue;
    for (const auto& c : small_clusters(z)) {
      if (c.d.size() > 12) continue;
      std::set<PosSet> want;
      const auto& el = c.d.elements();
      for (Mask m = 1; m < (Mask{1} << el.size()); ++m) {
        std::vector<Pos> v;
        for (std::size_t b = 0; b < el.size(); ++b)
          if (m >> b & 1) v.push_back(el[b]);
        PosSet s(std::move(v));
        if (diam(s) <= c.xi && spread_in(s, c.xi, *close(c.d)) == c.d) want.insert(s);
      }
      const auto r = bottom_and_separate(z, c);
      ASSERT_EQ(r.bottoms, want);
      const auto& s = r.separation;
      ASSERT_EQ(s.d1.united(s.d2), c.d);
      ASSERT_TRUE(s.d1.intersected(s.d2).empty());
      ASSERT_TRUE(s.d1.empty() || far_from_prolongation(PalIndex(z), s.d1, c.xi));
      ASSERT_TRUE(s.d2.empty() || diam(s.d2) <= kC1 * c.xi);
    }
  }
}

TEST(FoldCover, Examples) {
  NpsChecker chk(z3, 3);
  const Cluster c = chk.certify(1, {1, 3, 5}, 2);
  const auto one = fold_cover(z3, c, {1, 5}, 5, 1);
  EXPECT_EQ(one.g, c.d);
  const auto two = fold_cover(z3, c, {1, 5}, 2, 3);
  EXPECT_EQ(two.g, PosSet{1});
  EXPECT_EQ(two.blocks.size(), 3u);
  EXPECT_TRUE(c.d.is_subset_of(spread_in(two.g, 2, {1, 5})));
  EXPECT_THROW(fold_cover(z3, c, {1, 5}, 2, 2), std::invalid_argument);
  EXPECT_THROW(fold_cover(z3, c, {1, 7}, 2, 4), std::invalid_argument);
}

TEST(FoldCover, OmegaOfFoldIsAtMostAlpha) {
  int folds = 0;
  for (const Word& z : ordinary_corpus()) {
    if (z.size() > 48) continue;
    NpsChecker chk(z, npp(z).size());
    NpsChecker tight(z, 1, {}, [](Pos) { return Pos{1}; });
    for (const auto& c : small_clusters(z)) {
      if (c.d.size() > 12) continue;
      const Cluster cl = chk.certify(1, c.d, c.xi);
      for (Pos xi2 = 1; xi2 <= diam(c.d); ++xi2) {
        if (!detail::word_has_period(z, c.d.min(), c.d.max(), xi2)) continue;
        const Pos alpha = (diam(c.d) + xi2 - 1) / xi2;
        const auto f = fold_cover(z, cl, *close(c.d), xi2, alpha);
        ASSERT_LE(static_cast<Pos>(f.blocks.size()), alpha);
        ASSERT_LE(chk.omega(1, f.g), alpha);
        for (const auto& b : f.blocks) {
          ASSERT_TRUE(chk.member(1, b.d, b.xi));
          ASSERT_FALSE(validate(z, b, theta_fn(1)));
        }
        if (tight.member(1, c.d, c.xi)) {
          ASSERT_LE(tight.omega(1, f.g), alpha);
        }
        ++folds;
      }
    }
  }
  EXPECT_GT(folds, 1000);
}

TEST(CutCover, Examples) {
  NpsChecker chk(z3, 3);
  const Cluster c = chk.certify(1, {1, 3, 5}, 2);
  EXPECT_TRUE(cut_cover(c, {}).empty());
  EXPECT_EQ(cut_cover(c, {3}).size(), 1u);
  EXPECT_THROW(cut_cover(c, {1, 3}), std::invalid_argument);
  EXPECT_THROW(cut_cover(singleton_cluster(1), {1}), std::invalid_argument);
  // base {3, 5}: a window cut straddles two translates
  const Word per = periodic(Word(), "ab"_w, 20);
  NpsChecker pc(per, 2, {}, [](Pos m) { return m; });
  const Cluster wide = pc.certify(2, PosSet::range(3, 12), 4);
  EXPECT_EQ(wide.base.size(), 2u);
  const auto straddle = cut_cover(wide, {5, 6, 7, 8});
  EXPECT_LE(straddle.size(), 2 * wide.base.size());
  EXPECT_TRUE(PosSet({5, 6, 7, 8}).is_subset_of(NpsCover{0, straddle}.united()));
}

TEST(CutCover, EveryCutIsCoveredWithinTwiceTheBase) {
  std::vector<Word> words{z3, periodic(Word(), "ab"_w, 24), periodic("c"_w, "aab"_w, 30)};
  for (const auto& w : ordinary_corpus())
    if (w.size() <= 27) words.push_back(w);
  int checked = 0;
  for (const Word& z : words) {
    NpsChecker tight(z, 1, {}, [](Pos m) { return m; });  // theta(1) = 1, theta(2) = 2
    for (const auto& c : small_clusters(z)) {
      if (c.d.size() > 14 || !tight.member(2, c.d, c.xi)) continue;
      const Cluster cl = tight.certify(2, c.d, c.xi);
      const auto alpha = cl.base.size();
      for (Pos a = c.d.min(); a <= c.d.max(); ++a)
        for (Pos b = a; b < a + c.xi && b <= c.d.max(); ++b) {
          const PosSet cut = c.d.restricted(a, b);
          const auto cov = cut_cover(cl, cut);
          ASSERT_LE(cov.size(), 2 * alpha);
          if (diam(cut) > 0 && cut.min() >= c.d.min() && cut.max() < c.d.min() + c.xi) {
            ASSERT_LE(cov.size(), alpha);
          }
          for (const auto& p : cov) {
            ASSERT_TRUE(tight.member(1, p.d, p.xi)) << z.to_utf8();
            ASSERT_GE(p.d.min(), cut.empty() ? 0 : cut.min());
            ASSERT_LE(p.d.max(), cut.empty() ? 0 : cut.max());
          }
          ASSERT_TRUE(cut.is_subset_of(NpsCover{1, cov}.united()));
          ASSERT_LE(tight.omega(1, cut), static_cast<Pos>(cov.size()));
          ++checked;
        }
    }
  }
  EXPECT_GT(checked, 500);
}

TEST(Validate, AcceptsCertifiedAndRejectsCorrupted) {
  NpsChecker chk(z3, 3);
  Cluster c = chk.certify(1, {1, 3, 5}, 2);
  EXPECT_FALSE(validate(z3, c, theta_fn(3)));
  Cluster no_base = c;
  no_base.base.clear();
  EXPECT_TRUE(validate(z3, no_base, theta_fn(3)));
  Cluster wrong_period = c;
  wrong_period.d = {1, 3, 5, 7};
  EXPECT_TRUE(validate(z3, wrong_period, theta_fn(3)));
  Cluster too_many = chk.certify(1, {1, 2, 3}, 3);
  EXPECT_FALSE(validate(z3, too_many, theta_fn(3)));
  EXPECT_TRUE(validate(z3, too_many, [](Pos) { return Pos{2}; }));
}

namespace {

struct ExtensionStats {
  int clusters = 0;
  int inside_nonempty = 0;
  int near_nonempty = 0;
  int outside = 0;
};

// Runs every constructive step on every small cluster of z certified at degree 1 and checks it
// against brute-force extension sets and the exact checker.
ExtensionStats check_extensions(const Word& z) {
  ExtensionStats st;
  const PalIndex idx(z);
  const Pos h = npp(z).size();
  NpsChecker chk(z, h);
  NpsBuilder b(idx, h);
  for (const auto& c : small_clusters(z)) {
    if (c.d.size() > 12) continue;
    const Cluster cl = chk.certify(1, c.d, c.xi);
    ++st.clusters;
    const Pos mu1 = c.d.min(), mu3 = idx.per_prolong(mu1, c.xi);
    const PosSet all = sigma_ext(idx, c.d);

    // inside the prolongation, and the bottom-spread sub-claim
    const PosSet inside = all.restricted(mu1, mu3);
    const PosSet c0_ext = sigma_ext(idx, c.d.restricted(mu1, mu1 + c.xi - 1)).restricted(mu1, mu3);
    EXPECT_TRUE(inside.empty() || inside.is_subset_of(spread_in(c0_ext, c.xi, {mu1, mu3})));
    const auto g = b.inside_extension(cl);
    EXPECT_EQ(g.has_value(), !inside.empty()) << z.to_utf8();
    if (g) {
      ++st.inside_nonempty;
      EXPECT_TRUE(inside.is_subset_of(g->d));
      EXPECT_GE(g->d.min(), mu1);
      EXPECT_LE(g->d.max(), mu3);
      EXPECT_EQ(g->degree, 2);
      EXPECT_TRUE(chk.member(2, g->d, g->xi));
      EXPECT_FALSE(validate(z, *g, theta_fn(h)));
    }

    const auto sep = separate(z, c.d, c.xi);
    if (!sep.d2.empty()) {
      const auto near = b.near_extension(*restrict_to(cl, sep.d2.min(), sep.d2.max()));
      EXPECT_LE(static_cast<Pos>(near.members.size()), kC1);
      EXPECT_TRUE(sigma_ext(idx, sep.d2).is_subset_of(near.united()));
      for (const auto& m : near.members) {
        EXPECT_TRUE(chk.member(2, m.d, m.xi));
        EXPECT_FALSE(validate(z, m, theta_fn(h)));
      }
      st.near_nonempty += near.members.empty() ? 0 : 1;
    }
    if (!sep.d1.empty() && sep.mu3 < z.size()) {
      const Cluster c1 = *restrict_to(cl, sep.d1.min(), sep.d1.max());
      for (const pallen::Run& r : runs_of(idx, cov_pal(idx, sep.mu3 + 1, CovKind::edge)).runs) {
        const auto spans = outside_extension_spans(idx, sep.d1, c.xi, run_info(idx, r));
        if (spans.empty()) {
          EXPECT_THROW(b.outside_extension(c1, r), std::invalid_argument);
          continue;
        }
        const Cluster o = b.outside_extension(c1, r);
        ++st.outside;
        for (const auto& s : spans) EXPECT_TRUE(o.d.contains(s.n2));
        EXPECT_EQ(o.xi, r.xi);
        EXPECT_GT(o.d.min(), sep.mu3);
        EXPECT_TRUE(chk.member(2, o.d, o.xi));
        EXPECT_FALSE(validate(z, o, theta_fn(h)));
      }
    }

    const auto cov = b.extend_cluster(cl);
    EXPECT_EQ(cov.degree, 2);
    EXPECT_LE(static_cast<Pos>(cov.members.size()), 1 + kC1 + 4 * h);
    EXPECT_TRUE(all.is_subset_of(cov.united())) << z.to_utf8() << " D min " << mu1 << " xi " << c.xi;
  }
  return st;
}

}  // namespace

TEST(Extensions, ConstructionsCoverBruteForceExtensionSets) {
  ExtensionStats total;
  for (const Word& z : ordinary_corpus()) {
    const auto st = check_extensions(z);
    total.clusters += st.clusters;
    total.inside_nonempty += st.inside_nonempty;
    total.near_nonempty += st.near_nonempty;
    total.outside += st.outside;
  }
  EXPECT_GT(total.clusters, 500);
  EXPECT_GT(total.inside_nonempty, 100);
  EXPECT_GT(total.near_nonempty, 100);
  EXPECT_GT(total.outside, 0);
}

TEST(Extensions, BaseCaseOneClusterPerCouple) {
  for (const Word& z : ordinary_corpus()) {
    const PalIndex idx(z);
    const Pos h = npp(z).size();
    NpsBuilder b(idx, h);
    NpsChecker tight(z, h, {}, [](Pos) { return Pos{1}; });
    for (Pos n = 1; n <= z.size(); ++n) {
      const auto cov = b.extend_cluster(singleton_cluster(n));
      const PosSet ext = sigma_ext(idx, {n});
      EXPECT_EQ(cov.united(), ext);
      EXPECT_LE(static_cast<Pos>(cov.members.size()), h);
      for (const auto& c : cov.members) EXPECT_FALSE(validate(z, c, [](Pos) { return Pos{1}; }));
      // with theta(1) = 1 the exact minimum is still within h
      if (z.size() <= 48 && ext.size() <= 16 && !ext.empty()) {
        EXPECT_LE(tight.omega(1, ext), h);
      }
    }
  }
}

TEST(Extensions, PreconditionsAreChecked) {
  const PalIndex idx(z3);
  NpsBuilder b(idx, 3);
  EXPECT_THROW(b.inside_extension(singleton_cluster(1)), std::invalid_argument);
  NpsChecker chk(z3, 3);
  const Cluster c = chk.certify(1, {1, 3, 5}, 2);
  EXPECT_THROW(b.outside_extension(c, pallen::Run{1, 5, 2}), std::invalid_argument);
  const Word per = periodic(Word(), "ab"_w, 40);
  const PalIndex pidx(per);
  NpsBuilder pb(pidx, 1);
  NpsChecker pchk(per, 1);
  EXPECT_THROW(pb.near_extension(pchk.certify(1, {1, 3, 5, 7, 9, 11, 13}, 2)), std::invalid_argument);
}

TEST(CoverChain, Examples) {
  const PalIndex idx(z3);
  NpsBuilder b(idx, 3);
  const auto chain = b.cover_chain(2);
  ASSERT_EQ(chain.size(), 3u);
  EXPECT_EQ(chain[0].cover.members.size(), 1u);
  EXPECT_EQ(chain[0].cover.members[0].d, PosSet{1});
  EXPECT_EQ(chain[1].target, (PosSet{3, 5, 11}));
  EXPECT_TRUE(chain[1].uncovered.empty());
  EXPECT_LE(static_cast<Pos>(chain[1].cover.members.size()), kC3 * 3);
  EXPECT_TRUE(chain[2].uncovered.empty());
  EXPECT_THROW(b.cover_chain(-1), std::invalid_argument);
}

TEST(CoverChain, NestedPalindromesAreCoveredWithinTheBound) {
  for (Pos h = 2; h <= 6; ++h) {
    const Word z = nested_palindromes(h).back();
    const PalIndex idx(z);
    NpsBuilder b(idx, h);
    const auto chain = b.cover_chain(4 * h);
    EXPECT_EQ(static_cast<Pos>(chain.size()), static_cast<Pos>(cover_levels(z).size()));
    for (const auto& lvl : chain) {
      EXPECT_TRUE(lvl.uncovered.empty()) << "h=" << h << " m=" << lvl.m;
      EXPECT_LE(BigInt(lvl.cover.members.size()), boost::multiprecision::pow(BigInt(kC3 * h), static_cast<unsigned>(lvl.m)));
      for (const auto& c : lvl.cover.members) {
        EXPECT_EQ(c.degree, lvl.m);
        EXPECT_GE(c.d.min(), lvl.target.min());
        EXPECT_LE(c.d.max(), lvl.target.max());
        EXPECT_FALSE(validate(z, c, theta_fn(h)));
      }
      if (z.size() <= 64 && lvl.m <= 2) {
        NpsChecker chk(z, h);
        for (const auto& c : lvl.cover.members) EXPECT_TRUE(chk.member(lvl.m, c.d, c.xi));
      }
    }
  }
}

TEST(CoverChain, ThueMorseFactorsAreCovered) {
  const Word tm = pad_infinite_prefix(thue_morse(256), 511);
  for (Pos h0 = 3; h0 <= 6; ++h0) {
    const auto iv = find_ordinary(tm, h0);
    ASSERT_TRUE(iv);
    const Word z = tm.slice(iv->lo, iv->hi);
    if (z[1] != kDefaultPad) continue;
    const PalIndex idx(z);
    const Pos h = npp(z).size();
    NpsBuilder b(idx, h);
    for (const auto& lvl : b.cover_chain(3 * h)) {
      EXPECT_TRUE(lvl.uncovered.empty()) << z.to_utf8() << " m=" << lvl.m;
      EXPECT_LE(BigInt(lvl.cover.members.size()), boost::multiprecision::pow(BigInt(kC3 * h), static_cast<unsigned>(lvl.m)));
      for (const auto& c : lvl.cover.members) EXPECT_FALSE(validate(z, c, theta_fn(h)));
    }
  }
}

TEST(NpsProperties, RestrictionTranslationMirrorAndLift) {
  std::vector<Word> words{z3, "#a#b#a#a#b#a#"_w, periodic("c"_w, "ab"_w, 14)};
  for (const Word& z : words) {
    NpsChecker tight(z, 1, {}, [](Pos m) { return m; });
    int members = 0;
    for (const auto& c : small_clusters(z))
      for (Pos m = 1; m <= 2; ++m) {
        if (c.d.size() > 12 || !tight.member(m, c.d, c.xi)) continue;
        ++members;
        const Pos lo = c.d.min(), hi = c.d.max();
        // R1
        for (Pos a = lo; a <= hi; ++a)
          for (Pos b = a; b <= hi; ++b) {
            const PosSet r = c.d.restricted(a, b);
            if (!r.empty()) {
              ASSERT_TRUE(tight.member(m, r, c.xi)) << z.to_utf8();
            }
          }
        // R2: every other occurrence of z[lo, hi]
        for (Pos s = 1; s + (hi - lo) <= z.size(); ++s)
          if (s != lo && z.slice(s, s + hi - lo) == z.slice(lo, hi)) {
            ASSERT_TRUE(tight.member(m, add(c.d, s - lo), c.xi));
            ASSERT_EQ(tight.omega(m, add(c.d, s - lo)), tight.omega(m, c.d));
          }
        // R3: reversed occurrences ending at or after hi
        for (Pos s = 1; s + (hi - lo) <= z.size(); ++s) {
          const Pos e = s + hi - lo;
          if (e >= hi && z.slice(s, e) == reverse(z.slice(lo, hi))) {
            ASSERT_TRUE(tight.member(m, mirror_set(lo, e, c.d), c.xi));
          }
        }
        // R4
        if (diam(c.d) <= c.xi) {
          ASSERT_TRUE(tight.member(m, c.d, z.size()));
        }
      }
    EXPECT_GT(members, 20);
  }
}
