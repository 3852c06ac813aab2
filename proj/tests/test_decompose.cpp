#include <gtest/gtest.h>

#include <random>

#include "qucat/decompose.hpp"

using namespace qucat;

namespace {

bool degenerate_spread(std::size_t n, std::size_t i, std::size_t j) {
  return j == 0 || (j == 1 && i == 0) || (j == n && i == n);
}

std::size_t choose(std::size_t n, std::size_t k) { return static_cast<std::size_t>(binomial(n, k)); }

// spread subsets counted by inclusion-exclusion on which side is missed
std::size_t spread_count(std::size_t n, std::size_t i, std::size_t j) {
  std::size_t low = j - (i < j ? 1 : 0), high = n + 1 - j - (i >= j ? 1 : 0);
  std::size_t count = 0;
  for (std::size_t size = 2; size + 1 <= n; ++size)  // size of J minus i, with |J| <= n
    for (std::size_t a = 1; a < size; ++a) count += choose(low, a) * choose(high, size - a);
  return count;
}

}  // namespace

TEST(Spread, SmallExample) {
  auto c = spread_decomposition(3, 1, 1);
  ASSERT_EQ(c.steps.size(), 2u);
  for (const auto& s : c.steps) EXPECT_EQ(std::get<HornStep>(s).v, 1u);
  auto r = verify(c);
  EXPECT_TRUE(r.ok) << r.clause;
  ASSERT_EQ(r.horns.size(), 2u);
  EXPECT_TRUE(r.horns[0].marking.empty());
}

TEST(Spread, AllTriplesUpToFive) {
  for (std::size_t n = 2; n <= 5; ++n)
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; j <= n; ++j) {
        if (degenerate_spread(n, i, j)) {
          EXPECT_THROW(spread_decomposition(n, i, j), InvalidInput);
          continue;
        }
        auto c = spread_decomposition(n, i, j);
        EXPECT_EQ(c.steps.size(), spread_count(n, i, j)) << n << i << j;
        auto r = verify(c);
        EXPECT_TRUE(r.ok) << n << " " << i << " " << j << ": " << r.clause;
        for (const auto& h : r.horns) EXPECT_TRUE(h.admissible);
      }
}

TEST(Spread, CountsSubsetsAtFour) {
  std::size_t brute = 0;
  for (unsigned mask = 0; mask < 32; ++mask) {
    std::vector<std::size_t> J;
    for (std::size_t x = 0; x <= 4; ++x)
      if (mask >> x & 1u) J.push_back(x);
    if (J.size() <= 4 && is_spread(J, 2, 2)) ++brute;
  }
  EXPECT_EQ(spread_decomposition(4, 2, 2).steps.size(), brute);
}

TEST(Spread, OuterMarkingMatchesTheOuterHornCases) {
  EXPECT_TRUE(spread_marking(4, 2, 2).empty());
  EXPECT_EQ(spread_marking(4, 1, 3), (std::vector<std::pair<std::size_t, std::size_t>>{{1, 2}}));
  EXPECT_EQ(spread_marking(3, 3, 2), (std::vector<std::pair<std::size_t, std::size_t>>{{2, 3}}));
  EXPECT_EQ(spread_marking(3, 0, 1).size(), 0u);
}

TEST(Verify, RejectsTamperedCertificates) {
  auto good = spread_decomposition(4, 2, 2);
  ASSERT_TRUE(verify(good).ok);

  auto reversed = good;
  std::reverse(reversed.steps.begin(), reversed.steps.end());
  auto r = verify(reversed);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.failing_step, 0u);

  auto short_cert = good;
  short_cert.steps.pop_back();
  r = verify(short_cert);
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.failing_step.has_value());

  auto wrong_vertex = good;
  std::get<HornStep>(wrong_vertex.steps[0]).v = 0;
  EXPECT_FALSE(verify(wrong_vertex).ok);

  auto twice = good;
  twice.steps.push_back(twice.steps.back());
  r = verify(twice);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.failing_step, good.steps.size());
}

TEST(Verify, OuterHornNeedsMarkedEdge) {
  // Λ²₀ -> Δ² is only admissible with the edge {0,1} marked
  PushoutCertificate c;
  c.start = flat(horn(2, 0));
  c.target = flat(standard(2));
  c.steps.push_back(HornStep{{{0}, {1}, {2}}, 0});
  auto r = verify(c);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.failing_step, 0u);

  auto e01 = *horn(2, 0).find_by_key({{0}, {1}});
  c.start = MarkedSSet::from_edges(horn(2, 0), {e01});
  c.target = MarkedSSet::from_edges(standard(2), {*standard(2).find_by_key({{0}, {1}})});
  r = verify(c);
  EXPECT_TRUE(r.ok) << r.clause;
  ASSERT_EQ(r.horns.size(), 1u);
  EXPECT_EQ(r.horns[0].marking, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}}));
}

TEST(Verify, RemarkStep) {
  auto x = standard(2);
  auto e = [&](int a, int b) { return *x.find_by_key({{a}, {b}}); };
  PushoutCertificate c;
  c.start = MarkedSSet::from_edges(x, {e(0, 1), e(1, 2)});
  c.target = sharp(x);
  c.steps.push_back(RemarkStep{{{0}, {1}, {2}}});
  EXPECT_TRUE(verify(c).ok);
  c.start = MarkedSSet::from_edges(x, {e(0, 1)});
  EXPECT_FALSE(verify(c).ok);
}

TEST(Filtration, ClassifyExamples) {
  // the chain (0,0) (0,1) (1,1) (1,2) in Δ¹ ⊗ Δ²
  OrdinalMap f(1, {0, 0, 1, 1}), g(2, {0, 1, 1, 2});
  auto t = classify(f, g, 1, 2, 1);
  EXPECT_TRUE(t.full);
  EXPECT_TRUE(t.special);  // min g⁻¹(1) = 1 and max g⁻¹(0) = 0 share f = 0
  EXPECT_EQ(t.index, 4 - 2 - 2);
  OrdinalMap g2(2, {0, 0, 1, 2});
  auto u = classify(f, g2, 1, 2, 1);
  EXPECT_TRUE(u.full);
  EXPECT_FALSE(u.special);  // min g⁻¹(1) = 2 has f = 1, max g⁻¹(0) = 1 has f = 0
  EXPECT_FALSE(classify(OrdinalMap(1, {0, 0}), OrdinalMap(2, {0, 1}), 1, 2, 1).full);
}

TEST(Filtration, AllSmallCasesVerify) {
  for (std::size_t m = 0; m <= 3; ++m)
    for (std::size_t n = 2; n <= 3; ++n)
      for (std::size_t l = 0; l <= n; ++l) {
        auto c = shuffle_filtration(m, n, l);
        EXPECT_EQ(c.steps.size(), special_census(m, n, l == 0 ? n : l));
        auto r = verify(c);
        EXPECT_TRUE(r.ok) << m << n << l << ": " << r.clause;
      }
}

TEST(Filtration, OuterStepAtTopVertex) {
  auto c = shuffle_filtration(1, 2, 2);
  auto r = verify(c);
  ASSERT_TRUE(r.ok);
  bool outer = false;
  for (const auto& h : r.horns)
    if (h.v == h.k) {
      outer = true;
      EXPECT_EQ(h.marking, (std::vector<std::pair<std::size_t, std::size_t>>{{h.k - 1, h.k}}));
    }
  EXPECT_TRUE(outer);
}

TEST(Filtration, RegularSimplicesAreHornFaces) {
  // every full non-special simplex is the missing face of exactly one special one
  for (std::size_t m = 1; m <= 3; ++m)
    for (std::size_t n = 2; n <= 3; ++n)
      for (std::size_t l = 1; l <= n; ++l) {
        std::map<SimplexKey, int> hits;
        for (const auto& s : special_schedule(m, n, l)) ++hits[detail::drop(s.simplex, s.v)];
        std::size_t regular = 0;
        for (std::size_t k = 0; k <= m + n; ++k)
          for (const auto& chain : grid_chains(m, n, k)) {
            SimplexKey key;
            std::vector<std::size_t> a, b;
            for (auto [x, y] : chain) {
              key.push_back({static_cast<int>(x), static_cast<int>(y)});
              a.push_back(x);
              b.push_back(y);
            }
            auto t = classify(OrdinalMap(m, a), OrdinalMap(n, b), m, n, l);
            if (t.full && !t.special) {
              ++regular;
              EXPECT_EQ(hits[key], 1);
            }
          }
        EXPECT_EQ(regular, special_schedule(m, n, l).size());
      }
}

TEST(Filtration, OrderWithinBlocksIsIrrelevant) {
  std::mt19937_64 rng(11);
  for (auto [m, n, l] : {std::tuple<std::size_t, std::size_t, std::size_t>{2, 3, 2}, {3, 3, 1}, {3, 2, 2}}) {
    auto c = shuffle_filtration(m, n, l);
    std::vector<std::pair<std::size_t, long>> block;
    for (const auto& s : c.steps) {
      auto [f, g] = detail::projections(std::get<HornStep>(s).simplex, m, n);
      block.emplace_back(f.domain_size(), classify(f, g, m, n, l).index);
    }
    for (int trial = 0; trial < 5; ++trial) {
      auto shuffled = c;
      std::size_t begin = 0;
      while (begin < block.size()) {
        std::size_t end = begin;
        while (end < block.size() && block[end] == block[begin]) ++end;
        std::shuffle(shuffled.steps.begin() + static_cast<std::ptrdiff_t>(begin),
                     shuffled.steps.begin() + static_cast<std::ptrdiff_t>(end), rng);
        begin = end;
      }
      auto r = verify(shuffled);
      EXPECT_TRUE(r.ok) << m << n << l << ": " << r.clause;
    }
  }
}

TEST(Sections, SixteenPairsConnected) {
  auto g = section_pair_graph(OrdinalMap(1, {0, 0, 1, 1}));
  EXPECT_EQ(g.nodes.size(), 16u);
  EXPECT_TRUE(g.connected);
}

TEST(Sections, AllSurjectionsConnected) {
  for (std::size_t m = 0; m <= 4; ++m)
    for (std::size_t n = 0; n <= m; ++n)
      for (const auto& f : enumerate_maps(m, n, MapClass::surjective)) {
        auto g = section_pair_graph(f);
        std::size_t sections = 1;
        for (std::size_t i = 0; i <= n; ++i) sections *= f.fiber(i).size();
        EXPECT_EQ(g.nodes.size(), sections * sections);
        EXPECT_TRUE(g.connected);
      }
}

TEST(Sections, ExtremePairIsMarkedSpine) {
  for (std::size_t m = 1; m <= 4; ++m)
    for (std::size_t n = 0; n <= m; ++n)
      for (const auto& f : enumerate_maps(m, n, MapClass::surjective))
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
          std::set<std::size_t> M;
          for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1u) M.insert(i);
          auto [hmax, hmin] = extreme_sections(f);
          EXPECT_EQ(labelled_shape(build_T(hmax, hmin, f, M)), labelled_shape(spine_with_marking(f, M)));
        }
}

TEST(Sections, InducedMarkingIsExplicit) {
  // fibre edges and the connecting edges over marked spine edges, nothing else
  for (std::size_t m = 1; m <= 4; ++m)
    for (std::size_t n = 1; n <= m; ++n)
      for (const auto& f : enumerate_maps(m, n, MapClass::surjective)) {
        auto secs = sections_of(f);
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
          std::set<std::size_t> M;
          for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1u) M.insert(i);
          for (const auto& h1 : secs)
            for (const auto& h2 : secs) {
              auto t = build_T(h1, h2, f, M);
              std::set<SimplexKey> expected;
              for (std::size_t j = 0; j < m; ++j)
                if (f(j) == f(j + 1)) expected.insert(SimplexKey{Label{static_cast<int>(j)}, Label{static_cast<int>(j + 1)}});
              for (auto i : M) expected.insert(SimplexKey{Label{static_cast<int>(h1(i))}, Label{static_cast<int>(h2(i + 1))}});
              EXPECT_EQ(labelled_shape(t).marked, expected);
            }
        }
      }
}
