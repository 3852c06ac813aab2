#include <gtest/gtest.h>

#include "qucat/nucat.hpp"

using namespace qucat;

namespace {

// Associative multiplication tables on {0..n-1}, by trying every table.
std::size_t brute_semigroups(std::size_t n) {
  if (n == 0) return 1;
  const std::size_t cells = n * n;
  std::vector<std::size_t> t(cells, 0);
  std::size_t count = 0;
  for (;;) {
    bool assoc = true;
    for (std::size_t a = 0; a < n && assoc; ++a)
      for (std::size_t b = 0; b < n && assoc; ++b)
        for (std::size_t c = 0; c < n && assoc; ++c)
          assoc = t[t[a * n + b] * n + c] == t[a * n + t[b * n + c]];
    count += assoc;
    std::size_t i = 0;
    while (i < cells && ++t[i] == n) t[i++] = 0;
    if (i == cells) break;
  }
  return count;
}

std::size_t composable_strings(const NuCat& c, std::size_t k) {
  if (k == 0) return c.object_count();
  std::vector<std::size_t> ending(c.morphism_count(), 1);  // strings of length 1 ending at each morphism
  for (std::size_t len = 2; len <= k; ++len) {
    std::vector<std::size_t> next(c.morphism_count(), 0);
    for (std::size_t g = 0; g < c.morphism_count(); ++g)
      for (std::size_t f = 0; f < c.morphism_count(); ++f)
        if (c.composable(g, f)) next[g] += ending[f];
    ending = next;
  }
  std::size_t total = 0;
  for (auto e : ending) total += e;
  return total;
}

std::vector<std::vector<bool>> chain_order(std::size_t n) {
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) leq[x][y] = x <= y;
  return leq;
}

// Exactly one morphism between any two objects.
NuCat codiscrete(std::size_t n) {
  std::vector<std::string> objs;
  std::vector<Morphism> ms;
  for (std::size_t x = 0; x < n; ++x) {
    objs.push_back(std::to_string(x));
    for (std::size_t y = 0; y < n; ++y) ms.push_back({std::to_string(x) + std::to_string(y), x, y});
  }
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> comp;
  for (std::size_t f = 0; f < ms.size(); ++f)
    for (std::size_t g = 0; g < ms.size(); ++g)
      if (ms[f].tgt == ms[g].src) comp[{g, f}] = ms[f].src * n + ms[g].tgt;
  return NuCat(objs, ms, comp);
}

}  // namespace

TEST(NuCat, RejectsMissingOrMistypedComposites) {
  std::vector<Morphism> ms{{"f", 0, 1}, {"g", 1, 1}};
  EXPECT_THROW(NuCat({"x", "y"}, ms, {}), InvalidInput);
  EXPECT_THROW(NuCat({"x", "y"}, ms, {{{1, 0}, 1}, {{1, 1}, 1}}), InvalidInput);
  EXPECT_NO_THROW(NuCat({"x", "y"}, ms, {{{1, 0}, 0}, {{1, 1}, 1}}));
}

TEST(NuCat, DetectsNonAssociativity) {
  auto c = monoid_category({{1, 0}, {0, 1}}, {"x", "y"});
  EXPECT_TRUE(c.is_associative());
  auto bad = monoid_category({{1, 1}, {0, 0}}, {"x", "y"});
  auto v = bad.associativity_violations();
  ASSERT_FALSE(v.empty());
  const auto [h, g, f] = std::tuple{v[0].h, v[0].g, v[0].f};
  EXPECT_NE(bad.compose(bad.compose(h, g), f), bad.compose(h, bad.compose(g, f)));
}

TEST(NuCat, Groups) {
  for (std::size_t n = 1; n <= 5; ++n) {
    auto g = cyclic_group(n);
    EXPECT_EQ(invertibles(g).size(), n);
    EXPECT_EQ(quasi_units(g), std::vector<std::size_t>{0});
    EXPECT_TRUE(is_quasi_unital(g));
    EXPECT_TRUE(check_l_qu_inv(g).empty());
  }
}

TEST(NuCat, NullSemigroup) {
  auto c = null_semigroup();
  EXPECT_TRUE(c.is_associative());
  EXPECT_TRUE(invertibles(c).empty());
  EXPECT_TRUE(quasi_units(c).empty());
  EXPECT_FALSE(is_quasi_unital(c));
  EXPECT_TRUE(check_l_qu_inv(c).empty());
}

TEST(NuCat, PosetsHaveIdentitiesAsInvertibles) {
  for (const auto& p : poset_corpus(3)) {
    auto inv = invertibles(p);
    EXPECT_EQ(inv, quasi_units(p));
    EXPECT_EQ(inv.size(), p.object_count());
    EXPECT_TRUE(is_gaunt(p));
  }
}

TEST(Nerve, Counts) {
  NuCat empty({}, {}, {});
  auto e = nerve(empty, 3);
  for (std::size_t k = 0; k <= 3; ++k) EXPECT_EQ(e.level_size(k), 0u);
  auto id = nerve(idempotent(), 3);
  for (std::size_t k = 0; k <= 3; ++k) EXPECT_EQ(id.level_size(k), 1u);
  auto p = nerve(chain_category(2), 4);
  for (std::size_t k = 0; k <= 4; ++k) EXPECT_EQ(p.level_size(k), k + 2);
}

TEST(Nerve, MatchesStringsAndValidates) {
  std::size_t seen = 0;
  for_each_nucat(2, 2, [&](const NuCat& c) {
    if (++seen % 7 != 0) return true;
    auto x = nerve(c, 3);
    EXPECT_TRUE(validate(x).empty());
    for (std::size_t k = 0; k <= 3; ++k) EXPECT_EQ(x.level_size(k), composable_strings(c, k));
    EXPECT_TRUE(segal_defect(x, 3).empty());
    auto back = category_from_sset(x);
    for (std::size_t g = 0; g < c.morphism_count(); ++g)
      for (std::size_t f = 0; f < c.morphism_count(); ++f)
        if (c.composable(g, f)) {
          EXPECT_EQ(back.compose(g, f), c.compose(g, f));
        }
    return true;
  });
  EXPECT_GT(seen, 0u);
}

TEST(Segal, Examples) {
  EXPECT_TRUE(segal_defect(coskeleton0(2, 3), 3).empty());
  auto d = segal_defect(boundary(2), 2);
  ASSERT_FALSE(d.empty());
  EXPECT_EQ(d[0].n, 1u);
  EXPECT_EQ(d[0].m, 1u);
  EXPECT_FALSE(d[0].surjective);
  EXPECT_THROW(category_from_sset(boundary(2, 3)), InvalidInput);
}

TEST(Corpus, OneObjectMatchesBruteForce) {
  std::size_t expected = 0;
  for (std::size_t n = 0; n <= 3; ++n) expected += brute_semigroups(n);
  std::size_t got = 0;
  for_each_nucat(1, 3, [&](const NuCat& c) {
    got += c.object_count() == 1;
    return true;
  });
  EXPECT_EQ(got, expected);
  EXPECT_EQ(brute_semigroups(2), 8u);
  EXPECT_EQ(brute_semigroups(3), 113u);
}

TEST(Corpus, TwoObjectsThinTables) {
  // with hom-sets of size <= 1 a shape has one table if every composite has
  // somewhere to land, and none otherwise
  std::size_t expected = 0;
  for (unsigned mask = 0; mask < 16; ++mask) {
    auto hom = [mask](unsigned x, unsigned y) { return (mask >> (2 * x + y) & 1u) != 0; };
    bool ok = true;
    for (unsigned x = 0; x < 2; ++x)
      for (unsigned y = 0; y < 2; ++y)
        for (unsigned z = 0; z < 2; ++z)
          if (hom(x, y) && hom(y, z) && !hom(x, z)) ok = false;
    expected += ok;
  }
  std::size_t two = 0;
  for_each_nucat(2, 1, [&](const NuCat& c) {
    two += c.object_count() == 2;
    EXPECT_TRUE(c.is_associative());
    return true;
  });
  EXPECT_EQ(two, expected);
}

TEST(Corpus, QuasiUnitTheory) {
  std::size_t total = 0, unital = 0;
  for_each_nucat(2, 2, [&](const NuCat& c) {
    ++total;
    EXPECT_TRUE(c.is_associative());
    EXPECT_TRUE(check_l_qu_inv(c).empty());
    EXPECT_TRUE(check_qu_connected(c).empty());
    auto w = marked_nerve(c, 3, MarkingRule::invertibles);
    EXPECT_EQ(closure_2of3(w), w);
    unital += is_quasi_unital(c);
    return true;
  });
  EXPECT_EQ(total, 3060u);
  EXPECT_EQ(unital, 340u);
}

TEST(Corpus, SamplesAreDeterministicAndAssociative) {
  auto a = sampled_corpus(42, 40, 3, 2);
  auto b = sampled_corpus(42, 40, 3, 2);
  ASSERT_EQ(a.size(), 40u);
  EXPECT_EQ(a, b);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_TRUE(a[i].is_associative());
    EXPECT_TRUE(check_l_qu_inv(a[i]).empty());
    EXPECT_TRUE(i % 2 == 1 || is_quasi_unital(a[i]));
  }
}

TEST(Functors, IdentityAndConstant) {
  auto g = cyclic_group(3);
  NuFunctor id{{0}, {0, 1, 2}};
  EXPECT_TRUE(functor_violations(id, g, g).empty());
  auto p = functor_preservation(id, g, g);
  EXPECT_TRUE(p.preserves_qu && p.preserves_inv);
  auto c = chain_category(3);
  NuFunctor constant{std::vector<std::size_t>(3, 0), std::vector<std::size_t>(c.morphism_count(), 0)};
  auto q = functor_preservation(constant, c, g);
  EXPECT_TRUE(q.preserves_qu && q.preserves_inv);
  EXPECT_THROW(functor_preservation(id, null_semigroup(), null_semigroup()), InvalidInput);
}

TEST(Functors, EnumerationMatchesBruteForce) {
  auto c = chain_category(2), d = poset_category(chain_order(3));
  std::size_t brute = 0;
  NuFunctor F;
  F.objects.assign(2, 0);
  F.morphisms.assign(c.morphism_count(), 0);
  for (std::size_t o = 0; o < 9; ++o) {
    F.objects = {o % 3, o / 3};
    std::size_t combos = 1;
    for (std::size_t m = 0; m < c.morphism_count(); ++m) combos *= d.morphism_count();
    for (std::size_t code = 0; code < combos; ++code) {
      std::size_t r = code;
      for (std::size_t m = 0; m < c.morphism_count(); ++m) {
        F.morphisms[m] = r % d.morphism_count();
        r /= d.morphism_count();
      }
      brute += functor_violations(F, c, d).empty();
    }
  }
  EXPECT_EQ(enumerate_functors(c, d).size(), brute);
}

TEST(Functors, QuasiUnitsAndInvertiblesPreservedTogether) {
  std::vector<NuCat> unital;
  for_each_nucat(2, 2, [&](const NuCat& c) {
    if (is_quasi_unital(c) && unital.size() < 60) unital.push_back(c);
    return true;
  });
  std::size_t checked = 0;
  for (std::size_t i = 0; i < unital.size(); ++i)
    for (std::size_t j = i; j < unital.size(); j += 7)
      for (const auto& F : enumerate_functors(unital[i], unital[j])) {
        auto p = functor_preservation(F, unital[i], unital[j]);
        EXPECT_EQ(p.preserves_qu, p.preserves_inv);
        ++checked;
      }
  EXPECT_GT(checked, 100u);
}

TEST(Equivalence, DkExamples) {
  auto c = chain_category(3);
  auto w = marked_nerve(c, 2, MarkingRule::invertibles);
  EXPECT_TRUE(is_dk_equivalence(SSetMap::identity(w.underlying()), w, w).equivalence);

  // the full subcategory on {0,2} of the chain misses the class of 1
  auto [sub, ids] = full_subcategory(c, {0, 2});
  auto ws = marked_nerve(sub, 2, MarkingRule::invertibles);
  NuFunctor inc{{0, 2}, ids};
  auto f = nerve_map(inc, sub, c, 2);
  auto r = is_dk_equivalence(f, ws, w);
  EXPECT_FALSE(r.equivalence);
  EXPECT_FALSE(r.failing_pair.has_value());

  // two isomorphic objects: the full subcategory on one of them is DK
  auto iso = codiscrete(2);
  auto wi = marked_nerve(iso, 2, MarkingRule::invertibles);
  EXPECT_EQ(eq_classes(wi), (std::vector<std::size_t>{0, 0}));
  auto [one, one_ids] = full_subcategory(iso, {1});
  auto w1 = marked_nerve(one, 2, MarkingRule::invertibles);
  auto g = nerve_map(NuFunctor{{1}, one_ids}, one, iso, 2);
  EXPECT_TRUE(is_dk_equivalence(g, w1, wi).equivalence);

  // the non-full inclusion of the discrete category on {0,1} into 0 < 1
  auto two = chain_category(2);
  auto disc = poset_category({{true, false}, {false, true}});
  auto wd = marked_nerve(disc, 2, MarkingRule::invertibles);
  auto w2 = marked_nerve(two, 2, MarkingRule::invertibles);
  NuFunctor j;
  j.objects = {0, 1};
  for (std::size_t m = 0; m < disc.morphism_count(); ++m) {
    const auto& mm = disc.morphism(m);
    j.morphisms.push_back(two.hom(mm.src, mm.tgt).front());
  }
  auto rj = is_dk_equivalence(nerve_map(j, disc, two, 2), wd, w2);
  EXPECT_FALSE(rj.equivalence);
  ASSERT_TRUE(rj.failing_pair.has_value());
  EXPECT_EQ(*rj.failing_pair, (std::pair<std::size_t, std::size_t>{0, 1}));
}

TEST(Completeness, Examples) {
  for (const auto& p : poset_corpus(3)) EXPECT_TRUE(is_complete_discrete(marked_nerve(p, 3, MarkingRule::invertibles)));
  auto g = marked_nerve(cyclic_group(3), 3, MarkingRule::invertibles);
  auto r = completeness_report(g);
  EXPECT_TRUE(r.precondition_violations.empty());
  EXPECT_FALSE(r.complete);
  auto sharp_chain = marked_nerve(chain_category(2), 3, MarkingRule::all);
  auto s = completeness_report(sharp_chain);
  EXPECT_FALSE(s.complete);
  EXPECT_FALSE(s.precondition_violations.empty());
}
