#include <gtest/gtest.h>

#include "qucat/oracles.hpp"
#include "qucat/sset.hpp"

using namespace qucat;

namespace {

std::vector<std::size_t> sizes(const SSet& x) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k <= x.truncation(); ++k) out.push_back(x.level_size(k));
  return out;
}

bool is_sub(const SSet& small, const SSet& big) {
  for (std::size_t k = 0; k <= small.dimension(); ++k)
    for (std::size_t s = 0; s < small.level_size(k); ++s)
      if (!big.find_by_key(small.key(k, s))) return false;
  return true;
}

}  // namespace

TEST(SSet, StandardComplexSizes) {
  EXPECT_EQ(sizes(standard(2)), (std::vector<std::size_t>{3, 3, 1}));
  EXPECT_EQ(sizes(horn(2, 1)), (std::vector<std::size_t>{3, 2, 0}));
  EXPECT_EQ(horn(2, 1), spine(2));
  EXPECT_EQ(sizes(boundary(3)), (std::vector<std::size_t>{4, 6, 4, 0}));
  for (std::size_t n = 1; n <= 6; ++n) {
    EXPECT_EQ(spine(n).level_size(1), n);
    EXPECT_EQ(spine(n).level_size(0), n + 1);
  }
  EXPECT_THROW(horn(3, 4), InvalidInput);
  EXPECT_THROW(sub_simplex(3, {}), InvalidInput);
}

TEST(SSet, SubcomplexChain) {
  for (std::size_t n = 2; n <= 5; ++n) {
    std::vector<std::size_t> all;
    for (std::size_t v = 0; v <= n; ++v) all.push_back(v);
    EXPECT_EQ(sub_simplex(n, all), standard(n));
    for (std::size_t i = 0; i <= n; ++i) {
      // Λ²₀ and Λ²₂ miss a spine edge; from n = 3 on every edge lies in a facet through i
      EXPECT_EQ(is_sub(spine(n), horn(n, i)), n >= 3 || i == 1);
      EXPECT_TRUE(is_sub(horn(n, i), boundary(n)));
    }
    EXPECT_TRUE(is_sub(boundary(n), standard(n)));
  }
}

TEST(SSet, ValidateCatchesSwappedFace) {
  for (std::size_t n = 0; n <= 4; ++n) EXPECT_TRUE(validate(standard(n)).empty());
  auto levels = standard(3).levels();
  std::swap(levels[3][0][0], levels[3][0][1]);
  SSet bad(3, true, levels, {});
  auto report = validate(bad);
  ASSERT_FALSE(report.empty());
  EXPECT_EQ(report.front().dim, 3u);
  EXPECT_EQ(report.front().index, 0u);
  EXPECT_LT(report.front().i, report.front().j);
}

TEST(SSet, RejectsDanglingFace) {
  EXPECT_THROW(SSet(1, true, {SSet::Level{{}, {}}, SSet::Level{{0, 5}}}, {}), InvalidInput);
}

TEST(SSet, MapEnumerationMatchesBruteForce) {
  auto x = standard(3);
  EXPECT_EQ(enumerate_maps(standard(0), x).size(), 4u);
  EXPECT_EQ(enumerate_maps(standard(1), standard(1)).size(), 1u);
  EXPECT_EQ(enumerate_maps(spine(2), standard(2)).size(), oracle::count_maps_brute(spine(2), standard(2)));
  EXPECT_EQ(enumerate_maps(spine(2), standard(2)).size(), 1u);
  EXPECT_EQ(enumerate_maps(spine(2), coskeleton0(2, 2)).size(),
            oracle::count_maps_brute(spine(2), coskeleton0(2, 2)));
  EXPECT_EQ(enumerate_maps(boundary(2), coskeleton0(2, 2)).size(),
            oracle::count_maps_brute(boundary(2), coskeleton0(2, 2)));
  EXPECT_EQ(enumerate_maps(standard(1), horn(3, 1)).size(), oracle::count_maps_brute(standard(1), horn(3, 1)));
}

TEST(SSet, MapEnumerationClosedUnderComposition) {
  auto x = spine(2), y = boundary(2), z = coskeleton0(2, 2);
  auto xz = enumerate_maps(x, z);
  for (const auto& f : enumerate_maps(x, y))
    for (const auto& g : enumerate_maps(y, z)) {
      auto h = compose(f, g);
      EXPECT_NE(std::find(xz.begin(), xz.end(), h), xz.end());
    }
}

TEST(SSet, MapSearchBudget) {
  MapSearchOptions opts;
  opts.budget.max_nodes = 5;
  EXPECT_THROW(enumerate_maps(standard(2), coskeleton0(3, 2), opts), ResourceError);
}

TEST(SSet, PushoutAlongIdentity) {
  auto x = standard(2);
  auto id = SSetMap::identity(x);
  auto po = pushout(id, id);
  EXPECT_EQ(po.object, x);
}

TEST(SSet, PushoutGluesEdgesIntoSpine) {
  auto e = standard(1);
  auto pt = standard(0);
  SSetMap to_target(pt, e, {{1}});
  SSetMap to_source(pt, e, {{0}});
  auto po = pushout(to_source, to_target);
  EXPECT_TRUE(validate(po.object).empty());
  EXPECT_TRUE(isomorphic(po.object.with_labels({}), spine(2).with_labels({})));
}

TEST(SSet, PushoutFillsHorn) {
  auto h = horn(2, 1);
  auto d = standard(2);
  // inclusion by vertex labels
  SSetMap::Levels incl(3);
  for (std::size_t k = 0; k <= 2; ++k)
    for (std::size_t s = 0; s < h.level_size(k); ++s) incl[k].push_back(*d.find_by_key(h.key(k, s)));
  SSetMap i(h, d, incl);
  auto po = pushout(i, SSetMap::identity(spine(2)));
  EXPECT_TRUE(validate(po.object).empty());
  EXPECT_TRUE(isomorphic(po.object, d));
}

TEST(SSet, PushoutRejectsNonInjective) {
  auto e = boundary(1);
  auto pt = standard(0);
  SSetMap collapse(e, pt, {{0, 0}, {}});
  EXPECT_THROW(pushout(collapse, collapse), InvalidInput);
}

TEST(SSet, Coskeleton) {
  auto c = coskeleton0(1, 3);
  EXPECT_EQ(sizes(c), (std::vector<std::size_t>{1, 1, 1, 1}));
  EXPECT_EQ(sizes(coskeleton0(2, 2)), (std::vector<std::size_t>{2, 4, 8}));
  EXPECT_TRUE(validate(coskeleton0(3, 3)).empty());
  EXPECT_FALSE(c.finite());
  EXPECT_THROW(c.level_size(4), ResourceError);
}

TEST(SSet, Isomorphism) {
  EXPECT_FALSE(isomorphic(horn(3, 0), horn(3, 3)));
  EXPECT_TRUE(isomorphic(standard(3), standard(3)));
  EXPECT_FALSE(isomorphic(horn(3, 1), horn(3, 0)));
  EXPECT_TRUE(isomorphic(horn(4, 1), horn(4, 1).with_labels({{9}, {8}, {7}, {6}, {5}})));
}

TEST(SSet, RestrictFollowsFaces) {
  auto d = standard(4);
  for (std::size_t s = 0; s < d.level_size(4); ++s)
    for (const auto& h : enumerate_maps(2, 4, MapClass::injective)) {
      auto t = d.restrict(4, s, h);
      std::vector<std::size_t> want(h.values().begin(), h.values().end());
      EXPECT_EQ(d.vertices(2, t), want);
    }
}
