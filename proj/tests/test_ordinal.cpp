#include <gtest/gtest.h>

#include <set>

#include "qucat/ordinal.hpp"

using namespace qucat;

TEST(Ordinal, ComposeIdentity) {
  auto id = OrdinalMap::identity(2);
  EXPECT_EQ(compose(id, id), id);
}

TEST(Ordinal, ComposeCofaces) {
  auto d0 = OrdinalMap::coface(1, 0);  // [0] -> [1], 0 |-> 1
  auto d1 = OrdinalMap::coface(2, 1);  // [1] -> [2], skips 1
  EXPECT_EQ(compose(d0, d1), OrdinalMap(2, {2}));
  EXPECT_EQ(compose(OrdinalMap(1, {1}), OrdinalMap(2, {0, 1})), OrdinalMap(2, {1}));
}

TEST(Ordinal, ComposeRejectsMismatch) {
  EXPECT_THROW(compose(OrdinalMap::identity(1), OrdinalMap::identity(2)), InvalidInput);
}

TEST(Ordinal, ComposeTableMatchesPointwise) {
  for (const auto& f : enumerate_maps(1, 2, MapClass::all))
    for (const auto& g : enumerate_maps(2, 1, MapClass::all)) {
      auto h = compose(f, g);
      for (std::size_t i = 0; i <= 1; ++i) EXPECT_EQ(h(i), g.values()[f.values()[i]]);
    }
}

TEST(Ordinal, CompositionAssociative) {
  for (std::size_t a = 0; a <= 3; ++a)
    for (std::size_t b = 0; b <= 3; ++b)
      for (std::size_t c = 0; c <= 3; ++c)
        for (std::size_t d = 0; d <= 3; ++d)
          for (const auto& f : enumerate_maps(a, b, MapClass::all))
            for (const auto& g : enumerate_maps(b, c, MapClass::all))
              for (const auto& h : enumerate_maps(c, d, MapClass::all))
                ASSERT_EQ(compose(compose(f, g), h), compose(f, compose(g, h)));
}

TEST(Ordinal, EnumerationCounts) {
  EXPECT_EQ(enumerate_maps(1, 2, MapClass::injective).size(), 3u);
  EXPECT_EQ(enumerate_maps(2, 1, MapClass::surjective).size(), 2u);
  for (std::size_t n = 0; n <= 5; ++n) EXPECT_EQ(enumerate_maps(0, n, MapClass::all).size(), n + 1);
  for (std::size_t m = 0; m <= 6; ++m)
    for (std::size_t n = 0; n <= 6; ++n) {
      EXPECT_EQ(enumerate_maps(m, n, MapClass::injective).size(), binomial(n + 1, m + 1));
      EXPECT_EQ(enumerate_maps(m, n, MapClass::all).size(), binomial(n + m + 1, m + 1));
    }
}

TEST(Ordinal, EnumerationIsLexicographicAndClassified) {
  auto maps = enumerate_maps(3, 3, MapClass::all);
  for (std::size_t i = 1; i < maps.size(); ++i) EXPECT_LT(maps[i - 1].values(), maps[i].values());
  for (const auto& f : maps) {
    std::set<std::size_t> vals(f.values().begin(), f.values().end());
    EXPECT_EQ(f.is_injective(), vals.size() == 4);
    EXPECT_EQ(f.is_surjective(), vals.size() == 4);
  }
}

TEST(Ordinal, RejectsNonMonotone) {
  EXPECT_THROW(OrdinalMap(2, {1, 0}), InvalidInput);
  EXPECT_THROW(OrdinalMap(1, {0, 2}), InvalidInput);
}

TEST(Ordinal, Sections) {
  EXPECT_EQ(sections_of(OrdinalMap::identity(3)).size(), 1u);
  EXPECT_EQ(sections_of(OrdinalMap(1, {0, 0, 1})).size(), 2u);
  EXPECT_EQ(sections_of(OrdinalMap(1, {0, 0, 1, 1})).size(), 4u);
  EXPECT_THROW(sections_of(OrdinalMap(2, {0, 0, 1})), InvalidInput);
  for (std::size_t m = 0; m <= 5; ++m)
    for (std::size_t n = 0; n <= m; ++n)
      for (const auto& f : enumerate_maps(m, n, MapClass::surjective)) {
        std::size_t expected = 1;
        for (std::size_t y = 0; y <= n; ++y) expected *= f.fiber(y).size();
        auto secs = sections_of(f);
        ASSERT_EQ(secs.size(), expected);
        for (const auto& h : secs) EXPECT_EQ(compose(h, f), OrdinalMap::identity(n));
      }
}

TEST(Ordinal, Shuffles) {
  EXPECT_EQ(enumerate_shuffles(1, 1, 2).size(), 2u);
  EXPECT_EQ(enumerate_shuffles(3, 0, 3).size(), 1u);
  EXPECT_EQ(enumerate_shuffles(2, 1, 3).size(), 3u);
  for (std::size_t n = 0; n <= 4; ++n)
    for (std::size_t m = 0; m <= 4; ++m) {
      EXPECT_EQ(enumerate_shuffles(n, m, n + m).size(), binomial(n + m, n));
      for (std::size_t k = 0; k <= n + m + 1; ++k)
        for (const auto& s : enumerate_shuffles(n, m, k)) {
          EXPECT_TRUE(s.first().is_surjective());
          EXPECT_TRUE(s.second().is_surjective());
        }
    }
}

TEST(Ordinal, ShuffleRejectsBadChains) {
  EXPECT_THROW(Shuffle(1, 1, {{0, 0}, {0, 0}, {1, 1}}), InvalidInput);
  EXPECT_THROW(Shuffle(1, 1, {{0, 0}, {1, 0}}), InvalidInput);
}
