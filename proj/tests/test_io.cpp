#include <gtest/gtest.h>

#include "qucat/io.hpp"

using namespace qucat;
using io::Json;

TEST(Io, ObjectsRoundTrip) {
  for (const auto& w : {flat(standard(3)), sharp(horn(3, 0)), tensor(sharp(standard(1)), flat(standard(2))),
                        marked_nerve(cyclic_group(2), 3, MarkingRule::invertibles), flat(coskeleton0(2, 2))}) {
    auto back = io::marked_from_json(io::parse(io::to_json(w).dump(), "test"));
    EXPECT_EQ(back, w);
  }
}

TEST(Io, ArbitraryIdsAndDefaults) {
  // a single edge with ids chosen by hand and no labels
  auto j = Json::parse(R"({"truncation":1,"levels":[[10,20],[7]],"faces":{"7":[20,10]},"marking":[7]})");
  auto w = io::marked_from_json(j);
  EXPECT_EQ(w.underlying().level_size(0), 2u);
  EXPECT_EQ(w.marking_size(), 1u);
  EXPECT_TRUE(marked_isomorphic(w, sharp(standard(1))));
}

TEST(Io, MalformedObjectsAreRejected) {
  auto bad = [](const char* text) { return io::marked_from_json(Json::parse(text)); };
  EXPECT_THROW(bad(R"({"levels":[[0]]})"), InvalidInput);
  EXPECT_THROW(bad(R"({"truncation":1,"levels":[[0,1],[2]],"faces":{}})"), InvalidInput);
  EXPECT_THROW(bad(R"({"truncation":1,"levels":[[0,1],[2]],"faces":{"2":[1]}})"), InvalidInput);
  EXPECT_THROW(bad(R"({"truncation":1,"levels":[[0,1],[2]],"faces":{"2":[2,0]}})"), InvalidInput);
  EXPECT_THROW(bad(R"({"truncation":1,"levels":[[0,0]]})"), InvalidInput);
  EXPECT_THROW(bad(R"({"truncation":1,"levels":[[0,1],[2]],"faces":{"2":[1,0]},"marking":[0]})"), InvalidInput);
  EXPECT_THROW(io::parse("{", "x"), InvalidInput);
}

TEST(Io, CertificatesRoundTripAndStillVerify) {
  for (const auto& cert : {shuffle_filtration(1, 2, 2), shuffle_filtration(2, 2, 0), spread_decomposition(4, 1, 3)}) {
    auto back = io::certificate_from_json(io::parse(io::to_json(cert).dump(), "test"));
    EXPECT_EQ(back.steps, cert.steps);
    EXPECT_EQ(back.start, cert.start);
    EXPECT_TRUE(verify(back).ok);
  }
  auto j = io::to_json(shuffle_filtration(1, 2, 2));
  j["steps"][0]["v"] = 0;
  EXPECT_FALSE(verify(io::certificate_from_json(j)).ok);
  j["steps"][0]["kind"] = "glue";
  EXPECT_THROW(io::certificate_from_json(j), InvalidInput);
}

TEST(Io, CategoriesRoundTrip) {
  for (const auto& c : nucat_corpus(2, 1)) EXPECT_EQ(io::nucat_from_json(io::to_json(c)), c);
  for (const auto& c : {cyclic_group(3), chain_category(3), null_semigroup()}) {
    auto back = io::nucat_from_json(io::to_json(c));
    EXPECT_EQ(io::to_json(back), io::to_json(c));
  }
  EXPECT_THROW(io::nucat_from_json(Json::parse(R"({"objects":["x"],"homs":{"x,x":["a"]},"comp":{}})")), InvalidInput);
  EXPECT_THROW(io::nucat_from_json(Json::parse(R"({"objects":["x"],"homs":{"x,y":["a"]},"comp":{}})")), InvalidInput);
  EXPECT_THROW(io::nucat_from_json(Json::parse(R"({"objects":["x"],"homs":{"x,x":["a","a"]},"comp":{}})")),
               InvalidInput);
}

TEST(Io, HomologyProfile) {
  auto j = io::to_json(homology(boundary(2)));
  EXPECT_EQ(j.dump(), R"([{"k":0,"betti":1,"torsion":[]},{"k":1,"betti":1,"torsion":[]},{"k":2,"betti":0,"torsion":[]}])");
  EXPECT_EQ(io::big_to_json(BigInt(1) << 80).dump(), "\"1208925819614629174706176\"");
}

TEST(Io, MarkedMapsRoundTrip) {
  for (const auto& g : q_generators()) {
    auto back = io::marked_map_from_json(io::to_json(g.inclusion));
    EXPECT_EQ(back.map(), g.inclusion.map());
    EXPECT_EQ(back.source(), g.inclusion.source());
  }
}

TEST(Io, DotDrawsSourceToTarget) {
  auto dot = io::to_dot(marked_simplex(1, {{0, 1}}));
  EXPECT_NE(dot.find("v0 -> v1 [style=bold];"), std::string::npos);
  EXPECT_EQ(dot.find("v1 -> v0"), std::string::npos);
}
