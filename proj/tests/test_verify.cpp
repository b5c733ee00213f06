#include <gtest/gtest.h>

#include "raminsep/verify.hpp"

using namespace raminsep;

TEST(Verify, SweepPasses) {
  for (auto [p, m, nu] : {std::tuple{2u, 1, 1}, std::tuple{3u, 2, 2}, std::tuple{2u, 3, 3}}) {
    const json r = sweep(p, m, nu, 5, 4, 11);
    EXPECT_EQ(r["failed"], 0) << r.dump(2);
    EXPECT_EQ(r["passed"], 4);
  }
}

TEST(Verify, SweepIsDeterministic) {
  EXPECT_EQ(sweep(3, 2, 1, 7, 3, 2).dump(), sweep(3, 2, 1, 7, 3, 2).dump());
  EXPECT_NE(sweep(3, 2, 1, 7, 3, 2).dump(), sweep(3, 2, 1, 7, 3, 3).dump());
}

TEST(Verify, BundleRoundTrip) {
  const auto f = FieldCtx::make(3, 2);
  std::mt19937_64 rng(9);
  const ASData d = random_as_data(f, 2, 4, rng);
  const BuildResult r = build(d);
  const InstanceBundle x = make_bundle(d, r, 9);
  const json j = x;
  const auto y = j.get<InstanceBundle>();
  EXPECT_EQ(json(y).dump(), j.dump());
  const ASData d2 = as_data(y);
  ASSERT_EQ(d2.betas.size(), d.betas.size());
  for (std::size_t i = 0; i < d.betas.size(); ++i) EXPECT_EQ(d2.betas[i], d.betas[i]);
  const auto g = EisensteinPoly(parse_poly(y.ctx(), y.minpoly));
  EXPECT_EQ(indices_from_minpoly(g).i, x.indices);
  EXPECT_TRUE(check_instance(d2, build(d2), false).ok());
}

TEST(Verify, JsonForms) {
  const auto f = FieldCtx::make(2, 1);
  const IndexVector iv{1, {1, 0}};
  EXPECT_EQ(to_json(iv, 2).dump(), R"({"nu":1,"indices":[1,0],"break":1})");
}
