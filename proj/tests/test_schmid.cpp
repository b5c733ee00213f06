#include <gtest/gtest.h>

#include <random>

#include "raminsep/exp.hpp"
#include "raminsep/schmid.hpp"
#include "support.hpp"

using namespace raminsep;
using testsupport::ser;

namespace {

constexpr std::int64_t kN = 20;

Series random_beta(const CtxPtr& f, std::mt19937_64& rng) {
  std::map<std::int64_t, Elem> t;
  for (std::int64_t e = -6; e <= 2; ++e) t[e] = static_cast<Elem>(rng() % f->q());
  return ser(f, t, kN);
}

Series random_unit(const CtxPtr& f, std::mt19937_64& rng) {
  std::map<std::int64_t, Elem> t{{0, testsupport::nonzero(f, rng)}};
  for (std::int64_t e = 1; e < 2 * kN; ++e) t[e] = static_cast<Elem>(rng() % f->q());
  return ser(f, t, 2 * kN);
}

Series random_eta(const CtxPtr& f, std::mt19937_64& rng) { return random_unit(f, rng) * Series::monomial(f, 1, static_cast<std::int64_t>(rng() % 5) - 2, kExactPrec); }

}  // namespace

TEST(Schmid, Examples) {
  auto f2 = FieldCtx::make(2, 1);
  EXPECT_EQ(pairing(Series::monomial(f2, 1, -1, kExactPrec), ser(f2, {{0, 1}, {1, 1}}, kN)), 1u);
  EXPECT_EQ(pairing(Series::monomial(f2, 1, -2, kExactPrec), ser(f2, {{0, 1}, {1, 1}}, kN)), 1u);
  EXPECT_EQ(pairing(Series::monomial(f2, 1, -1, kExactPrec), ser(f2, {{0, 1}, {2, 1}}, kN)), 0u);
  auto f4 = FieldCtx::make(2, 2);
  // [c, t) = Tr(c).
  for (Elem c = 0; c < 4; ++c) EXPECT_EQ(pairing(Series::constant(f4, c, kN), Series::monomial(f4, 1, 1, kN)), f4->trace(c));
}

TEST(Schmid, ArtinHasseGenerators) {
  // [x t^-j, E(c t^k)) = Tr(k x c^{p^i}) when j = k p^i, else 0.
  for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {5, 1}}) {
    auto f = FieldCtx::make(p, m);
    for (std::int64_t k = 1; k <= 6; ++k) {
      if (k % p == 0) continue;
      for (std::int64_t j = 1; j <= 12; ++j)
        for (Elem x = 1; x < f->q(); x += 2)
          for (Elem c = 1; c < f->q(); c += 3) {
            Elem expect = 0;
            for (std::int64_t pi = 1, i = 0; k * pi <= j; pi *= p, ++i)
              if (k * pi == j) expect = f->mul(f->from_int(k), f->mul(x, f->frob(c, i)));
            const Series eta = e_eval(Series::monomial(f, c, k, kN));
            EXPECT_EQ(pairing(Series::monomial(f, x, -j, kExactPrec), eta), f->trace(expect));
          }
    }
  }
}

TEST(Schmid, BilinearAndKernels) {
  std::mt19937_64 rng(33);
  for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {5, 1}}) {
    auto f = FieldCtx::make(p, m);
    for (int trial = 0; trial < 100; ++trial) {
      const Series b1 = random_beta(f, rng), b2 = random_beta(f, rng);
      const Series e1 = random_eta(f, rng), e2 = random_eta(f, rng);
      EXPECT_EQ(pairing(b1 + b2, e1), (pairing(b1, e1) + pairing(b2, e1)) % p);
      EXPECT_EQ(pairing(b1, e1 * e2), (pairing(b1, e1) + pairing(b1, e2)) % p);
      EXPECT_EQ(pairing(b1.frobenius_power() - b1, e1), 0u);
      EXPECT_EQ(pairing(b1, e1.frobenius_power()), 0u);
    }
  }
}

TEST(Schmid, Matrix) {
  auto f3 = FieldCtx::make(3, 1);
  const std::vector<Series> betas{Series::monomial(f3, 1, -1, kExactPrec), Series::monomial(f3, 1, -2, kExactPrec)};
  const std::vector<Series> etas{e_eval(Series::monomial(f3, 1, 1, kN)), e_eval(Series::monomial(f3, 1, 2, kN)), Series::monomial(f3, 1, 1, kN)};
  EXPECT_EQ(pairing_matrix(betas, etas), (FpMatrix{{1, 0, 0}, {0, 2, 0}}));
  EXPECT_THROW(pairing(betas[0], Series(f3, kN)), MathError);
}
