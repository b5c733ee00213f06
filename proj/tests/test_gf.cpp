#include <gtest/gtest.h>

#include <set>

#include "raminsep/gf.hpp"

using namespace raminsep;

namespace {

// Schoolbook multiplication of coordinate vectors modulo the field modulus.
Elem naive_mul(const FieldCtx& f, Elem x, Elem y) {
  const int m = f.m();
  const std::uint32_t p = f.p();
  auto a = f.coords(x), b = f.coords(y);
  std::vector<std::uint64_t> prod(2 * m, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + std::uint64_t(a[i]) * b[j]) % p;
  const auto& mod = f.modulus();
  for (int d = 2 * m - 1; d >= m; --d) {
    const std::uint64_t c = prod[d];
    for (int i = 0; i <= m; ++i) prod[d - m + i] = (prod[d - m + i] + (p - c) * mod[i]) % p;
  }
  std::vector<std::uint32_t> r(prod.begin(), prod.begin() + m);
  return f.from_coords(r);
}

}  // namespace

TEST(Field, DeterministicModulus) {
  EXPECT_EQ(FieldCtx::make(2, 2)->modulus(), (std::vector<std::uint32_t>{1, 1, 1}));
  EXPECT_EQ(FieldCtx::make(3, 2)->modulus(), (std::vector<std::uint32_t>{1, 0, 1}));
  // Over F_2 in degree 3 the list (1,0,1,1), i.e. x^3+x^2+1, precedes (1,1,0,1).
  EXPECT_EQ(FieldCtx::make(2, 3)->modulus(), (std::vector<std::uint32_t>{1, 0, 1, 1}));
}

TEST(Field, ModulusOverride) {
  auto f = FieldCtx::make(2, 3, std::vector<std::uint32_t>{1, 1, 0, 1});
  EXPECT_EQ(f->modulus(), (std::vector<std::uint32_t>{1, 1, 0, 1}));
  EXPECT_THROW(FieldCtx::make(2, 2, std::vector<std::uint32_t>{1, 0, 1}), MathError);
  EXPECT_THROW(FieldCtx::make(4, 1), MathError);
}

TEST(Field, MultiplicationMatchesSchoolbook) {
  for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 1}, {2, 3}, {3, 2}, {5, 2}, {3, 3}, {2, 4}, {7, 1}}) {
    auto f = FieldCtx::make(p, m);
    for (Elem x = 0; x < f->q(); ++x)
      for (Elem y = 0; y < f->q(); ++y) {
        ASSERT_EQ(f->mul(x, y), naive_mul(*f, x, y));
        std::vector<std::uint32_t> s(m);
        auto a = f->coords(x), b = f->coords(y);
        for (int i = 0; i < m; ++i) s[i] = (a[i] + b[i]) % p;
        ASSERT_EQ(f->add(x, y), f->from_coords(s));
      }
  }
}

TEST(Field, FrobeniusExamples) {
  auto f4 = FieldCtx::make(2, 2);
  auto a = FieldElement::gen(f4);
  EXPECT_EQ(frobenius(a, 1), a + FieldElement::from_int(f4, 1));
  EXPECT_TRUE(frobenius(FieldElement(f4, 0), 5).is_zero());
  auto f9 = FieldCtx::make(3, 2);
  auto b = FieldElement::gen(f9);
  EXPECT_EQ(frobenius(b, 2), b);
}

TEST(Field, FrobeniusIsAutomorphism) {
  for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {5, 2}, {2, 4}}) {
    auto f = FieldCtx::make(p, m);
    std::set<Elem> image;
    for (Elem x = 0; x < f->q(); ++x) {
      FieldElement e(f, x);
      EXPECT_EQ(frobenius(frobenius(e, 1), -1), e);
      EXPECT_EQ(frobenius(e, -1).pow(p), e);
      image.insert(frobenius(e, 1).value());
      for (Elem y = 0; y < f->q(); y += 3) {
        FieldElement g(f, y);
        EXPECT_EQ(frobenius(e + g, 1), frobenius(e, 1) + frobenius(g, 1));
        EXPECT_EQ(frobenius(e * g, 1), frobenius(e, 1) * frobenius(g, 1));
      }
    }
    EXPECT_EQ(image.size(), f->q());
  }
}

TEST(Field, Trace) {
  auto f4 = FieldCtx::make(2, 2);
  EXPECT_EQ(trace_to_prime(FieldElement::gen(f4)), 1u);
  EXPECT_EQ(trace_to_prime(FieldElement(f4, 0)), 0u);
  auto f5 = FieldCtx::make(5, 1);
  EXPECT_EQ(trace_to_prime(FieldElement(f5, 3)), 3u);
  for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {5, 2}}) {
    auto f = FieldCtx::make(p, m);
    std::set<Elem> values;
    for (Elem x = 0; x < f->q(); ++x) {
      FieldElement e(f, x);
      values.insert(trace_to_prime(e));
      EXPECT_LT(trace_to_prime(e), static_cast<Elem>(p));
      EXPECT_EQ(trace_to_prime(frobenius(e, 1)), trace_to_prime(e));
      FieldElement g(f, (x * 7 + 1) % f->q());
      EXPECT_EQ(trace_to_prime(e + g), (trace_to_prime(e) + trace_to_prime(g)) % p);
    }
    EXPECT_EQ(values.size(), static_cast<std::size_t>(p));
  }
}

TEST(Field, WpComplement) {
  EXPECT_EQ(wp_complement(FieldCtx::make(2, 1)).value(), 1u);
  EXPECT_EQ(wp_complement(FieldCtx::make(3, 1)).value(), 1u);
  auto f4 = FieldCtx::make(2, 2);
  EXPECT_EQ(wp_complement(f4), FieldElement::gen(f4));
  for (auto [p, m] : std::vector<std::pair<int, int>>{{2, 2}, {2, 4}, {3, 2}, {5, 2}, {2, 6}, {3, 3}}) {
    auto f = FieldCtx::make(p, m);
    std::set<Elem> wp;
    std::size_t kernel = 0;
    for (Elem x = 0; x < f->q(); ++x) {
      FieldElement e(f, x);
      const auto w = frobenius(e, 1) - e;
      wp.insert(w.value());
      if (w.is_zero()) ++kernel;
    }
    EXPECT_EQ(kernel, static_cast<std::size_t>(p));
    EXPECT_EQ(wp.size() * p, f->q());
    const auto z = wp_complement(f);
    // Every element is uniquely w + c z with w in the image of x^p - x.
    std::set<Elem> sums;
    for (Elem w : wp)
      for (std::uint32_t c = 0; c < static_cast<std::uint32_t>(p); ++c) sums.insert(f->add(w, f->mul(c, z.value())));
    EXPECT_EQ(sums.size(), f->q());
  }
}

TEST(Field, Subfields) {
  auto f4 = FieldCtx::make(2, 2);
  EXPECT_EQ(subfield_elements(f4, 2)->size(), 4u);
  auto s1 = subfield_elements(f4, 1);
  ASSERT_TRUE(s1);
  ASSERT_EQ(s1->size(), 2u);
  EXPECT_EQ((*s1)[0].value(), 0u);
  EXPECT_EQ((*s1)[1].value(), 1u);
  EXPECT_FALSE(subfield_elements(FieldCtx::make(3, 2), 3));
  EXPECT_EQ(subfield_elements(FieldCtx::make(2, 6), 3)->size(), 8u);
}

TEST(Field, MooreSolve) {
  auto f2 = FieldCtx::make(2, 1);
  auto y = moore_solve({FieldElement(f2, 1)}, {FieldElement(f2, 1)}, 1);
  EXPECT_EQ(y[0].value(), 1u);
  auto f9 = FieldCtx::make(3, 2);
  const auto one = FieldElement(f9, 1), a = FieldElement::gen(f9);
  auto w = moore_solve({one, a}, {one, a}, 2);
  EXPECT_EQ(w[0].value(), 1u);
  EXPECT_EQ(w[1].value(), 0u);
  EXPECT_THROW(moore_solve({one, one}, {one, one}, 2), MathError);
}

TEST(Field, MooreSolveReproducesValuesOnSpan) {
  auto f = FieldCtx::make(2, 4);
  const int nu = 2;
  std::vector<FieldElement> pts{FieldElement(f, 3), FieldElement(f, 6)};
  std::vector<FieldElement> vals{FieldElement(f, 11), FieldElement(f, 5)};
  auto y = moore_solve(pts, vals, nu);
  auto apply = [&](const FieldElement& v) {
    FieldElement s(f, 0);
    for (int j = 0; j < nu; ++j) s = s + y[j] * frobenius(v, nu - j);
    return s;
  };
  // The additive map is F_p-linear, so it is determined on all combinations.
  for (int c0 = 0; c0 < 2; ++c0)
    for (int c1 = 0; c1 < 2; ++c1) {
      FieldElement v = FieldElement::from_int(f, c0) * pts[0] + FieldElement::from_int(f, c1) * pts[1];
      FieldElement expect = FieldElement::from_int(f, c0) * vals[0] + FieldElement::from_int(f, c1) * vals[1];
      EXPECT_EQ(apply(v), expect);
    }
}

TEST(Field, Printing) {
  auto f9 = FieldCtx::make(3, 2);
  const auto a = FieldElement::gen(f9);
  EXPECT_EQ((a * a + a + FieldElement::from_int(f9, 1)).to_string(), "a");  // a^2 = -1
  EXPECT_EQ((a + FieldElement::from_int(f9, 2)).to_string(), "a+2");
  EXPECT_EQ((a + a).to_string(), "2*a");
  auto f8 = FieldCtx::make(2, 3);
  const auto b = FieldElement::gen(f8);
  EXPECT_EQ((b * b + FieldElement::from_int(f8, 1)).to_string(), "a^2+1");
}
