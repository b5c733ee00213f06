#pragma once

#include <map>
#include <random>

#include "raminsep/localpoly.hpp"

namespace testsupport {

using namespace raminsep;

inline Series ser(const CtxPtr& f, std::map<std::int64_t, Elem> t, std::int64_t prec) { return Series::from_terms(f, t, prec); }

inline Elem nonzero(const CtxPtr& f, std::mt19937_64& rng) { return static_cast<Elem>(1 + rng() % (f->q() - 1)); }

// Random X^p + a_1 X^{p-1} + ... + a_{p-1} X - t with break b: v(a_k) >= f_k and c_{b,b} != 0
// chosen so the leading Artin-Schreier condition holds.
inline EisensteinPoly random_degree_p(const CtxPtr& f, std::int64_t b, std::mt19937_64& rng, std::int64_t prec) {
  const std::int64_t p = f->p();
  std::vector<Series> c(static_cast<std::size_t>(p + 1), exact_zero(f));
  c[0] = Series::monomial(f, f->neg(1), 1, kExactPrec);
  c[static_cast<std::size_t>(p)] = exact_const(f, 1);
  const std::int64_t b1 = (b - 1) / p, b0 = b - b1 * p;
  for (std::int64_t k = 1; k < p; ++k) {
    std::map<std::int64_t, Elem> t;
    const std::int64_t lo = EisensteinPoly::f_bound(k, b, p, p);
    for (std::int64_t e = lo; e < prec; ++e)
      if (rng() % 2) t[e] = static_cast<Elem>(rng() % f->q());
    if (k == b0) {
      // c_{b,b}^p = 1 / (b x^{p-1}) makes X - b c^p X^p split over the residue field.
      const Elem x = nonzero(f, rng);
      const Elem cp = f->inv(f->mul(f->from_int(b), f->pow(x, p - 1)));
      t[b - b1] = f->frob(cp, f->m() - 1);
    }
    c[static_cast<std::size_t>(p - k)] = ser(f, t, prec);
  }
  return EisensteinPoly(KPoly(std::move(c)));
}

// t as a series in pi from g(pi) = 0 by fixed-point iteration on
// t = pi^n + sum_{k<n} a_k(t) pi^{n-k}.
inline Series t_in_pi(const EisensteinPoly& g, std::int64_t prec) {
  const auto& f = g.ctx();
  const std::int64_t n = g.n();
  Series t = Series::monomial(f, 1, n, prec, "pi");
  for (std::int64_t it = 0; it < prec; ++it) {
    Series next = Series::monomial(f, 1, n, prec, "pi");
    for (std::int64_t k = 1; k < n; ++k) {
      const Series ak = g.poly()[static_cast<std::size_t>(n - k)];
      if (ak.is_zero() && ak.prec() >= kExactPrec) continue;
      next = next + (compose(ak.truncate(prec), t) * Series::monomial(f, 1, n - k, prec, "pi")).truncate(prec);
    }
    if (next == t) break;
    t = next;
  }
  return t;
}

}  // namespace testsupport
