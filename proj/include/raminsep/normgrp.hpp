#pragma once

// The norm group H = N(L^x) seen in the finite quotient
// W = U^1 / (U^1)^p U^{b+1}; the uniformizer t = N(pi_L) lies in H by convention.

#include <cstdint>
#include <optional>
#include <vector>

#include "raminsep/errors.hpp"
#include "raminsep/exp.hpp"
#include "raminsep/linalg.hpp"
#include "raminsep/localpoly.hpp"

namespace raminsep {

class WSubspace {
 public:
  WSubspace() = default;
  WSubspace(CtxPtr ctx, std::int64_t b, std::vector<WVector> gens) : ctx_(std::move(ctx)), b_(b), gens_(std::move(gens)) {
    FpMatrix rows;
    for (const auto& g : gens_) rows.push_back(g.coords());
    if (rows.empty()) rows.push_back(FpVec(static_cast<std::size_t>(dim()), 0));
    echelon_ = rref(rows, ctx_->p());
  }

  const CtxPtr& ctx() const noexcept { return ctx_; }
  std::int64_t b() const noexcept { return b_; }
  std::int64_t dim() const { return WVector::dim(ctx_->p(), ctx_->m(), b_); }
  const std::vector<WVector>& generators() const noexcept { return gens_; }
  const Echelon& echelon() const noexcept { return echelon_; }
  std::size_t rank() const noexcept { return echelon_.rows.size(); }
  /// Codimension of the image of H in W, which equals that in W + <t>.
  std::int64_t codim() const { return dim() - static_cast<std::int64_t>(rank()); }

  bool contains(const WVector& w) const { return in_span(echelon_, w.coords(), ctx_->p()); }

  /// Rows q with q . w = 0 exactly for w in H.
  FpMatrix annihilator() const { return nullspace(echelon_.rows, static_cast<std::size_t>(dim()), ctx_->p()); }

  bool operator==(const WSubspace& o) const { return b_ == o.b_ && echelon_.rows == o.echelon_.rows; }

 private:
  CtxPtr ctx_;
  std::int64_t b_ = 0;
  std::vector<WVector> gens_;
  Echelon echelon_;
};

namespace detail {

inline void require_rebased(const EisensteinPoly& g, std::int64_t b) {
  if (!g.is_rebased()) fail(ErrorKind::PreconditionViolated, "minimal polynomial must have constant term -t");
  if (g.poly().min_prec() < b + 1) fail(ErrorKind::InsufficientPrecision, "coefficients must be known mod t^{b+1}");
}

}  // namespace detail

/// N(E_p(theta_l pi^k)) computed with resultants, then coordinatized.
inline WSubspace norm_generators_exact(const EisensteinPoly& g, std::int64_t b) {
  detail::require_rebased(g, b);
  const auto& ctx = g.ctx();
  const FieldCtx& f = *ctx;
  const std::int64_t n = g.n();
  const std::int64_t bound = (b + 1) * n;  // E_p(theta X^k) truncated below X^{(b+1)n}
  const auto e = e_series(f.p(), bound);
  std::vector<WVector> gens;
  for (std::int64_t k = 1; k <= b; ++k) {
    if (k % f.p() == 0) continue;
    for (int l = 0; l < f.m(); ++l) {
      const Elem theta = f.basis(l);
      std::vector<Series> c(static_cast<std::size_t>(bound), exact_zero(ctx));
      std::int64_t top = 0;
      for (std::int64_t d = 0; d * k < bound; ++d) {
        const Elem coef = f.mul(e[static_cast<std::size_t>(d)], f.pow(theta, d));
        if (!coef) continue;
        c[static_cast<std::size_t>(d * k)] = exact_const(ctx, coef);
        top = d * k;
      }
      c.resize(static_cast<std::size_t>(top + 1));
      const KPoly a = poly_rem_monic(KPoly(std::move(c)), g.poly());
      const Series nm = norm(g, a);
      gens.push_back(unit_coordinates(nm.truncate(b + 1), b));
    }
  }
  return WSubspace(ctx, b, std::move(gens));
}

/// The same generators from the congruence
/// N(E(r pi^k)) = E(r^n t^k) prod_j prod_{h in S_kj} E(-k c_{kp^j,h} r^{p^j} t^h) mod t^{b+1}.
inline WSubspace norm_generators_congruence(const EisensteinPoly& g, std::int64_t b) {
  detail::require_rebased(g, b);
  const auto& ctx = g.ctx();
  const FieldCtx& f = *ctx;
  const std::int64_t p = f.p(), n = g.n(), nb = b + 1;
  std::vector<WVector> gens;
  for (std::int64_t k = 1; k <= b; ++k) {
    if (k % p == 0) continue;
    for (int l = 0; l < f.m(); ++l) {
      const Elem r = f.basis(l);
      Series u = e_eval(Series::monomial(ctx, f.pow(r, n), k, nb));
      std::int64_t pj = 1;
      for (int j = 0; j < g.nu(); ++j, pj *= p) {
        const std::int64_t i = k * pj;
        const std::int64_t lo = std::max<std::int64_t>(1, EisensteinPoly::f_bound(i, b, p, n));
        for (std::int64_t h = lo; h <= b; ++h) {
          const Elem c = g.c(i, h);
          if (!c) continue;
          const Elem coef = f.neg(f.mul(f.from_int(k), f.mul(c, f.frob(r, j))));
          if (coef) u = u * e_eval(Series::monomial(ctx, coef, h, nb));
        }
      }
      gens.push_back(unit_coordinates(u, b));
    }
  }
  return WSubspace(ctx, b, std::move(gens));
}

/// Matrix whose column (e, l) holds coords(E_p(theta_l t^e)) for k < e <= b.
inline FpMatrix lambda_map_matrix(const CtxPtr& ctx, std::int64_t k, std::int64_t b) {
  const FieldCtx& f = *ctx;
  const std::size_t d = static_cast<std::size_t>((b - k) * f.m());
  const std::size_t wd = static_cast<std::size_t>(WVector::dim(f.p(), f.m(), b));
  FpMatrix phi(wd, FpVec(d, 0));
  for (std::int64_t e = k + 1; e <= b; ++e)
    for (int l = 0; l < f.m(); ++l) {
      const WVector w = unit_coordinates(e_eval(Series::monomial(ctx, f.basis(l), e, b + 1)), b);
      const std::size_t col = static_cast<std::size_t>((e - k - 1) * f.m() + l);
      for (std::size_t r = 0; r < wd; ++r) phi[r][col] = w.coords()[r];
    }
  return phi;
}

/// Whether Lambda(H cap U^{k+1}) mod M^{b+1} is an F_{p^nu}-subspace.
/// Exact linear algebra: the map alpha -> coords(E_p(alpha)) is F_p-linear on
/// M^{k+1} once k+1 >= ceil(b/p), so the set is the null space S of Q Phi, Q
/// annihilating H; S is checked for closure under an F_p-basis of F_{p^nu}.
inline bool lambda_subspace_test(const WSubspace& h, std::int64_t k, int nu) {
  const auto& ctx = h.ctx();
  const FieldCtx& f = *ctx;
  const std::int64_t p = f.p(), b = h.b();
  if (nu < 1) fail(ErrorKind::PreconditionViolated, "nu must be positive");
  if ((b + p - 1) / p > k + 1) fail(ErrorKind::PreconditionViolated, "lambda_subspace_test needs ceil(b/p) <= k+1");
  const auto sub = subfield_elements(ctx, nu);
  if (!sub) return false;
  if (k >= b || nu == 1) return true;
  const FpMatrix phi = lambda_map_matrix(ctx, k, b);
  const FpMatrix q = h.annihilator();
  const std::size_t d = static_cast<std::size_t>((b - k) * f.m());
  if (q.empty()) return true;  // H is all of W
  const FpMatrix qphi = matmul(q, phi, f.p());
  const FpMatrix s = nullspace(qphi, d, f.p());
  // An F_p-basis of F_{p^nu}, picked greedily in code order.
  std::vector<Elem> zbasis;
  {
    FpMatrix span;
    for (const auto& z : *sub) {
      if (z.is_zero()) continue;
      auto rows = span;
      rows.push_back(f.coords(z.value()));
      if (rank(rows, f.p()) > span.size()) {
        span = rows;
        zbasis.push_back(z.value());
      }
      if (static_cast<int>(zbasis.size()) == nu) break;
    }
  }
  for (const auto& sv : s) {
    for (Elem z : zbasis) {
      FpVec moved(d, 0);
      for (std::int64_t e = k + 1; e <= b; ++e) {
        std::vector<std::uint32_t> cs(f.m());
        for (int l = 0; l < f.m(); ++l) cs[l] = sv[static_cast<std::size_t>((e - k - 1) * f.m() + l)];
        const auto out = f.coords(f.mul(z, f.from_coords(cs)));
        for (int l = 0; l < f.m(); ++l) moved[static_cast<std::size_t>((e - k - 1) * f.m() + l)] = out[l];
      }
      for (const auto& row : qphi) {
        std::uint64_t acc = 0;
        for (std::size_t c = 0; c < d; ++c) acc += std::uint64_t(row[c]) * moved[c];
        if (acc % f.p()) return false;
      }
    }
  }
  return true;
}

/// The same test by brute force: every class alpha in M^{k+1}/M^{b+1} is mapped
/// through E_p, membership in H decided, and closure under every zeta checked
/// with e_eval(zeta * lambda_inverse(eta)).
inline bool lambda_subspace_test_enumerate(const WSubspace& h, std::int64_t k, int nu, std::uint64_t cap = std::uint64_t(1) << 20) {
  const auto& ctx = h.ctx();
  const FieldCtx& f = *ctx;
  const std::int64_t p = f.p(), b = h.b();
  if ((b + p - 1) / p > k + 1) fail(ErrorKind::PreconditionViolated, "lambda_subspace_test needs ceil(b/p) <= k+1");
  const auto sub = subfield_elements(ctx, nu);
  if (!sub) return false;
  if (k >= b) return true;
  std::uint64_t count = 1;
  for (std::int64_t e = k + 1; e <= b; ++e) {
    count *= f.q();
    if (count > cap) fail(ErrorKind::EnumerationTooLarge, "enumeration exceeds the configured cap");
  }
  const std::int64_t n = b + 1;
  std::vector<Series> members;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::map<std::int64_t, Elem> terms;
    std::uint64_t x = idx;
    for (std::int64_t e = k + 1; e <= b; ++e, x /= f.q()) terms[e] = static_cast<Elem>(x % f.q());
    const Series alpha = Series::from_terms(ctx, terms, n);
    if (h.contains(unit_coordinates(e_eval(alpha), b))) members.push_back(e_eval(alpha));
  }
  for (const auto& eta : members) {
    const Series lam = lambda_inverse(eta);
    for (const auto& z : *sub)
      if (!h.contains(unit_coordinates(e_eval(lam.scale(z.value())), b))) return false;
  }
  return true;
}

/// i_1 = p^2 b - max(b, p k) with k the least level at which the test holds (k = b without F_{p^2}).
inline std::int64_t cor_combining_i1(const WSubspace& h, std::int64_t b) {
  const auto& ctx = h.ctx();
  const std::int64_t p = ctx->p();
  std::int64_t k = b;
  if (subfield_elements(ctx, 2)) {
    // For k below ceil(b/p) - 1 the answer max(b, pk) = b is already attained there.
    const std::int64_t start = std::max<std::int64_t>(0, (b + p - 1) / p - 1);
    for (k = start; k < b; ++k)
      if (lambda_subspace_test(h, k, 2)) break;
  }
  return p * p * b - std::max(b, p * k);
}

}  // namespace raminsep
