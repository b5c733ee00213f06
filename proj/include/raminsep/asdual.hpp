#pragma once

// The Artin-Schreier side: reduction into K_0, the group B_0 dual to H, the
// maps psi_k and their coefficients w_{jk}, the reverse induction recovering
// c_{i,b}, and closed-form index formulas in terms of v(w_j).

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "raminsep/errors.hpp"
#include "raminsep/exp.hpp"
#include "raminsep/insep.hpp"
#include "raminsep/linalg.hpp"
#include "raminsep/normgrp.hpp"
#include "raminsep/schmid.hpp"

namespace raminsep {

/// x_0 + sum x_i t^{-i} with x_0 in the fixed complement of wp(F_q) and x_i = 0 for p | i.
struct ReducedElem {
  CtxPtr ctx;
  Elem x0 = 0;
  std::map<std::int64_t, Elem> x;  // nonzero entries only

  Elem at(std::int64_t i) const {
    if (i == 0) return x0;
    const auto it = x.find(i);
    return it == x.end() ? 0 : it->second;
  }

  bool is_zero() const { return x0 == 0 && x.empty(); }

  /// -max{i : x_i != 0}; 0 for a nonzero constant, kInfinity for zero.
  std::int64_t valuation() const {
    if (!x.empty()) return -x.rbegin()->first;
    return x0 ? 0 : kInfinity;
  }

  Series to_series() const {
    std::map<std::int64_t, Elem> terms;
    if (x0) terms[0] = x0;
    for (const auto& [i, c] : x) terms[-i] = c;
    return Series::from_terms(ctx, terms, kExactPrec);
  }

  bool operator==(const ReducedElem& o) const { return x0 == o.x0 && x == o.x; }
};

/// Representative of beta + wp K in K_0.
inline ReducedElem reduce_to_k0(const Series& beta) {
  if (beta.prec() < 1) fail(ErrorKind::InsufficientPrecision, "reduction needs beta known mod t");
  const auto& ctx = beta.ctx();
  const FieldCtx& f = *ctx;
  const std::int64_t p = f.p();
  std::map<std::int64_t, Elem> neg;  // i -> coefficient of t^{-i}
  for (std::int64_t e = beta.low(); e < 0; ++e)
    if (const Elem c = beta.coeff(e)) neg[-e] = c;
  // Most negative exponent first; c t^{-pi} becomes c^{1/p} t^{-i}.
  while (!neg.empty()) {
    auto it = std::find_if(neg.rbegin(), neg.rend(), [&](const auto& kv) { return kv.first % p == 0 && kv.second != 0; });
    if (it == neg.rend()) break;
    const std::int64_t i = it->first / p;
    const Elem root = f.frob(it->second, -1);
    neg.erase(std::next(it).base());
    neg[i] = f.add(neg[i], root);
  }
  ReducedElem r;
  r.ctx = ctx;
  for (const auto& [i, c] : neg)
    if (c) r.x[i] = c;
  const Elem c0 = beta.prec() > 0 ? beta.coeff(0) : 0;
  if (const Elem tr = f.trace(c0)) {
    const FieldElement z = wp_complement(ctx);
    r.x0 = f.mul(f.div(tr, f.trace(z.value())), z.value());
  }
  return r;
}

/// F_p-basis of B_0 together with the maps psi_k evaluated on it.
struct B0Basis {
  CtxPtr ctx;
  int nu = 0;
  std::int64_t b = 0;
  std::vector<ReducedElem> elems;  // psi(v_a) for the basis v_a of V

  /// The basis of V: top coefficients x_b.
  std::vector<FieldElement> v_basis() const {
    std::vector<FieldElement> out;
    for (const auto& e : elems) out.emplace_back(ctx, e.at(b));
    return out;
  }

  /// psi_k on the basis of V.
  std::vector<FieldElement> psi(std::int64_t k) const {
    std::vector<FieldElement> out;
    for (const auto& e : elems) out.emplace_back(ctx, e.at(k));
    return out;
  }

  /// Every element of B_0, as F_p-combinations of the basis in lexicographic order.
  std::vector<ReducedElem> all() const {
    const FieldCtx& f = *ctx;
    std::int64_t count = 1;
    for (int a = 0; a < nu; ++a) count *= f.p();
    std::vector<ReducedElem> out;
    for (std::int64_t idx = 0; idx < count; ++idx) {
      ReducedElem s;
      s.ctx = ctx;
      std::int64_t x = idx;
      for (int a = 0; a < nu; ++a, x /= f.p()) {
        const Elem c = f.from_int(x % f.p());
        if (!c) continue;
        s.x0 = f.add(s.x0, f.mul(c, elems[a].x0));
        for (const auto& [i, v] : elems[a].x) s.x[i] = f.add(s.x[i], f.mul(c, v));
      }
      for (auto it = s.x.begin(); it != s.x.end();) it = it->second ? std::next(it) : s.x.erase(it);
      out.push_back(std::move(s));
    }
    return out;
  }
};

/// B_0 as the orthogonal complement of H and t under the Schmid pairing.
inline B0Basis b0_from_h(const WSubspace& h, std::int64_t b) {
  const auto& ctx = h.ctx();
  const FieldCtx& f = *ctx;
  const std::int64_t p = f.p();
  if (h.b() != b) fail(ErrorKind::PreconditionViolated, "norm group and break disagree");
  if (b < 1 || b % p == 0) fail(ErrorKind::PreconditionViolated, "break must be positive and prime to p");
  const std::int64_t wd = h.dim();
  // Unknowns: theta_l t^{-i} for p not dividing i, in W slot order, then the constant z.
  std::vector<Series> xi;
  for (std::int64_t i = 1; i <= b; ++i) {
    if (i % p == 0) continue;
    for (int l = 0; l < f.m(); ++l) xi.push_back(Series::monomial(ctx, f.basis(l), -i, kExactPrec));
  }
  const FieldElement z = wp_complement(ctx);
  xi.push_back(Series::constant(ctx, z.value(), kExactPrec));
  const std::size_t d = xi.size();

  std::vector<Series> etas;
  for (std::int64_t k = 1; k <= b; ++k) {
    if (k % p == 0) continue;
    for (int l = 0; l < f.m(); ++l) etas.push_back(e_eval(Series::monomial(ctx, f.basis(l), k, b + 1)));
  }
  const FpMatrix pm = pairing_matrix(xi, etas);

  FpMatrix cons;
  for (const auto& row : h.echelon().rows) {
    FpVec c(d, 0);
    for (std::size_t a = 0; a < d; ++a) {
      std::uint64_t acc = 0;
      for (std::int64_t s = 0; s < wd; ++s) acc += std::uint64_t(row[s]) * pm[a][s];
      c[a] = static_cast<std::uint32_t>(acc % p);
    }
    cons.push_back(std::move(c));
  }
  FpVec trow(d, 0);
  const Series t = Series::monomial(ctx, 1, 1, kExactPrec);
  for (std::size_t a = 0; a < d; ++a) trow[a] = pairing(xi[a], t);
  cons.push_back(std::move(trow));

  const FpMatrix sol = nullspace(cons, d, p);
  const std::int64_t nu = h.codim();
  if (nu < 1 || static_cast<std::int64_t>(sol.size()) != nu)
    fail(ErrorKind::DimensionMismatch, "B_0 has dimension " + std::to_string(sol.size()) + ", expected " + std::to_string(nu));

  B0Basis out;
  out.ctx = ctx;
  out.nu = static_cast<int>(nu);
  out.b = b;
  for (const auto& y : sol) {
    ReducedElem r;
    r.ctx = ctx;
    std::size_t a = 0;
    for (std::int64_t i = 1; i <= b; ++i) {
      if (i % p == 0) continue;
      std::vector<std::uint32_t> cs(y.begin() + static_cast<std::ptrdiff_t>(a), y.begin() + static_cast<std::ptrdiff_t>(a + f.m()));
      if (const Elem c = f.from_coords(cs)) r.x[i] = c;
      a += static_cast<std::size_t>(f.m());
    }
    if (y[a]) r.x0 = f.mul(f.from_int(y[a]), z.value());
    if (r.x0) fail(ErrorKind::ReductionFailed, "B_0 element with nonzero constant term");
    out.elems.push_back(std::move(r));
  }
  FpMatrix top;
  for (const auto& v : out.v_basis()) top.push_back(f.coords(v.value()));
  if (rank(top, p) != static_cast<std::size_t>(nu)) fail(ErrorKind::NotSingleBreak, "projection of B_0 onto its t^-b coefficients is not injective");
  return out;
}

/// w_{jk} with psi_k(x) = sum_j w_{jk} x^{p^{nu-j}} on V.
struct WCoeffs {
  CtxPtr ctx;
  int nu = 0;
  std::int64_t b = 0;
  std::vector<std::vector<Elem>> w;  // w[j][k], k = 0..b with w[j][0] unused

  Elem at(int j, std::int64_t k) const { return w[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]; }

  std::int64_t valuation(int j) const {
    for (std::int64_t k = b; k >= 1; --k)
      if (at(j, k)) return -k;
    return kInfinity;
  }

  Series series(int j) const {
    std::map<std::int64_t, Elem> terms;
    for (std::int64_t k = 1; k <= b; ++k)
      if (at(j, k)) terms[-k] = at(j, k);
    return Series::from_terms(ctx, terms, kExactPrec);
  }
};

inline WCoeffs w_interpolate(const B0Basis& b0) {
  WCoeffs out;
  out.ctx = b0.ctx;
  out.nu = b0.nu;
  out.b = b0.b;
  out.w.assign(static_cast<std::size_t>(b0.nu), std::vector<Elem>(static_cast<std::size_t>(b0.b + 1), 0));
  const auto pts = b0.v_basis();
  for (std::int64_t k = 1; k <= b0.b; ++k) {
    const auto sol = moore_solve(pts, b0.psi(k), b0.nu);
    for (int j = 0; j < b0.nu; ++j) out.w[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = sol[static_cast<std::size_t>(j)].value();
  }
  return out;
}

/// Recovered c_{i,b} for i = k p^j with p not dividing k, k <= b, j < nu.
struct CTable {
  CtxPtr ctx;
  std::int64_t b = 0;
  std::map<std::int64_t, Elem> c;

  Elem at(std::int64_t i) const {
    const auto it = c.find(i);
    if (it == c.end()) fail(ErrorKind::PreconditionViolated, "c_{" + std::to_string(i) + ",b} was not recovered");
    return it->second;
  }
};

/// Reverse induction on k = b, ..., 1 solving for c_{kp^j,b}, then the index minimum.
inline std::pair<IndexVector, CTable> algorithm_compute(const B0Basis& b0, std::int64_t b, int nu) {
  const auto& ctx = b0.ctx;
  const FieldCtx& f = *ctx;
  const std::int64_t p = f.p();
  if (b != b0.b || nu != b0.nu) fail(ErrorKind::DimensionMismatch, "B_0 does not match the requested break and degree");
  if (b % p == 0) fail(ErrorKind::PreconditionViolated, "break must be prime to p");
  const std::int64_t n = ipow(p, nu);
  const auto pts = b0.v_basis();
  const Elem binv = f.inv(f.from_int(b));
  CTable tab;
  tab.ctx = ctx;
  tab.b = b;
  for (std::int64_t k = b; k >= 1; --k) {
    if (k % p == 0) continue;
    std::vector<FieldElement> rhs;
    for (std::size_t a = 0; a < pts.size(); ++a) {
      Elem val = b0.elems[a].at(k);
      std::int64_t pj = 1;
      for (int j = 0; j < nu; ++j, pj *= p) {
        const std::int64_t i = k * pj;
        for (std::int64_t hh = std::max<std::int64_t>(1, EisensteinPoly::f_bound(i, b, p, n)); hh < b; ++hh) {
          const Elem xh = b0.elems[a].at(hh);
          if (!xh) continue;
          const std::int64_t r = k + (b - hh) * ipow(p, nu - j);
          const Elem c = tab.at(r * pj);
          if (!c) continue;
          const Elem term = f.mul(f.from_int(hh), f.frob(f.mul(c, xh), nu - j));
          val = f.sub(val, term);
        }
      }
      rhs.emplace_back(ctx, val);
    }
    const auto y = moore_solve(pts, rhs, nu);
    std::int64_t pj = 1;
    for (int j = 0; j < nu; ++j, pj *= p) tab.c[k * pj] = f.frob(f.mul(y[static_cast<std::size_t>(j)].value(), binv), j - nu);
  }
  if (tab.at(b) == 0) fail(ErrorKind::ReductionFailed, "recovered c_{b,b} vanishes");
  IndexVector iv;
  iv.nu = nu;
  std::int64_t pj = 1;
  for (int j = 0; j < nu; ++j, pj *= p) {
    std::int64_t best = kInfinity;
    for (const auto& [i, c] : tab.c)
      if (c && i >= b && i <= b * pj && vp_int(i, p) <= j) best = std::min(best, b * n - i);
    if (best == kInfinity) fail(ErrorKind::ReductionFailed, "no recovered coefficient determines i_" + std::to_string(j));
    iv.i.push_back(best);
  }
  iv.i.push_back(0);
  return {iv, tab};
}

/// i_j = b p^nu + min{p^{j'} v(w_{j'}) : j' <= j}, valid for b < p.
inline IndexVector indices_via_w_small_b(const WCoeffs& w, std::int64_t b) {
  const std::int64_t p = w.ctx->p();
  if (b >= p) fail(ErrorKind::PreconditionViolated, "closed form needs b <= p - 1");
  const std::int64_t n = ipow(p, w.nu);
  IndexVector iv;
  iv.nu = w.nu;
  std::int64_t best = kInfinity;
  for (int j = 0; j < w.nu; ++j) {
    const std::int64_t v = w.valuation(j);
    if (v != kInfinity) best = std::min(best, ipow(p, j) * v);
    iv.i.push_back(b * n + best);
  }
  iv.i.push_back(0);
  return iv;
}

/// i_1 = b p^2 + min{-b, p v(w_1)} for degree p^2.
inline std::int64_t i1_via_w_nu2(const WCoeffs& w, std::int64_t b) {
  const std::int64_t p = w.ctx->p();
  if (w.nu != 2) fail(ErrorKind::PreconditionViolated, "formula needs nu = 2");
  const std::int64_t v = w.valuation(1);
  return b * p * p + (v == kInfinity ? -b : std::min(-b, p * v));
}

/// Three conditions at level k: bounds on i_j, F_{p^nu}-stability of B_0 + M^{-k}, bounds on v(w_j).
inline std::tuple<bool, bool, bool> zpn_condition_check(const B0Basis& b0, const WCoeffs& w, const IndexVector& iv, std::int64_t k) {
  const auto& ctx = b0.ctx;
  const FieldCtx& f = *ctx;
  const std::int64_t p = f.p(), b = b0.b;
  const int nu = b0.nu;
  if (k < (b + p - 1) / p || k > b - 1) fail(ErrorKind::PreconditionViolated, "level must lie in [ceil(b/p), b-1]");
  const std::int64_t n = ipow(p, nu);
  bool c1 = true, c3 = true;
  for (int j = 1; j < nu; ++j) {
    if (iv.i[static_cast<std::size_t>(j)] < b * n - k * ipow(p, j)) c1 = false;
    if (w.valuation(j) < -k) c3 = false;
  }
  bool c2 = false;
  if (const auto sub = subfield_elements(ctx, nu)) {
    using Tail = std::vector<Elem>;
    auto tail = [&](const std::map<std::int64_t, Elem>& x, Elem scale) {
      Tail out;
      for (std::int64_t i = k + 1; i <= b; ++i) {
        const auto it = x.find(i);
        out.push_back(it == x.end() ? 0 : f.mul(scale, it->second));
      }
      return out;
    };
    const auto all = b0.all();
    std::vector<Tail> tails;
    for (const auto& e : all) tails.push_back(tail(e.x, 1));
    std::sort(tails.begin(), tails.end());
    c2 = true;
    for (const auto& e : all) {
      for (const auto& z : *sub)
        if (!std::binary_search(tails.begin(), tails.end(), tail(e.x, z.value()))) {
          c2 = false;
          break;
        }
      if (!c2) break;
    }
  }
  return {c1, c2, c3};
}

}  // namespace raminsep
