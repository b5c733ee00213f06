#pragma once

// Forward construction of a single-break elementary abelian extension from
// Artin-Schreier data: successive roots rho^p - rho = beta, a uniformizer of
// each layer, the expansion of t in the top uniformizer and its minimal polynomial.

#include <cstdint>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "raminsep/asdual.hpp"
#include "raminsep/errors.hpp"
#include "raminsep/insep.hpp"
#include "raminsep/localpoly.hpp"

namespace raminsep {

struct ASData {
  CtxPtr ctx;
  std::vector<Series> betas;
};

/// Common break of all nonzero F_p-combinations, each reduced into K_0.
inline std::int64_t validate_single_break(const ASData& data) {
  const auto& ctx = data.ctx;
  const FieldCtx& f = *ctx;
  const std::int64_t p = f.p();
  const int nu = static_cast<int>(data.betas.size());
  if (nu < 1) fail(ErrorKind::PreconditionViolated, "no Artin-Schreier generators");
  std::int64_t count = 1;
  for (int a = 0; a < nu; ++a) count *= p;
  std::int64_t b = 0;
  for (std::int64_t idx = 1; idx < count; ++idx) {
    Series s(ctx, kExactPrec);
    std::int64_t x = idx;
    for (int a = 0; a < nu; ++a, x /= p)
      if (x % p) s = s + data.betas[static_cast<std::size_t>(a)].scale(f.from_int(x % p));
    const ReducedElem r = reduce_to_k0(s);
    if (r.is_zero()) fail(ErrorKind::DependentGenerators, "an F_p-combination of the generators lies in wp K");
    const std::int64_t v = r.valuation();
    if (v >= 0) fail(ErrorKind::NotSingleBreak, "an F_p-combination of the generators is unramified");
    if (b == 0) b = -v;
    if (-v != b) fail(ErrorKind::NotSingleBreak, "combinations have breaks " + std::to_string(b) + " and " + std::to_string(-v));
  }
  return b;
}

/// Random generators with support on t^{-e}, p not dividing e <= b, redrawn until
/// they define a single break b. Needs nu <= m.
template <class Rng>
ASData random_as_data(const CtxPtr& ctx, int nu, std::int64_t b, Rng& rng) {
  const FieldCtx& f = *ctx;
  if (nu > f.m()) fail(ErrorKind::PreconditionViolated, "a single break needs nu <= m");
  if (b < 1 || b % f.p() == 0) fail(ErrorKind::PreconditionViolated, "break must be positive and prime to p");
  for (;;) {
    ASData d{ctx, {}};
    for (int a = 0; a < nu; ++a) {
      std::map<std::int64_t, Elem> terms;
      for (std::int64_t e = 1; e <= b; ++e)
        if (e % f.p()) terms[-e] = static_cast<Elem>(rng() % f.q());
      d.betas.push_back(Series::from_terms(ctx, terms, kExactPrec));
    }
    try {
      if (validate_single_break(d) == b) return d;
    } catch (const MathError&) {
    }
  }
}

/// The field reached so far: t and the adjoined roots as series in the current uniformizer.
struct TowerState {
  CtxPtr ctx;
  int level = 0;
  std::int64_t b = 0;
  Series t_in_u;
  std::vector<Series> rhos;
};

inline TowerState tower_start(const CtxPtr& ctx, std::int64_t b) {
  return {ctx, 0, b, Series::monomial(ctx, 1, 1, kExactPrec, "pi"), {}};
}

namespace detail {

/// beta minus wp of negative Laurent terms, so the leading exponent is prime to p.
inline Series reduce_negative_part(const Series& x) {
  const auto& ctx = x.ctx();
  const FieldCtx& f = *ctx;
  const std::int64_t p = f.p();
  std::map<std::int64_t, Elem> terms;
  for (std::int64_t e = x.low(); e < x.high(); ++e)
    if (const Elem c = x.coeff(e)) terms[e] = c;
  for (auto it = terms.begin(); it != terms.end() && it->first < 0;) {
    if (it->first % p != 0 || it->second == 0) {
      ++it;
      continue;
    }
    const std::int64_t e = it->first / p;
    const Elem root = f.frob(it->second, -1);
    it = terms.erase(it);
    terms[e] = f.add(terms[e], root);
    it = terms.begin();
  }
  for (auto it = terms.begin(); it != terms.end();) it = it->second ? std::next(it) : terms.erase(it);
  return Series::from_terms(ctx, terms, x.prec(), x.var());
}

inline void require_zero(const Series& r, std::int64_t prec, const char* what) {
  if (!r.is_zero()) fail(ErrorKind::ResidualNonzero, std::string(what) + " residual has valuation " + std::to_string(r.valuation()));
  if (r.prec() < prec) fail(ErrorKind::InsufficientPrecision, std::string(what) + " residual known only to " + std::to_string(r.prec()));
}

}  // namespace detail

/// Adjoins rho with rho^p - rho = beta. The new uniformizer is rho^{u0} u^{s0}
/// with p s0 - b u0 = 1; `alternate` uses (u0 + p, s0 + b) instead.
/// Results are carried to absolute precision `prec` in the new uniformizer.
inline TowerState adjoin_step(const TowerState& st, const Series& beta, std::int64_t prec, bool alternate = false) {
  const auto& ctx = st.ctx;
  const FieldCtx& f = *ctx;
  const std::int64_t p = f.p(), b = st.b;
  // beta in the current uniformizer, known well enough for relative precision prec of G.
  const std::int64_t need = detail::ceil_div(prec, p) - b + 1;
  Series bu = compose(beta.with_var("pi"), st.t_in_u);
  if (bu.prec() < need) fail(ErrorKind::InsufficientPrecision, "generator known only to u^" + std::to_string(bu.prec()));
  bu = detail::reduce_negative_part(bu.truncate(need));
  if (bu.is_zero() || bu.valuation() != -b) fail(ErrorKind::ReductionFailed, "generator does not reduce to valuation -b in the current layer");

  std::int64_t u0 = 1;
  while ((b * u0 + 1) % p != 0) ++u0;
  std::int64_t s0 = (b * u0 + 1) / p;
  if (alternate) {
    u0 += p;
    s0 += b;
  }
  // rho = pi^{-b} A, u = pi^p U with units A, U:
  //   F1 = A^{u0} U^{s0} - 1,  F2 = A^p - pi^{(p-1)b} A - G(U),  G(U) = pi^{bp} beta(pi^p U).
  const Elem lead = bu.coeff(-b);
  const Series dbu = bu.derivative();
  Series a = Series::constant(ctx, f.pow(lead, s0), 1, "pi");
  Series u = Series::constant(ctx, f.pow(f.inv(lead), u0), 1, "pi");
  auto residuals = [&](const Series& av, const Series& uv, std::int64_t n) {
    const Series g = compose(bu, uv.shift(p)).shift(b * p).truncate(n);
    const Series f1 = (av.pow(u0) * uv.pow(s0)).truncate(n) - Series::constant(ctx, 1, n, "pi");
    const Series f2 = (av.frobenius_power() - av.shift((p - 1) * b)).truncate(n) - g;
    return std::pair{f1, f2};
  };
  for (std::int64_t known = 1; known < prec;) {
    const std::int64_t n = std::min(prec, 2 * known);
    const Series av = a.extend(n), uv = u.extend(n);
    const auto [f1, f2] = residuals(av, uv, n);
    const Series j11 = (av.pow(u0 - 1) * uv.pow(s0)).scale(f.from_int(u0)).truncate(n);
    const Series j12 = (av.pow(u0) * uv.pow(s0 - 1)).scale(f.from_int(s0)).truncate(n);
    const Series j21 = -Series::monomial(ctx, 1, (p - 1) * b, n, "pi");
    const Series j22 = -(compose(dbu, uv.shift(p)).shift(b * p + p)).truncate(n);
    const Series det = (j11 * j22 - j12 * j21).truncate(n);
    const Series dinv = det.inv();
    const Series da = ((j22 * f1 - j12 * f2) * dinv).truncate(n);
    const Series du = ((j11 * f2 - j21 * f1) * dinv).truncate(n);
    a = (av - da).truncate(n);
    u = (uv - du).truncate(n);
    known = n;
  }
  {
    const auto [f1, f2] = residuals(a, u, prec);
    detail::require_zero(f1, prec, "uniformizer");
    detail::require_zero(f2, prec, "Artin-Schreier");
  }
  const Series uprev = u.shift(p);
  TowerState out{ctx, st.level + 1, b, compose(st.t_in_u, uprev), {}};
  for (const auto& r : st.rhos) out.rhos.push_back(compose(r, uprev));
  out.rhos.push_back(a.shift(-b));
  return out;
}

/// Default number of t-digits of the minimal polynomial coefficients.
inline std::int64_t default_precision(std::int64_t b) {
  if (const char* env = std::getenv("RAMINSEP_PRECISION")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end && *end == '\0' && v >= b + 2) return v;
    fail(ErrorKind::PreconditionViolated, "RAMINSEP_PRECISION must be an integer >= b+2");
  }
  return b + 2;
}

struct BuildResult {
  std::int64_t b = 0;
  int nu = 0;
  EisensteinPoly minpoly;  // rebased: constant term -t
  Series t_in_pi;          // the rebased t as a series in pi
};

/// Monic polynomial of degree n = v(t) vanishing at pi, from t(pi): greedy
/// cancellation against the basis t^h pi^i, whose valuations n h + i are distinct.
inline EisensteinPoly extract_minpoly(const Series& t_in_pi, std::int64_t n) {
  const auto& ctx = t_in_pi.ctx();
  const FieldCtx& f = *ctx;
  const std::int64_t prec = t_in_pi.prec();
  if (t_in_pi.valuation() != n) fail(ErrorKind::PreconditionViolated, "t must have valuation n in pi");
  const Elem lead = t_in_pi.coeff(n);
  std::vector<Series> tp{Series::constant(ctx, 1, kExactPrec, "pi")};
  std::vector<std::map<std::int64_t, Elem>> c(static_cast<std::size_t>(n));
  Series r = -Series::monomial(ctx, 1, n, prec, "pi");
  while (!r.is_zero()) {
    const std::int64_t e = r.valuation();
    const std::int64_t h = e / n, i = e % n;
    while (static_cast<std::int64_t>(tp.size()) <= h) tp.push_back((tp.back() * t_in_pi).truncate(prec));
    const Elem d = f.div(r.coeff(e), f.pow(lead, h));
    auto& slot = c[static_cast<std::size_t>(i)][h];
    slot = f.add(slot, d);
    r = r - tp[static_cast<std::size_t>(h)].shift(i).scale(d).truncate(prec);
  }
  std::vector<Series> coeffs;
  for (std::int64_t i = 0; i < n; ++i) coeffs.push_back(Series::from_terms(ctx, c[static_cast<std::size_t>(i)], detail::ceil_div(prec - i, n)));
  coeffs.push_back(exact_const(ctx, 1));
  return EisensteinPoly(KPoly(std::move(coeffs)));
}

/// Runs the tower, extracts the minimal polynomial, and rebases so that t = -a_n.
inline BuildResult build(const ASData& data, bool alternate = false, std::int64_t digits = 0) {
  const auto& ctx = data.ctx;
  const std::int64_t p = ctx->p();
  const std::int64_t b = validate_single_break(data);
  const int nu = static_cast<int>(data.betas.size());
  const std::int64_t n = ipow(p, nu);
  if (digits == 0) digits = default_precision(b);
  std::int64_t emax = b;
  for (const auto& be : data.betas)
    if (!be.is_zero()) emax = std::max(emax, -be.low());
  // Precision per layer, top down.
  std::vector<std::int64_t> prec(static_cast<std::size_t>(nu + 1));
  prec[static_cast<std::size_t>(nu)] = n * digits + n;
  for (int j = nu; j >= 1; --j)
    prec[static_cast<std::size_t>(j - 1)] = detail::ceil_div(prec[static_cast<std::size_t>(j)], p) + (emax + 1) * ipow(p, j - 1) + 1;
  TowerState st = tower_start(ctx, b);
  for (int j = 1; j <= nu; ++j) st = adjoin_step(st, data.betas[static_cast<std::size_t>(j - 1)], prec[static_cast<std::size_t>(j)], alternate);
  const Series t = st.t_in_u.truncate(prec[static_cast<std::size_t>(nu)]);
  if (t.prec() < n * digits + n) fail(ErrorKind::InsufficientPrecision, "tower lost precision");
  const EisensteinPoly raw = extract_minpoly(t, n);
  BuildResult out;
  out.b = b;
  out.nu = nu;
  out.minpoly = rebase(raw);
  out.t_in_pi = compose(-raw.poly()[0], t);
  return out;
}

}  // namespace raminsep
