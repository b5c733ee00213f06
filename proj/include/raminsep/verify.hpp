#pragma once

// JSON forms, instance bundles, and the per-instance invariant checks run by
// the random sweeps.

#include <cstdint>
#include <map>
#include <boost/lexical_cast.hpp>
#include <nlohmann/json.hpp>
#include <random>
#include <string>
#include <vector>

#include "raminsep/asdual.hpp"
#include "raminsep/insep.hpp"
#include "raminsep/normgrp.hpp"
#include "raminsep/text.hpp"
#include "raminsep/tower.hpp"

namespace raminsep {

using json = nlohmann::ordered_json;

inline json to_json(const IndexVector& iv, std::int64_t p) {
  json j{{"nu", iv.nu}, {"indices", iv.i}};
  try {
    j["break"] = break_from_indices(iv, p);
  } catch (const MathError&) {
    j["break"] = nullptr;
  }
  return j;
}

inline json to_json(const CTable& c) {
  json m = json::object();
  for (const auto& [i, v] : c.c) m[std::to_string(i)] = c.ctx->to_string(v);
  return {{"b", c.b}, {"c", m}};
}

inline json to_json(const WCoeffs& w) {
  json rows = json::array();
  for (int j = 0; j < w.nu; ++j) rows.push_back(to_text(w.series(j)));
  return {{"nu", w.nu}, {"b", w.b}, {"w", rows}, {"valuations", [&] {
             json v = json::array();
             for (int j = 0; j < w.nu; ++j) {
               if (w.valuation(j) == kInfinity)
                 v.push_back(nullptr);
               else
                 v.push_back(w.valuation(j));
             }
             return v;
           }()}};
}

inline json to_json(const WSubspace& h) {
  return {{"b", h.b()}, {"dim", h.dim()}, {"rank", h.rank()}, {"codim", h.codim()}, {"basis", h.echelon().rows}};
}

inline json to_json(const B0Basis& b0) {
  json el = json::array();
  for (const auto& e : b0.elems) el.push_back(to_text(e.to_series()));
  json v = json::array();
  for (const auto& x : b0.v_basis()) v.push_back(x.to_string());
  return {{"nu", b0.nu}, {"b", b0.b}, {"basis", el}, {"V_basis", v}};
}

struct InstanceBundle {
  std::uint32_t p = 0;
  int m = 0;
  std::vector<std::uint32_t> modulus;
  int nu = 0;
  std::int64_t b = 0;
  std::vector<std::string> betas;
  std::string minpoly;
  std::string c_expansion;
  std::vector<std::int64_t> indices;
  std::uint64_t seed = 0;

  CtxPtr ctx() const {
    if (modulus.empty()) return FieldCtx::make(p, m);
    return FieldCtx::make(p, m, modulus);
  }
};

inline void to_json(json& j, const InstanceBundle& x) {
  j = json{{"p", x.p}, {"m", x.m}, {"modulus", x.modulus}, {"nu", x.nu}, {"b", x.b}, {"betas", x.betas},
           {"minpoly", x.minpoly}, {"c_expansion", x.c_expansion}, {"indices", x.indices}, {"seed", x.seed}};
}

inline void from_json(const json& j, InstanceBundle& x) {
  j.at("p").get_to(x.p);
  j.at("m").get_to(x.m);
  if (j.contains("modulus")) j.at("modulus").get_to(x.modulus);
  j.at("nu").get_to(x.nu);
  j.at("b").get_to(x.b);
  j.at("betas").get_to(x.betas);
  if (j.contains("minpoly")) j.at("minpoly").get_to(x.minpoly);
  if (j.contains("c_expansion")) j.at("c_expansion").get_to(x.c_expansion);
  if (j.contains("indices")) j.at("indices").get_to(x.indices);
  if (j.contains("seed")) j.at("seed").get_to(x.seed);
}

inline ASData as_data(const InstanceBundle& x) {
  ASData d{x.ctx(), {}};
  for (const auto& s : x.betas) d.betas.push_back(parse_series(d.ctx, s));
  return d;
}

inline InstanceBundle make_bundle(const ASData& d, const BuildResult& r, std::uint64_t seed) {
  InstanceBundle x;
  x.p = d.ctx->p();
  x.m = d.ctx->m();
  x.modulus = d.ctx->modulus();
  x.nu = r.nu;
  x.b = r.b;
  for (const auto& s : d.betas) x.betas.push_back(to_text(s));
  x.minpoly = to_text(r.minpoly.poly());
  x.c_expansion = to_text(r.t_in_pi.with_var("t"));
  x.indices = indices_from_minpoly(r.minpoly).i;
  x.seed = seed;
  return x;
}

/// Outcome of the invariant checks on one instance; failures are tagged by property number.
struct CheckReport {
  std::map<int, int> checks;
  std::vector<std::pair<int, std::string>> failures;

  void expect(int prop, bool ok, const std::string& what) {
    ++checks[prop];
    if (!ok) failures.emplace_back(prop, what);
  }
  bool ok() const { return failures.empty(); }
};

/// Largest q^{b-k} for which the brute-force subspace test is also run.
inline constexpr std::uint64_t kEnumerationCrossCheck = std::uint64_t(1) << 12;

/// Runs every invariant on a built instance:
///  1 minimal polynomial = expansion = norm group route (plus recovered c_{i,b}, second uniformizer)
///  2 resultant norms = congruence norms
///  3 small-break formula     4 degree p^2 formulas     5 three equivalent conditions
///  6 odd residue degree with degree p^2     7 valuation bounds on a_k     8 Hasse-Herbrand function
inline CheckReport check_instance(const ASData& d, const BuildResult& r, bool second_uniformizer = true) {
  CheckReport rep;
  const auto& ctx = d.ctx;
  const std::int64_t p = ctx->p(), b = r.b;
  const int nu = r.nu;
  const std::int64_t n = ipow(p, nu);
  const IndexVector a = indices_from_minpoly(r.minpoly);
  const IndexVector e = indices_from_expansion(r.t_in_pi, nu);
  rep.expect(1, a == e, "minpoly " + a.to_string() + " vs expansion " + e.to_string());
  rep.expect(1, a.well_formed(p) && break_from_indices(a, p) == b, "indices not of single-break shape " + a.to_string());

  const WSubspace h = norm_generators_exact(r.minpoly, b);
  const WSubspace hc = norm_generators_congruence(r.minpoly, b);
  rep.expect(2, h == hc, "exact and congruence norm groups differ");
  rep.expect(2, h.codim() == nu, "norm group has codimension " + std::to_string(h.codim()));

  const B0Basis b0 = b0_from_h(h, b);
  const auto [iv, tab] = algorithm_compute(b0, b, nu);
  rep.expect(1, iv == a, "algorithm " + iv.to_string() + " vs minpoly " + a.to_string());
  for (const auto& [i, c] : tab.c)
    if (i <= b) rep.expect(1, c == r.minpoly.c(i, b), "recovered c_{" + std::to_string(i) + ",b} differs");
  if (second_uniformizer) {
    const BuildResult r2 = build(d, true);
    rep.expect(1, indices_from_minpoly(r2.minpoly) == a, "second uniformizer gives other indices");
  }

  const WCoeffs w = w_interpolate(b0);
  if (b <= p - 1) rep.expect(3, indices_via_w_small_b(w, b) == a, "small-break formula gives " + indices_via_w_small_b(w, b).to_string());
  if (nu == 2) {
    rep.expect(4, i1_via_w_nu2(w, b) == a.i[1], "w formula gives i_1 = " + std::to_string(i1_via_w_nu2(w, b)));
    rep.expect(4, cor_combining_i1(h, b) == a.i[1], "subspace criterion gives i_1 = " + std::to_string(cor_combining_i1(h, b)));
  }
  for (std::int64_t k = detail::ceil_div(b, p); k <= b - 1; ++k) {
    const auto [c1, c2, c3] = zpn_condition_check(b0, w, a, k);
    rep.expect(5, c1 == c2 && c2 == c3, "conditions differ at k=" + std::to_string(k));
    const bool lam = lambda_subspace_test(h, k, nu);
    rep.expect(5, lam == c2, "subspace test differs at k=" + std::to_string(k));
    std::uint64_t count = 1;
    for (std::int64_t s = k + 1; s <= b && count <= kEnumerationCrossCheck; ++s) count *= ctx->q();
    if (count <= kEnumerationCrossCheck) rep.expect(5, lambda_subspace_test_enumerate(h, k, nu) == lam, "enumeration differs at k=" + std::to_string(k));
  }
  if (nu == 2 && ctx->m() % 2 == 1 && b >= 2) rep.expect(6, a.i[1] == b * p * p - b * p, "odd residue degree gives i_1 = " + std::to_string(a.i[1]));
  for (std::int64_t k = 1; k <= n; ++k) {
    const Series ak = r.minpoly.a(k);
    const std::int64_t v = ak.is_zero() ? ak.prec() : ak.valuation();
    rep.expect(7, v >= EisensteinPoly::f_bound(k, b, p, n), "v(a_" + std::to_string(k) + ") below its bound");
  }
  const PiecewiseLinear phi = phi_from_indices(a, p);
  rep.expect(8, phi == phi_from_breaks({{b, n}}), "phi from indices differs from phi from breaks");
  for (const Rational& y : phi.intercepts()) {
    bool hit = false;
    for (const auto i : a.i) hit = hit || y == Rational(i, n);
    rep.expect(8, hit, "intercept " + boost::lexical_cast<std::string>(y) + " is no i_j/n");
  }
  return rep;
}

/// Random sweep over breaks 1..bmax prime to p; the report has no timing data.
inline json sweep(std::uint32_t p, int m, int nu, std::int64_t bmax, int trials, std::uint64_t seed) {
  const auto ctx = FieldCtx::make(p, m);
  std::vector<std::int64_t> bs;
  for (std::int64_t b = 1; b <= bmax; ++b)
    if (b % p) bs.push_back(b);
  if (bs.empty()) fail(ErrorKind::PreconditionViolated, "no break in 1..bmax is prime to p");
  if (nu > m) fail(ErrorKind::PreconditionViolated, "a single break needs nu <= m");
  json report{{"p", p}, {"m", m}, {"nu", nu}, {"bmax", bmax}, {"trials", trials}, {"seed", seed}};
  json failures = json::array();
  std::map<int, int> checks;
  int passed = 0;
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t tseed = seed * 1000003ULL + static_cast<std::uint64_t>(trial);
    std::mt19937_64 rng(tseed);
    const std::int64_t b = bs[rng() % bs.size()];
    const ASData d = random_as_data(ctx, nu, b, rng);
    json entry;
    try {
      const BuildResult r = build(d);
      const CheckReport rep = check_instance(d, r);
      for (const auto& [k, v] : rep.checks) checks[k] += v;
      if (rep.ok()) {
        ++passed;
        continue;
      }
      entry["bundle"] = make_bundle(d, r, tseed);
      for (const auto& [prop, what] : rep.failures) entry["failures"].push_back({{"property", prop}, {"detail", what}});
    } catch (const MathError& e) {
      InstanceBundle x;
      x.p = p;
      x.m = m;
      x.modulus = ctx->modulus();
      x.nu = nu;
      x.b = b;
      for (const auto& s : d.betas) x.betas.push_back(to_text(s));
      x.seed = tseed;
      entry["bundle"] = x;
      entry["error"] = e.what();
    }
    entry["trial"] = trial;
    failures.push_back(entry);
  }
  json cj = json::object();
  for (const auto& [k, v] : checks) cj[std::to_string(k)] = v;
  report["passed"] = passed;
  report["failed"] = static_cast<int>(failures.size());
  report["checks"] = cj;
  report["failures"] = failures;
  return report;
}

}  // namespace raminsep
