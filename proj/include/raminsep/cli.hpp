#pragma once

// Command-line front end. Every command prints one JSON document on `out`.
// Exit codes: 0 success, 1 verify found a violation, 2 usage error, 3 math error.

#include <CLI11.hpp>
#include <algorithm>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "raminsep/schmid.hpp"
#include "raminsep/verify.hpp"

namespace raminsep {

namespace detail {

struct FieldOpts {
  std::uint32_t p = 0;
  int m = 1;
  std::vector<std::uint32_t> modulus;

  void add(CLI::App* app) {
    app->add_option("--p", p, "characteristic")->required();
    app->add_option("--m", m, "residue degree, q = p^m")->capture_default_str();
    app->add_option("--modulus", modulus, "defining polynomial of F_q, coefficients constant first")->delimiter(',');
  }
  CtxPtr ctx() const {
    if (modulus.empty()) return FieldCtx::make(p, m);
    return FieldCtx::make(p, m, modulus);
  }
};

inline json indices_json(const IndexVector& iv, std::int64_t p) {
  json j = to_json(iv, p);
  j.erase("nu");
  return j;
}

/// Parses an Eisenstein polynomial and brings it to constant term -t, with
/// coefficients known to max(b+2, RAMINSEP_PRECISION) digits.
struct PreparedPoly {
  EisensteinPoly given;
  IndexVector iv;
  std::int64_t b = 0;
  EisensteinPoly rebased;
};

inline PreparedPoly prepare(const CtxPtr& ctx, const std::string& text) {
  PreparedPoly r;
  r.given = EisensteinPoly(parse_poly(ctx, text));
  r.iv = indices_from_minpoly(r.given);
  r.b = break_from_indices(r.iv, ctx->p());
  const std::int64_t w = default_precision(r.b);
  std::vector<Series> c = r.given.poly().coeffs();
  for (std::size_t i = 0; i + 1 < c.size(); ++i) c[i] = c[i].truncate(w);
  r.rebased = rebase(EisensteinPoly(KPoly(std::move(c))));
  return r;
}

inline json math_error(const MathError& e) {
  return {{"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}};
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Indices of inseparability of single-break elementary abelian extensions of F_q((t))", "raminsep"};
  app.require_subcommand(1);

  detail::FieldOpts fo;
  std::string minpoly, beta, eta, emit = "all", method = "both";
  std::vector<std::string> as;
  int nu = 1, trials = 10;
  std::int64_t bmax = 9;
  std::uint64_t seed = 0;

  auto* c_indices = app.add_subcommand("indices", "indices of inseparability from a minimal polynomial");
  fo.add(c_indices);
  c_indices->add_option("--minpoly", minpoly, "Eisenstein polynomial in X over F_q((t))")->required();

  auto* c_build = app.add_subcommand("build", "minimal polynomial of a uniformizer of the extension cut out by Artin-Schreier data");
  fo.add(c_build);
  c_build->add_option("--as", as, "Laurent series beta_1,...,beta_nu")->required()->delimiter(',');
  c_build->add_option("--emit", emit)->check(CLI::IsMember({"all", "minpoly", "expansion"}))->capture_default_str();

  auto* c_norm = app.add_subcommand("normgroup", "norm group generators in the truncated unit group");
  fo.add(c_norm);
  c_norm->add_option("--minpoly", minpoly)->required();
  c_norm->add_option("--method", method)->check(CLI::IsMember({"exact", "congruence", "both"}))->capture_default_str();

  auto* c_recover = app.add_subcommand("recover", "indices from the norm group, compared with the minimal polynomial");
  fo.add(c_recover);
  c_recover->add_option("--minpoly", minpoly)->required();

  auto* c_pairing = app.add_subcommand("pairing", "Artin-Schreier / class field pairing [beta, eta)");
  fo.add(c_pairing);
  c_pairing->add_option("--beta", beta)->required();
  c_pairing->add_option("--eta", eta)->required();

  auto* c_verify = app.add_subcommand("verify", "random sweep of all invariants");
  fo.add(c_verify);
  c_verify->add_option("--nu", nu)->capture_default_str();
  c_verify->add_option("--bmax", bmax)->capture_default_str();
  c_verify->add_option("--trials", trials)->capture_default_str();
  c_verify->add_option("--seed", seed)->capture_default_str();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    const CtxPtr ctx = fo.ctx();
    json result;
    int code = 0;
    if (c_indices->parsed()) {
      const EisensteinPoly g(parse_poly(ctx, minpoly));
      result = detail::indices_json(indices_from_minpoly(g), ctx->p());
    } else if (c_build->parsed()) {
      ASData d{ctx, {}};
      for (const auto& s : as) d.betas.push_back(parse_series(ctx, s));
      const BuildResult r = build(d);
      const InstanceBundle x = make_bundle(d, r, 0);
      if (emit == "all") {
        result = x;
        result.erase("seed");
      } else if (emit == "minpoly") {
        result = {{"minpoly", x.minpoly}};
      } else {
        result = {{"c_expansion", x.c_expansion}};
      }
    } else if (c_norm->parsed()) {
      const auto pp = detail::prepare(ctx, minpoly);
      result = {{"b", pp.b}, {"method", method}};
      std::optional<WSubspace> ex, co;
      if (method != "congruence") result["exact"] = to_json(*(ex = norm_generators_exact(pp.rebased, pp.b)));
      if (method != "exact") result["congruence"] = to_json(*(co = norm_generators_congruence(pp.rebased, pp.b)));
      if (ex && co) result["equal"] = *ex == *co;
    } else if (c_recover->parsed()) {
      const auto pp = detail::prepare(ctx, minpoly);
      const WSubspace h = norm_generators_exact(pp.rebased, pp.b);
      const B0Basis b0 = b0_from_h(h, pp.b);
      const auto [iv, tab] = algorithm_compute(b0, pp.b, pp.iv.nu);
      result = {{"b", pp.b},
                {"nu", pp.iv.nu},
                {"minpoly_indices", pp.iv.i},
                {"recovered_indices", iv.i},
                {"match", iv == pp.iv},
                {"norm_group", to_json(h)},
                {"B0", to_json(b0)},
                {"c", to_json(tab)["c"]}};
    } else if (c_pairing->parsed()) {
      const Series be = parse_series(ctx, beta);
      Series et = parse_series(ctx, eta);
      if (!et.is_zero() && et.prec() >= kExactPrec) et = et.truncate(et.low() + std::max<std::int64_t>(0, -be.low()) + 2);
      result = {{"value", pairing(be, et)}};
    } else {
      result = sweep(fo.p, fo.m, nu, bmax, trials, seed);
      if (result["failed"] != 0) code = 1;
    }
    out << result.dump() << "\n";
    return code;
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const MathError& e) {
    out << detail::math_error(e).dump() << "\n";
    return 3;
  }
}

}  // namespace raminsep
