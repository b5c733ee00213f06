#pragma once

// Polynomials over K = F_q((t)), resultants, norms from L = K[X]/g, and the
// Eisenstein coefficient table c_{i,h}.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "raminsep/errors.hpp"
#include "raminsep/series.hpp"

namespace raminsep {

/// Precision used for coefficients that are known exactly (e.g. parsed polynomials).
inline constexpr std::int64_t kExactPrec = std::int64_t(1) << 40;

inline Series exact_zero(const CtxPtr& ctx) { return Series(ctx, kExactPrec); }
inline Series exact_const(const CtxPtr& ctx, Elem c) { return Series::constant(ctx, c, kExactPrec); }

inline int vp_int(std::int64_t n, std::int64_t p) {
  if (n == 0) return std::numeric_limits<int>::max();
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

/// Polynomial over K in X, constant-first.
class KPoly {
 public:
  KPoly() = default;
  explicit KPoly(std::vector<Series> c) : c_(std::move(c)) {}

  const std::vector<Series>& coeffs() const noexcept { return c_; }
  std::vector<Series>& coeffs() noexcept { return c_; }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const Series& operator[](std::size_t i) const { return c_.at(i); }
  const CtxPtr& ctx() const { return c_.front().ctx(); }

  /// Drops leading coefficients that are indistinguishable from zero.
  KPoly trimmed() const {
    KPoly r = *this;
    while (r.c_.size() > 1 && r.c_.back().is_zero()) r.c_.pop_back();
    return r;
  }

  std::int64_t min_prec() const {
    std::int64_t n = kExactPrec;
    for (const auto& s : c_) n = std::min(n, s.prec());
    return n;
  }

  /// Evaluates at a series (Horner).
  Series eval(const Series& x) const {
    Series acc = c_.back();
    for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

 private:
  std::vector<Series> c_;
};

inline KPoly poly_mul(const KPoly& a, const KPoly& b) {
  const auto& ctx = a.ctx();
  std::vector<Series> c(a.coeffs().size() + b.coeffs().size() - 1, exact_zero(ctx));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] = c[i + j] + a[i] * b[j];
  return KPoly(std::move(c));
}

/// Remainder modulo a monic polynomial g.
inline KPoly poly_rem_monic(const KPoly& a, const KPoly& g) {
  const int n = g.degree();
  std::vector<Series> r = a.coeffs();
  for (int d = static_cast<int>(r.size()) - 1; d >= n; --d) {
    const Series lead = r[d];
    if (!lead.is_zero() || lead.prec() < kExactPrec)
      for (int i = 0; i < n; ++i) r[d - n + i] = r[d - n + i] - lead * g[i];
    r.pop_back();
  }
  if (r.empty()) r.push_back(exact_zero(g.ctx()));
  return KPoly(std::move(r));
}

namespace detail {

/// Determinant by Gaussian elimination with minimum-valuation full pivoting.
inline Series series_det(std::vector<std::vector<Series>> m, const CtxPtr& ctx) {
  const std::size_t n = m.size();
  if (n == 0) return exact_const(ctx, 1);
  Series det = exact_const(ctx, 1);
  bool negate = false;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = n, pc = n;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (!m[i][j].is_zero() && m[i][j].valuation() < best) {
          best = m[i][j].valuation();
          pr = i;
          pc = j;
        }
    if (pr == n) {
      // Remaining block is zero at its precision; each column contributes at least its weakest precision.
      std::int64_t bound = 0;
      for (std::size_t j = k; j < n; ++j) {
        std::int64_t col = std::numeric_limits<std::int64_t>::max();
        for (std::size_t i = k; i < n; ++i) col = std::min(col, m[i][j].prec());
        bound += col;
      }
      const std::int64_t dv = det.is_zero() ? det.prec() : det.valuation();
      return Series(ctx, std::min(det.prec() + bound, dv + bound));
    }
    if (pr != k) {
      std::swap(m[pr], m[k]);
      negate = !negate;
    }
    if (pc != k) {
      for (auto& row : m) std::swap(row[pc], row[k]);
      negate = !negate;
    }
    const Series piv_inv = m[k][k].inv();
    det = det * m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k].is_zero() && m[i][k].prec() >= kExactPrec) continue;
      const Series f = m[i][k] * piv_inv;
      for (std::size_t j = k + 1; j < n; ++j) {
        if (m[k][j].is_zero() && m[k][j].prec() >= kExactPrec) continue;
        m[i][j] = m[i][j] - f * m[k][j];
      }
    }
  }
  return negate ? -det : det;
}

}  // namespace detail

/// Res(f, g) = lead(f)^{deg g} prod_{f(x)=0} g(x), via the Sylvester determinant.
inline Series resultant(const KPoly& f0, const KPoly& g0) {
  const KPoly f = f0.trimmed(), g = g0.trimmed();
  const auto& ctx = f.ctx();
  if (f.coeffs().back().is_zero() || g.coeffs().back().is_zero())
    fail(ErrorKind::InsufficientPrecision, "resultant: leading coefficient indistinguishable from zero");
  const int m = f.degree(), n = g.degree();
  if (m == 0 && n == 0) return exact_const(ctx, 1);
  if (m == 0) return f[0].pow(n);
  if (n == 0) return g[0].pow(m);
  const std::size_t size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<Series>> s(size, std::vector<Series>(size, exact_zero(ctx)));
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) s[r][r + i] = f[m - i];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) s[n + r][r + i] = g[n - i];
  return detail::series_det(std::move(s), ctx);
}

/// Monic polynomial of degree p^nu with an Eisenstein shape; a_k is the coefficient of X^{n-k}.
class EisensteinPoly {
 public:
  EisensteinPoly() = default;
  explicit EisensteinPoly(KPoly g) : g_(std::move(g)) {
    const auto& ctx = g_.ctx();
    const int n = g_.degree();
    p_ = ctx->p();
    if (n < 1) fail(ErrorKind::PreconditionViolated, "Eisenstein polynomial must have positive degree");
    nu_ = 0;
    for (int d = n; d > 1; d /= static_cast<int>(p_)) {
      if (d % static_cast<int>(p_) != 0) fail(ErrorKind::PreconditionViolated, "degree must be a power of p");
      ++nu_;
    }
    const Series& lead = g_[static_cast<std::size_t>(n)];
    if (lead.is_zero() || lead.valuation() != 0 || lead.coeff(0) != 1 || lead.high() > 1)
      fail(ErrorKind::PreconditionViolated, "Eisenstein polynomial must be monic");
    for (int k = 1; k <= n; ++k) {
      const Series& a = g_[static_cast<std::size_t>(n - k)];
      if (a.prec() < 1 || (!a.is_zero() && a.valuation() < 1))
        fail(ErrorKind::PreconditionViolated, "coefficient a_" + std::to_string(k) + " must lie in the maximal ideal");
    }
    const Series& an = g_[0];
    if (an.is_zero() || an.valuation() != 1) fail(ErrorKind::PreconditionViolated, "constant term must have valuation 1");
  }

  const KPoly& poly() const noexcept { return g_; }
  const CtxPtr& ctx() const { return g_.ctx(); }
  std::uint32_t p() const noexcept { return p_; }
  int nu() const noexcept { return nu_; }
  int n() const noexcept { return g_.degree(); }

  /// a_k for 1 <= k <= n; larger k follow a_{k+n} = t a_k.
  Series a(std::int64_t k) const {
    const std::int64_t n = this->n();
    if (k < 1) fail(ErrorKind::PreconditionViolated, "a_k needs k >= 1");
    const std::int64_t k1 = (k - 1) / n, k0 = k - k1 * n;
    return g_[static_cast<std::size_t>(n - k0)].shift(k1);
  }

  /// c_{i,h}: the coefficient of t^h in a_i.
  Elem c(std::int64_t i, std::int64_t h) const { return a(i).coeff(h); }

  /// Whether the constant term is exactly -t to its precision.
  bool is_rebased() const {
    const Series& an = g_[0];
    const Series target = Series::monomial(ctx(), ctx()->neg(1), 1, an.prec());
    return an == target;
  }

  /// Lower bound on v(a_i) for a single break b: f_i = ceil((b n - p^{v_p(i)} b + i) / n).
  static std::int64_t f_bound(std::int64_t i, std::int64_t b, std::int64_t p, std::int64_t n) {
    std::int64_t pv = 1;
    for (int v = vp_int(i, p); v > 0; --v) pv *= p;
    return detail::ceil_div(b * n - pv * b + i, n);
  }

 private:
  KPoly g_;
  std::uint32_t p_ = 0;
  int nu_ = 0;
};

/// N_{L/K}(A) = Res(g, A) for A in the power basis of K[X]/g.
inline Series norm(const EisensteinPoly& g, const KPoly& a) {
  if (a.degree() >= g.n()) fail(ErrorKind::PreconditionViolated, "norm needs deg A < deg g");
  return resultant(g.poly(), a);
}

namespace detail {

/// Characteristic polynomial det(X I - M), high-to-low coefficients, division-free (Berkowitz).
inline std::vector<Series> berkowitz(const std::vector<std::vector<Series>>& a, const CtxPtr& ctx) {
  const std::size_t n = a.size();
  std::vector<Series> vect{exact_const(ctx, 1), -a[0][0]};
  for (std::size_t r = 1; r < n; ++r) {
    // Column C = a[0..r-1][r], row R = a[r][0..r-1], S = leading r x r block.
    std::vector<Series> col(r);
    for (std::size_t i = 0; i < r; ++i) col[i] = a[i][r];
    std::vector<Series> toeplitz{exact_const(ctx, 1), -a[r][r]};
    for (std::size_t it = 0; it < r; ++it) {
      Series dot = exact_zero(ctx);
      for (std::size_t i = 0; i < r; ++i) dot = dot + a[r][i] * col[i];
      toeplitz.push_back(-dot);
      if (it + 1 < r) {
        std::vector<Series> next(r, exact_zero(ctx));
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) next[i] = next[i] + a[i][j] * col[j];
        col = std::move(next);
      }
    }
    std::vector<Series> nv(r + 2, exact_zero(ctx));
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j) nv[i] = nv[i] + toeplitz[i - j] * vect[j];
    vect = std::move(nv);
  }
  return vect;
}

}  // namespace detail

/// g_k: monic of degree n whose roots are the k-th powers of the roots of g.
inline KPoly power_char_poly(const EisensteinPoly& g, std::int64_t k) {
  if (k < 1 || k % g.p() == 0) fail(ErrorKind::KDivisibleByP, "power_char_poly needs k >= 1 with p not dividing k");
  const auto& ctx = g.ctx();
  const int n = g.n();
  // Matrix of multiplication by X^k in the basis 1, X, ..., X^{n-1}.
  std::vector<std::vector<Series>> m(n, std::vector<Series>(n, exact_zero(ctx)));
  std::vector<Series> cur(n, exact_zero(ctx));
  cur[0] = exact_const(ctx, 1);
  auto times_x = [&](const std::vector<Series>& v) {
    std::vector<Series> r(n, exact_zero(ctx));
    const Series top = v[n - 1];
    for (int i = n - 1; i > 0; --i) r[i] = v[i - 1];
    r[0] = exact_zero(ctx);
    for (int i = 0; i < n; ++i) r[i] = r[i] - top * g.poly()[i];
    return r;
  };
  for (std::int64_t i = 0; i < k; ++i) cur = times_x(cur);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) m[i][j] = cur[i];
    cur = times_x(cur);
  }
  auto hi_lo = detail::berkowitz(m, ctx);
  std::reverse(hi_lo.begin(), hi_lo.end());
  return KPoly(std::move(hi_lo));
}

/// N(1 - r pi^k) = r^{n} g_k(r^{-1}) = sum_i e_i r^i where g_k = sum_i e_i X^{n-i}.
inline Series norm_one_minus(const EisensteinPoly& g, const FieldElement& r, std::int64_t k) {
  const auto& ctx = g.ctx();
  if (r.is_zero()) return exact_const(ctx, 1);
  const KPoly gk = power_char_poly(g, k);
  const int n = g.n();
  Series acc = exact_zero(ctx);
  for (int i = 0; i <= n; ++i) acc = acc + gk[static_cast<std::size_t>(n - i)].scale(ctx->pow(r.value(), i));
  return acc;
}

/// Same norm, via the resultant of g with (1 - r X^k) mod g.
inline Series norm_one_minus_direct(const EisensteinPoly& g, const FieldElement& r, std::int64_t k) {
  const auto& ctx = g.ctx();
  std::vector<Series> c(static_cast<std::size_t>(k + 1), exact_zero(ctx));
  c[0] = exact_const(ctx, 1);
  c[static_cast<std::size_t>(k)] = exact_const(ctx, ctx->neg(r.value()));
  const KPoly a = poly_rem_monic(KPoly(std::move(c)), g.poly());
  return norm(g, a);
}

/// Re-expresses g in the uniformizer t' = -a_n, so that the constant term becomes -t'.
inline EisensteinPoly rebase(const EisensteinPoly& g) {
  const auto& ctx = g.ctx();
  const Series tprime = -g.poly()[0];
  const Series inv = revert(tprime);
  std::vector<Series> c;
  for (const auto& s : g.poly().coeffs()) {
    if (s.prec() >= kExactPrec && s.high() <= 1 && (s.is_zero() || s.low() >= 0)) {
      c.push_back(s);
      continue;
    }
    c.push_back(compose(s, inv));
  }
  c[0] = Series::monomial(ctx, ctx->neg(1), 1, kExactPrec);
  return EisensteinPoly(KPoly(std::move(c)));
}

}  // namespace raminsep
