#pragma once

// The Artin-Hasse exponential E_p, the series lambda, its inverse on U^1,
// and coordinates on the finite quotient W = U^1 / (U^1)^p U^{b+1}.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "raminsep/errors.hpp"
#include "raminsep/series.hpp"

namespace raminsep {

namespace detail {

inline int mobius(std::int64_t n) {
  int r = 1;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    n /= d;
    if (n % d == 0) return 0;
    r = -r;
  }
  if (n > 1) r = -r;
  return r;
}

inline std::uint64_t inverse_mod(std::int64_t a, std::int64_t mod) {
  std::int64_t g = mod, x = 0, x1 = 1, r = ((a % mod) + mod) % mod;
  while (r) {
    const std::int64_t q = g / r;
    std::int64_t t = g - q * r;
    g = r;
    r = t;
    t = x - q * x1;
    x = x1;
    x1 = t;
  }
  return static_cast<std::uint64_t>(((x % mod) + mod) % mod);
}

/// C(n, k) mod p by Lucas' theorem.
inline std::uint32_t binom_mod_p(std::uint64_t n, std::uint64_t k, std::uint32_t p) {
  std::uint64_t r = 1;
  while (n || k) {
    const std::uint64_t a = n % p, b = k % p;
    if (b > a) return 0;
    std::uint64_t num = 1, den = 1;
    for (std::uint64_t i = 0; i < b; ++i) {
      num = num * ((a - i) % p) % p;
      den = den * ((i + 1) % p) % p;
    }
    r = r * num % p * fp_inv(static_cast<std::uint32_t>(den), p) % p;
    n /= p;
    k /= p;
  }
  return static_cast<std::uint32_t>(r);
}

}  // namespace detail

/// Coefficients of E_p(X) mod X^N, reduced mod p.
inline std::vector<std::uint32_t> e_series(std::uint32_t p, std::int64_t n) {
  if (n < 1) fail(ErrorKind::PreconditionViolated, "e_series needs N >= 1");
  std::int64_t pl = 1;
  while (pl <= n) pl *= p;
  std::vector<std::uint32_t> e(static_cast<std::size_t>(n), 0);
  e[0] = 1;
  for (std::int64_t c = 1; c < n; ++c) {
    if (c % p == 0) continue;
    const int mu = detail::mobius(c);
    if (mu == 0) continue;
    // (1 - X^c)^{expo} with expo = -mu / c, taken mod p^L.
    const std::uint64_t cinv = detail::inverse_mod(c, pl);
    const std::uint64_t expo = mu == 1 ? (static_cast<std::uint64_t>(pl) - cinv) % pl : cinv;
    std::vector<std::uint32_t> factor(static_cast<std::size_t>(n), 0);
    for (std::int64_t k = 0; k * c < n; ++k) {
      std::uint32_t b = detail::binom_mod_p(expo, static_cast<std::uint64_t>(k), p);
      if (k % 2 == 1) b = (p - b) % p;
      factor[static_cast<std::size_t>(k * c)] = b;
    }
    std::vector<std::uint32_t> prod(static_cast<std::size_t>(n), 0);
    for (std::int64_t i = 0; i < n; ++i) {
      if (!e[i]) continue;
      for (std::int64_t j = 0; i + j < n; j += c)
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t(e[i]) * factor[j]) % p);
    }
    e = std::move(prod);
  }
  return e;
}

/// lambda(X) = X + X^p + X^{p^2} + ... mod X^N.
inline std::vector<std::uint32_t> lambda_series(std::uint32_t p, std::int64_t n) {
  std::vector<std::uint32_t> l(static_cast<std::size_t>(std::max<std::int64_t>(n, 0)), 0);
  for (std::int64_t e = 1; e < n; e *= p) l[static_cast<std::size_t>(e)] = 1;
  return l;
}

/// E_p(alpha) modulo t^prec, where prec defaults to the precision of alpha.
inline Series e_eval(const Series& alpha, std::int64_t prec = -1) {
  const auto& ctx = alpha.ctx();
  const std::int64_t n = prec < 0 ? alpha.prec() : std::min(prec, alpha.prec());
  if (!alpha.is_zero() && alpha.valuation() < 1) fail(ErrorKind::PreconditionViolated, "e_eval needs v(alpha) >= 1");
  if (alpha.is_zero() || alpha.low() >= n) return Series::constant(ctx, 1, n, alpha.var());
  const std::int64_t v = alpha.low();
  const std::int64_t deg = (n - 1) / v;  // terms alpha^d with d v < n
  const auto e = e_series(ctx->p(), deg + 1);
  Series acc = Series::constant(ctx, e[static_cast<std::size_t>(deg)], n, alpha.var());
  for (std::int64_t d = deg - 1; d >= 0; --d)
    acc = acc.mul_to(alpha, n) + Series::constant(ctx, e[static_cast<std::size_t>(d)], n, alpha.var());
  return acc.truncate(n);
}

/// alpha with E_p(alpha) = u modulo t^N, N = prec(u).
inline Series lambda_inverse(const Series& u) {
  const auto& ctx = u.ctx();
  const std::int64_t n = u.prec();
  if (n < 1 || u.coeff(0) != 1) fail(ErrorKind::PreconditionViolated, "lambda_inverse needs u = 1 mod t");
  Series alpha(ctx, n, u.var());
  for (;;) {
    const Series diff = u - e_eval(alpha, n);
    if (diff.is_zero()) return alpha;
    const std::int64_t e = diff.valuation();
    alpha = alpha + Series::monomial(ctx, diff.coeff(e), e, n, u.var());
  }
}

/// Coordinates in W = U^1/(U^1)^p U^{b+1} with respect to E_p(theta_l t^k),
/// 1 <= k <= b, p not dividing k, theta_l = a^l. Entry (k, l) sits at slot(k) m + l.
class WVector {
 public:
  WVector() = default;
  WVector(std::uint32_t p, int m, std::int64_t b) : p_(p), m_(m), b_(b), x_(static_cast<std::size_t>(dim(p, m, b)), 0) {}

  static std::int64_t slots(std::uint32_t p, std::int64_t b) { return b - b / p; }
  static std::int64_t dim(std::uint32_t p, int m, std::int64_t b) { return slots(p, b) * m; }
  /// Position of k among 1..b with p not dividing k.
  static std::int64_t slot(std::uint32_t p, std::int64_t k) { return k - 1 - (k - 1) / p; }
  static std::int64_t slot_level(std::uint32_t p, std::int64_t s) { return s + 1 + s / (p - 1); }

  std::uint32_t p() const noexcept { return p_; }
  int m() const noexcept { return m_; }
  std::int64_t b() const noexcept { return b_; }
  const std::vector<std::uint32_t>& coords() const noexcept { return x_; }
  std::vector<std::uint32_t>& coords() noexcept { return x_; }

  std::uint32_t& at(std::int64_t k, int l) { return x_.at(static_cast<std::size_t>(slot(p_, k) * m_ + l)); }
  std::uint32_t at(std::int64_t k, int l) const { return x_.at(static_cast<std::size_t>(slot(p_, k) * m_ + l)); }

  bool is_zero() const {
    for (auto v : x_)
      if (v) return false;
    return true;
  }

  friend WVector operator+(const WVector& a, const WVector& b) {
    WVector r = a;
    for (std::size_t i = 0; i < r.x_.size(); ++i) r.x_[i] = (a.x_[i] + b.x_[i]) % a.p_;
    return r;
  }

  bool operator==(const WVector& o) const { return x_ == o.x_ && b_ == o.b_; }

 private:
  std::uint32_t p_ = 2;
  int m_ = 1;
  std::int64_t b_ = 0;
  std::vector<std::uint32_t> x_;
};

/// Strips the lowest nontrivial term of u level by level until it lies in U^{b+1}.
inline WVector unit_coordinates(const Series& u, std::int64_t b) {
  const auto& ctx = u.ctx();
  const FieldCtx& f = *ctx;
  const std::uint32_t p = f.p();
  const int m = f.m();
  const std::int64_t n = b + 1;
  if (u.prec() < n) fail(ErrorKind::InsufficientPrecision, "unit_coordinates needs u known mod t^{b+1}");
  if (u.coeff(0) != 1) fail(ErrorKind::PreconditionViolated, "unit_coordinates needs u = 1 mod t");
  WVector w(p, m, b);
  Series r = u.truncate(n);
  for (std::int64_t j = 1; j <= b; ++j) {
    const Elem c = r.coeff(j);
    if (!c) continue;
    if (j % p == 0) {
      r = r * Series::from_terms(ctx, {{0, 1}, {j, c}}, n).inv();
      continue;
    }
    const auto x = f.coords(c);
    Series div = Series::constant(ctx, 1, n);
    for (int l = 0; l < m; ++l) {
      if (!x[l]) continue;
      w.at(j, l) = x[l];
      div = div * e_eval(Series::monomial(ctx, f.basis(l), j, n)).pow(x[l]);
    }
    r = r * div.inv();
  }
  return w;
}

}  // namespace raminsep
