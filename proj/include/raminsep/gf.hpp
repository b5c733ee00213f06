#pragma once

// Arithmetic in F_{p^m}.
//
// Elements are packed as integer codes: the coordinate vector (c_0, ..., c_{m-1})
// with respect to the power basis 1, a, ..., a^{m-1} maps to sum c_i p^i. The
// prime subfield is therefore the set of codes 0..p-1. Multiplication and
// inversion go through log/antilog tables built once per context; addition in
// non-prime fields uses a Zech table. Fields are limited to p^m <= 2^16.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "raminsep/errors.hpp"

namespace raminsep {

using Elem = std::uint32_t;

class FieldCtx;
using CtxPtr = std::shared_ptr<const FieldCtx>;

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Dense polynomials over F_p, constant-first.
using FpPoly = std::vector<std::uint32_t>;

inline void fp_trim(FpPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline std::uint32_t fp_inv(std::uint32_t a, std::uint32_t p) {
  // Fermat; p is small.
  std::uint64_t r = 1, b = a % p;
  for (std::uint32_t e = p - 2; e; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint32_t>(r);
}

inline FpPoly fp_rem(FpPoly f, const FpPoly& g, std::uint32_t p) {
  fp_trim(f);
  const std::size_t dg = g.size() - 1;
  const std::uint32_t lc_inv = fp_inv(g.back(), p);
  while (f.size() >= g.size()) {
    const std::uint64_t c = std::uint64_t(f.back()) * lc_inv % p;
    const std::size_t shift = f.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i)
      f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + (p - c) * g[i]) % p);
    fp_trim(f);
  }
  return f;
}

inline bool fp_irreducible(const FpPoly& f, std::uint32_t p) {
  const int m = static_cast<int>(f.size()) - 1;
  if (m <= 1) return m == 1;
  for (int d = 1; 2 * d <= m; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      FpPoly g(d + 1);
      std::uint64_t x = idx;
      for (int i = 0; i < d; ++i, x /= p) g[i] = static_cast<std::uint32_t>(x % p);
      g[d] = 1;
      if (fp_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Context for F_{p^m}: modulus, tables and the prime p. Immutable once built.
class FieldCtx {
 public:
  /// Builds F_{p^m}. Without an override the modulus is the lexicographically
  /// least monic irreducible of degree m, comparing coefficient lists
  /// constant-first.
  static CtxPtr make(std::uint32_t p, int m, std::optional<std::vector<std::uint32_t>> modulus = std::nullopt) {
    return CtxPtr(new FieldCtx(p, m, std::move(modulus)));
  }

  std::uint32_t p() const noexcept { return p_; }
  int m() const noexcept { return m_; }
  std::uint32_t q() const noexcept { return q_; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }
  /// The class of the indeterminate `a` (a root of the modulus).
  Elem gen() const noexcept { return gen_; }

  Elem from_int(std::int64_t v) const noexcept {
    const std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Elem>(r < 0 ? r + p_ : r);
  }

  Elem add(Elem a, Elem b) const noexcept {
    if (m_ == 1) {
      const Elem s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    if (p_ == 2) return a ^ b;
    if (a == 0) return b;
    if (b == 0) return a;
    const std::uint32_t la = log_[a], lb = log_[b];
    const std::uint32_t d = lb >= la ? lb - la : lb + (q_ - 1) - la;
    const std::int32_t z = zech_[d];
    if (z < 0) return 0;
    return exp_[la + static_cast<std::uint32_t>(z)];
  }

  Elem neg(Elem a) const noexcept {
    if (a == 0 || p_ == 2) return a;
    if (m_ == 1) return p_ - a;
    return exp_[log_[a] + (q_ - 1) / 2];
  }

  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const noexcept {
    if (a == 0 || b == 0) return 0;
    if (m_ == 1) return static_cast<Elem>(std::uint64_t(a) * b % p_);
    return exp_[log_[a] + log_[b]];
  }

  Elem inv(Elem a) const {
    if (a == 0) fail(ErrorKind::DivisionByIndistinguishableZero, "inverse of zero in F_q");
    return exp_[(q_ - 1) - log_[a]];
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem pow(Elem a, std::int64_t e) const {
    if (e == 0) return 1;
    if (a == 0) {
      if (e < 0) fail(ErrorKind::DivisionByIndistinguishableZero, "negative power of zero");
      return 0;
    }
    const std::int64_t order = q_ - 1;
    std::int64_t r = (static_cast<std::int64_t>(log_[a]) * (e % order)) % order;
    if (r < 0) r += order;
    return exp_[static_cast<std::uint32_t>(r)];
  }

  /// x^{p^n}; n is taken mod m so negative n gives inverse Frobenius.
  Elem frob(Elem a, std::int64_t n) const noexcept {
    if (a == 0 || m_ == 1) return a;
    std::int64_t k = n % m_;
    if (k < 0) k += m_;
    std::uint64_t e = 1;
    for (std::int64_t i = 0; i < k; ++i) e = e * p_ % (q_ - 1);
    return exp_[static_cast<std::uint32_t>(std::uint64_t(log_[a]) * e % (q_ - 1))];
  }

  /// Tr_{F_q/F_p}, returned as a prime-field code in [0, p).
  Elem trace(Elem a) const noexcept {
    Elem s = 0;
    Elem x = a;
    for (int i = 0; i < m_; ++i) {
      s = add(s, x);
      x = frob(x, 1);
    }
    return s;
  }

  std::vector<std::uint32_t> coords(Elem a) const {
    std::vector<std::uint32_t> c(m_);
    for (int i = 0; i < m_; ++i, a /= p_) c[i] = a % p_;
    return c;
  }

  Elem from_coords(const std::vector<std::uint32_t>& c) const {
    Elem v = 0;
    for (int i = m_ - 1; i >= 0; --i) v = v * p_ + (i < static_cast<int>(c.size()) ? c[i] % p_ : 0);
    return v;
  }

  /// a^i as an element (the i-th power-basis vector).
  Elem basis(int i) const noexcept {
    Elem v = 1;
    for (int k = 0; k < i; ++k) v *= p_;
    return v;
  }

  bool in_prime_field(Elem a) const noexcept { return a < p_; }

  std::string to_string(Elem a) const {
    if (m_ == 1) return std::to_string(a);
    const auto c = coords(a);
    std::string out;
    for (int i = m_ - 1; i >= 0; --i) {
      if (c[i] == 0) continue;
      if (!out.empty()) out += '+';
      if (i == 0) {
        out += std::to_string(c[i]);
        continue;
      }
      if (c[i] != 1) out += std::to_string(c[i]) + "*";
      out += 'a';
      if (i > 1) out += '^' + std::to_string(i);
    }
    return out.empty() ? "0" : out;
  }

  bool same_field(const FieldCtx& o) const noexcept { return p_ == o.p_ && m_ == o.m_ && modulus_ == o.modulus_; }

 private:
  FieldCtx(std::uint32_t p, int m, std::optional<std::vector<std::uint32_t>> modulus) : p_(p), m_(m) {
    if (!detail::is_prime(p)) fail(ErrorKind::PreconditionViolated, "characteristic must be prime");
    if (m < 1) fail(ErrorKind::PreconditionViolated, "extension degree must be positive");
    std::uint64_t q = 1;
    for (int i = 0; i < m; ++i) {
      q *= p;
      if (q > (1u << 16)) fail(ErrorKind::PreconditionViolated, "field too large (p^m > 2^16)");
    }
    q_ = static_cast<std::uint32_t>(q);
    if (modulus) {
      auto f = *modulus;
      for (auto& c : f) c %= p;
      if (f.size() != static_cast<std::size_t>(m) + 1 || f.back() != 1 || !detail::fp_irreducible(f, p))
        fail(ErrorKind::PreconditionViolated, "modulus override must be monic irreducible of degree m");
      modulus_ = std::move(f);
    } else {
      modulus_ = least_irreducible();
    }
    gen_ = m_ == 1 ? static_cast<Elem>((p_ - modulus_[0]) % p_) : static_cast<Elem>(p_);
    build_tables();
  }

  std::vector<std::uint32_t> least_irreducible() const {
    for (std::uint64_t idx = 0; idx < q_; ++idx) {
      detail::FpPoly f(m_ + 1);
      std::uint64_t x = idx;
      // c_0 is the most significant digit of the enumeration order.
      for (int i = m_ - 1; i >= 0; --i, x /= p_) f[i] = static_cast<std::uint32_t>(x % p_);
      f[m_] = 1;
      if (detail::fp_irreducible(f, p_)) return f;
    }
    fail(ErrorKind::PreconditionViolated, "no irreducible polynomial found");
  }

  Elem slow_mul(Elem a, Elem b) const {
    const auto ca = coords(a), cb = coords(b);
    detail::FpPoly prod(2 * m_ - 1, 0);
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j) prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t(ca[i]) * cb[j]) % p_);
    auto r = detail::fp_rem(prod, modulus_, p_);
    r.resize(m_, 0);
    return from_coords(r);
  }

  void build_tables() {
    const std::uint32_t order = q_ - 1;
    log_.assign(q_, 0);
    exp_.assign(2 * std::size_t(order) + 1, 0);
    if (q_ == 2) {
      exp_[0] = exp_[1] = exp_[2] = 1;
      zech_.assign(1, -1);
      return;
    }
    std::vector<Elem> powers(order);
    for (Elem cand = 1; cand < q_; ++cand) {
      Elem x = 1;
      std::uint32_t k = 0;
      bool ok = true;
      for (; k < order; ++k) {
        if (k > 0 && x == 1) {
          ok = false;
          break;
        }
        powers[k] = x;
        x = slow_mul(x, cand);
      }
      if (ok && x == 1) break;
    }
    for (std::uint32_t k = 0; k < order; ++k) {
      exp_[k] = powers[k];
      exp_[k + order] = powers[k];
      log_[powers[k]] = k;
    }
    exp_[2 * std::size_t(order)] = powers[0];
    // zech[d] = log(1 + g^d), or -1 when 1 + g^d = 0.
    zech_.assign(order, -1);
    for (std::uint32_t d = 0; d < order; ++d) {
      auto c = coords(powers[d]);
      c[0] = (c[0] + 1) % p_;
      const Elem s = from_coords(c);
      zech_[d] = s == 0 ? -1 : static_cast<std::int32_t>(log_[s]);
    }
  }

  std::uint32_t p_;
  int m_;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  Elem gen_ = 0;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> exp_;
  std::vector<std::int32_t> zech_;
};

/// A value of F_{p^m} bundled with its context.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(CtxPtr ctx, Elem v) : ctx_(std::move(ctx)), v_(v) {}

  static FieldElement from_int(const CtxPtr& ctx, std::int64_t v) { return {ctx, ctx->from_int(v)}; }
  static FieldElement gen(const CtxPtr& ctx) { return {ctx, ctx->gen()}; }

  const CtxPtr& ctx() const noexcept { return ctx_; }
  Elem value() const noexcept { return v_; }
  bool is_zero() const noexcept { return v_ == 0; }
  std::vector<std::uint32_t> coordinates() const { return ctx_->coords(v_); }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) { return {a.ctx_, a.ctx_->add(a.v_, b.v_)}; }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) { return {a.ctx_, a.ctx_->sub(a.v_, b.v_)}; }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) { return {a.ctx_, a.ctx_->mul(a.v_, b.v_)}; }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return {a.ctx_, a.ctx_->div(a.v_, b.v_)}; }
  FieldElement operator-() const { return {ctx_, ctx_->neg(v_)}; }
  friend bool operator==(const FieldElement& a, const FieldElement& b) { return a.v_ == b.v_; }

  FieldElement pow(std::int64_t e) const { return {ctx_, ctx_->pow(v_, e)}; }
  std::string to_string() const { return ctx_->to_string(v_); }

  friend std::ostream& operator<<(std::ostream& os, const FieldElement& x) { return os << x.to_string(); }

 private:
  CtxPtr ctx_;
  Elem v_ = 0;
};

inline FieldElement frobenius(const FieldElement& x, std::int64_t n) { return {x.ctx(), x.ctx()->frob(x.value(), n)}; }

inline std::uint32_t trace_to_prime(const FieldElement& x) { return x.ctx()->trace(x.value()); }

/// First power-basis element with nonzero trace; spans a complement of the
/// image of x -> x^p - x.
inline FieldElement wp_complement(const CtxPtr& ctx) {
  for (int i = 0; i < ctx->m(); ++i) {
    const Elem e = ctx->basis(i);
    if (ctx->trace(e) != 0) return {ctx, e};
  }
  fail(ErrorKind::PreconditionViolated, "trace form vanishes on the power basis");
}

/// The copy of F_{p^nu} inside F_{p^m}, sorted by code, or nullopt when nu does not divide m.
inline std::optional<std::vector<FieldElement>> subfield_elements(const CtxPtr& ctx, int nu) {
  if (nu < 1) fail(ErrorKind::PreconditionViolated, "subfield degree must be positive");
  if (ctx->m() % nu != 0) return std::nullopt;
  std::vector<FieldElement> out;
  for (Elem x = 0; x < ctx->q(); ++x)
    if (ctx->frob(x, nu) == x) out.emplace_back(ctx, x);
  return out;
}

/// Solves A x = b over F_q by Gaussian elimination. Throws SingularSystem.
inline std::vector<Elem> solve_linear(const FieldCtx& f, std::vector<std::vector<Elem>> a, std::vector<Elem> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) fail(ErrorKind::SingularSystem, "singular linear system over F_q");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    const Elem inv = f.inv(a[col][col]);
    for (std::size_t j = col; j < n; ++j) a[col][j] = f.mul(a[col][j], inv);
    b[col] = f.mul(b[col], inv);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Elem c = a[r][col];
      for (std::size_t j = col; j < n; ++j) a[r][j] = f.sub(a[r][j], f.mul(c, a[col][j]));
      b[r] = f.sub(b[r], f.mul(c, b[col]));
    }
  }
  return b;
}

/// Finds y_0..y_{nu-1} with sum_j y_j v^{p^{nu-j}} = value(v) at each point v.
/// The Moore matrix (v_i^{p^{nu-j}}) is invertible iff the points are
/// F_p-independent.
inline std::vector<FieldElement> moore_solve(const std::vector<FieldElement>& points,
                                             const std::vector<FieldElement>& values, int nu) {
  if (points.size() != values.size() || points.size() != static_cast<std::size_t>(nu) || nu < 1)
    fail(ErrorKind::PreconditionViolated, "moore_solve needs nu points and nu values");
  const auto& ctx = points.front().ctx();
  const FieldCtx& f = *ctx;
  std::vector<std::vector<Elem>> a(nu, std::vector<Elem>(nu));
  std::vector<Elem> rhs(nu);
  for (int i = 0; i < nu; ++i) {
    for (int j = 0; j < nu; ++j) {
      // v^{p^{nu-j}}: frob by nu-j.
      a[i][j] = f.frob(points[i].value(), nu - j);
    }
    rhs[i] = values[i].value();
  }
  const auto y = solve_linear(f, std::move(a), std::move(rhs));
  std::vector<FieldElement> out;
  out.reserve(nu);
  for (Elem e : y) out.emplace_back(ctx, e);
  return out;
}

}  // namespace raminsep
