#pragma once

// Truncated Laurent series over F_{p^m} with absolute precision.
//
// A Series stores c_e t^e for val <= e < prec and is known modulo t^prec.
// Precision rules:
//   add, sub        min(N_x, N_y)
//   mul             min(N_x + v_y, N_y + v_x), where v of a zero series is its N
//   inv             N - 2v
//   derivative      N - 1
//   pth_root        ceil(N / p)
//   frobenius       p N
//   compose(x, g)   at most N_x * v(g), further capped by the precision of g

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "raminsep/errors.hpp"
#include "raminsep/gf.hpp"

namespace raminsep {

namespace detail {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

}  // namespace detail

class Series {
 public:
  Series() = default;

  /// Zero modulo t^prec.
  Series(CtxPtr ctx, std::int64_t prec, std::string var = "t") : ctx_(std::move(ctx)), var_(std::move(var)), val_(prec), prec_(prec) {}

  static Series monomial(const CtxPtr& ctx, Elem c, std::int64_t e, std::int64_t prec, std::string var = "t") {
    Series s(ctx, prec, std::move(var));
    if (c != 0 && e < prec) {
      s.val_ = e;
      s.coeffs_.assign(1, c);
    }
    return s;
  }

  static Series constant(const CtxPtr& ctx, Elem c, std::int64_t prec, std::string var = "t") {
    return monomial(ctx, c, 0, prec, std::move(var));
  }

  /// Builds from coefficients starting at exponent `low`; anything at or above prec is dropped.
  static Series from_coeffs(const CtxPtr& ctx, std::int64_t low, std::vector<Elem> c, std::int64_t prec, std::string var = "t") {
    Series s(ctx, prec, std::move(var));
    if (low + static_cast<std::int64_t>(c.size()) > prec) c.resize(static_cast<std::size_t>(std::max<std::int64_t>(0, prec - low)));
    s.val_ = low;
    s.coeffs_ = std::move(c);
    s.normalize();
    return s;
  }

  static Series from_terms(const CtxPtr& ctx, const std::map<std::int64_t, Elem>& terms, std::int64_t prec, std::string var = "t") {
    Series s(ctx, prec, std::move(var));
    if (terms.empty()) return s;
    const std::int64_t lo = terms.begin()->first;
    const std::int64_t hi = std::min(terms.rbegin()->first + 1, prec);
    if (hi <= lo) return s;
    std::vector<Elem> c(static_cast<std::size_t>(hi - lo), 0);
    for (const auto& [e, v] : terms)
      if (e < prec) c[static_cast<std::size_t>(e - lo)] = ctx->add(c[static_cast<std::size_t>(e - lo)], v);
    return from_coeffs(ctx, lo, std::move(c), prec, s.var_);
  }

  const CtxPtr& ctx() const noexcept { return ctx_; }
  const std::string& var() const noexcept { return var_; }
  std::int64_t prec() const noexcept { return prec_; }
  /// Lowest stored exponent; equals prec for a series indistinguishable from zero.
  std::int64_t low() const noexcept { return val_; }
  const std::vector<Elem>& raw() const noexcept { return coeffs_; }
  std::int64_t high() const noexcept { return val_ + static_cast<std::int64_t>(coeffs_.size()); }

  bool is_zero() const noexcept { return coeffs_.empty(); }

  std::int64_t valuation() const {
    if (is_zero()) fail(ErrorKind::InsufficientPrecision, "valuation of a series indistinguishable from zero");
    return val_;
  }

  /// Valuation, or prec when indistinguishable from zero (a lower bound).
  std::int64_t valuation_bound() const noexcept { return val_; }

  Elem coeff(std::int64_t e) const {
    if (e >= prec_) fail(ErrorKind::InsufficientPrecision, "coefficient of t^" + std::to_string(e) + " beyond precision " + std::to_string(prec_));
    if (e < val_ || e >= high()) return 0;
    return coeffs_[static_cast<std::size_t>(e - val_)];
  }

  FieldElement coefficient(std::int64_t e) const { return {ctx_, coeff(e)}; }

  Series with_var(std::string v) const {
    Series s = *this;
    s.var_ = std::move(v);
    return s;
  }

  /// Lowers the precision to n (no-op if already lower).
  Series truncate(std::int64_t n) const {
    if (n >= prec_) return *this;
    Series s = *this;
    s.prec_ = n;
    if (s.high() > n) s.coeffs_.resize(static_cast<std::size_t>(std::max<std::int64_t>(0, n - s.val_)));
    s.normalize();
    return s;
  }

  /// Declares more precision (the caller knows the tail is exactly zero).
  Series extend(std::int64_t n) const {
    Series s = *this;
    if (n > s.prec_) {
      if (s.coeffs_.empty()) s.val_ = n;
      s.prec_ = n;
    }
    return s;
  }

  /// Multiplication by t^k.
  Series shift(std::int64_t k) const {
    Series s = *this;
    s.val_ += k;
    s.prec_ += k;
    return s;
  }

  Series scale(Elem c) const {
    if (c == 0) return Series(ctx_, prec_, var_);
    Series s = *this;
    for (auto& x : s.coeffs_) x = ctx_->mul(x, c);
    return s;
  }

  Series operator-() const {
    Series s = *this;
    for (auto& x : s.coeffs_) x = ctx_->neg(x);
    return s;
  }

  friend Series operator+(const Series& x, const Series& y) { return x.add_impl(y, false); }
  friend Series operator-(const Series& x, const Series& y) { return x.add_impl(y, true); }

  friend Series operator*(const Series& x, const Series& y) {
    const std::int64_t prec = std::min(x.prec_ + y.val_, y.prec_ + x.val_);
    return x.mul_to(y, prec);
  }

  /// Product computed only below exponent `cap` (and never beyond the sound precision).
  Series mul_to(const Series& y, std::int64_t cap) const {
    const std::int64_t prec = std::min({cap, prec_ + y.val_, y.prec_ + val_});
    Series r(ctx_, prec, var_);
    if (is_zero() || y.is_zero()) return r;
    const std::int64_t lo = val_ + y.val_;
    const std::int64_t top = std::min(prec, high() + y.high() - 1);
    if (lo >= top) return r;
    const std::size_t len = static_cast<std::size_t>(top - lo);
    const FieldCtx& f = *ctx_;
    std::vector<Elem> out(len, 0);
    const std::size_t nx = std::min(coeffs_.size(), len), ny = std::min(y.coeffs_.size(), len);
    if (f.m() == 1) {
      std::vector<std::uint64_t> acc(len, 0);
      const std::uint64_t p = f.p();
      for (std::size_t i = 0; i < nx; ++i) {
        const std::uint64_t a = coeffs_[i];
        if (!a) continue;
        const std::size_t lim = std::min(ny, len - i);
        for (std::size_t j = 0; j < lim; ++j) acc[i + j] += a * y.coeffs_[j];
        if ((i & 1023) == 1023)
          for (auto& v : acc) v %= p;
      }
      for (std::size_t k = 0; k < len; ++k) out[k] = static_cast<Elem>(acc[k] % p);
    } else {
      for (std::size_t i = 0; i < nx; ++i) {
        const Elem a = coeffs_[i];
        if (!a) continue;
        const std::size_t lim = std::min(ny, len - i);
        for (std::size_t j = 0; j < lim; ++j) {
          const Elem b = y.coeffs_[j];
          if (b) out[i + j] = f.add(out[i + j], f.mul(a, b));
        }
      }
    }
    r.val_ = lo;
    r.coeffs_ = std::move(out);
    r.normalize();
    return r;
  }

  Series inv() const {
    if (is_zero()) fail(ErrorKind::DivisionByIndistinguishableZero, "inverse of a series indistinguishable from zero");
    const std::int64_t v = val_;
    const std::int64_t prec = prec_ - 2 * v;
    const std::int64_t rel = prec_ - v;  // unit part known to this many terms
    const FieldCtx& f = *ctx_;
    const Elem u0inv = f.inv(coeffs_[0]);
    if (coeffs_.size() == 1) return monomial(ctx_, u0inv, -v, prec, var_);
    if (rel > (std::int64_t(1) << 30))
      fail(ErrorKind::InsufficientPrecision, "inverse of a series without a finite precision");
    std::vector<Elem> r(static_cast<std::size_t>(rel), 0);
    if (rel > 0) r[0] = u0inv;
    for (std::int64_t k = 1; k < rel; ++k) {
      Elem s = 0;
      const std::int64_t lim = std::min<std::int64_t>(k, static_cast<std::int64_t>(coeffs_.size()) - 1);
      for (std::int64_t i = 1; i <= lim; ++i) {
        const Elem c = coeffs_[static_cast<std::size_t>(i)];
        if (c) s = f.add(s, f.mul(c, r[static_cast<std::size_t>(k - i)]));
      }
      r[static_cast<std::size_t>(k)] = f.neg(f.mul(s, u0inv));
    }
    return from_coeffs(ctx_, -v, std::move(r), prec, var_);
  }

  friend Series operator/(const Series& x, const Series& y) { return x * y.inv(); }

  Series pow(std::int64_t e) const {
    if (e < 0) return inv().pow(-e);
    if (e == 0) return constant(ctx_, 1, is_zero() ? prec_ : prec_ - val_, var_);
    Series base = *this;
    Series result;
    bool first = true;
    while (e) {
      if (e & 1) {
        result = first ? base : result * base;
        first = false;
      }
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  /// x^p, computed coefficientwise.
  Series frobenius_power() const {
    const std::int64_t p = ctx_->p();
    Series s(ctx_, prec_ * p, var_);
    if (is_zero()) return s;
    std::vector<Elem> c(static_cast<std::size_t>((high() - val_ - 1) * p + 1), 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i * static_cast<std::size_t>(p)] = ctx_->frob(coeffs_[i], 1);
    return from_coeffs(ctx_, val_ * p, std::move(c), prec_ * p, var_);
  }

  Series derivative() const {
    Series s(ctx_, prec_ - 1, var_);
    if (is_zero()) return s;
    std::vector<Elem> c(coeffs_.size(), 0);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const std::int64_t e = val_ + static_cast<std::int64_t>(i);
      c[i] = ctx_->mul(coeffs_[i], ctx_->from_int(e));
    }
    return from_coeffs(ctx_, val_ - 1, std::move(c), prec_ - 1, var_);
  }

  /// Coefficient of t^{-1}.
  FieldElement residue() const {
    if (prec_ <= -1) fail(ErrorKind::InsufficientPrecision, "residue not determined at precision " + std::to_string(prec_));
    return coefficient(-1);
  }

  Series pth_root() const {
    const std::int64_t p = ctx_->p();
    const std::int64_t prec = detail::ceil_div(prec_, p);
    std::map<std::int64_t, Elem> terms;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (!coeffs_[i]) continue;
      const std::int64_t e = val_ + static_cast<std::int64_t>(i);
      if (e % p != 0) fail(ErrorKind::NotAPthPower, "term t^" + std::to_string(e) + " is not a p-th power");
      terms[e / p] = ctx_->frob(coeffs_[i], -1);
    }
    return from_terms(ctx_, terms, prec, var_);
  }

  /// Applies the Frobenius of F_q to each coefficient (n-fold), leaving exponents alone.
  Series map_coeffs_frob(std::int64_t n) const {
    Series s = *this;
    for (auto& c : s.coeffs_) c = ctx_->frob(c, n);
    return s;
  }

  bool operator==(const Series& o) const {
    return prec_ == o.prec_ && val_ == o.val_ && coeffs_ == o.coeffs_;
  }

  /// Equal on the common known range.
  bool agrees(const Series& o) const { return (*this - o).is_zero(); }

 private:
  void normalize() {
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
    if (lead == coeffs_.size()) {
      coeffs_.clear();
      val_ = prec_;
      return;
    }
    if (lead) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
      val_ += static_cast<std::int64_t>(lead);
    }
    while (coeffs_.back() == 0) coeffs_.pop_back();
  }

  Series add_impl(const Series& y, bool subtract) const {
    const std::int64_t prec = std::min(prec_, y.prec_);
    Series r(ctx_, prec, var_);
    const bool zx = is_zero(), zy = y.is_zero();
    if (zx && zy) return r;
    std::int64_t lo = std::min(zx ? y.val_ : val_, zy ? val_ : y.val_);
    std::int64_t hi = std::min(prec, std::max(zx ? lo : high(), zy ? lo : y.high()));
    if (hi <= lo) return r;
    std::vector<Elem> c(static_cast<std::size_t>(hi - lo), 0);
    const FieldCtx& f = *ctx_;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const std::int64_t e = val_ + static_cast<std::int64_t>(i);
      if (e >= hi) break;
      c[static_cast<std::size_t>(e - lo)] = coeffs_[i];
    }
    for (std::size_t i = 0; i < y.coeffs_.size(); ++i) {
      const std::int64_t e = y.val_ + static_cast<std::int64_t>(i);
      if (e >= hi) break;
      auto& slot = c[static_cast<std::size_t>(e - lo)];
      slot = subtract ? f.sub(slot, y.coeffs_[i]) : f.add(slot, y.coeffs_[i]);
    }
    r.val_ = lo;
    r.coeffs_ = std::move(c);
    r.normalize();
    return r;
  }

  CtxPtr ctx_;
  std::string var_ = "t";
  std::int64_t val_ = 0;
  std::vector<Elem> coeffs_;
  std::int64_t prec_ = 0;
};

/// Substitutes t := g into x. Needs v(g) >= 1; if x has negative exponents g is inverted.
inline Series compose(const Series& x, const Series& g) {
  const auto& ctx = x.ctx();
  if (g.is_zero()) fail(ErrorKind::InsufficientPrecision, "substituted series indistinguishable from zero");
  const std::int64_t w = g.valuation();
  if (w < 1) fail(ErrorKind::PreconditionViolated, "compose needs v(g) >= 1");
  const std::int64_t target = x.prec() * w;
  if (x.is_zero()) return Series(ctx, std::min(target, g.prec() - w + x.prec() * w), g.var());
  const std::int64_t v = x.low();
  // x = t^v P(t); P(g) is known modulo g^{N-v}.
  const std::int64_t pcap = (x.prec() - v) * w;
  const auto& c = x.raw();
  Series acc = Series::constant(ctx, c.back(), pcap, g.var());
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    acc = acc.mul_to(g, pcap) + Series::constant(ctx, c[i], pcap, g.var());
  }
  if (v == 0) return acc.truncate(target);
  return (acc * g.pow(v)).truncate(target);
}

/// Compositional inverse: h with g(h(u)) = u + O(u^N), N = prec(g).
inline Series revert(const Series& g) {
  if (g.is_zero() || g.valuation() != 1) fail(ErrorKind::NotAUniformizer, "revert needs v(g) = 1");
  const auto& ctx = g.ctx();
  const std::int64_t n = g.prec();
  const Series u = Series::monomial(ctx, 1, 1, n + 1, g.var());
  const Series dg = g.derivative();
  Series h = Series::monomial(ctx, ctx->inv(g.coeff(1)), 1, std::min<std::int64_t>(n, 2), g.var());
  std::int64_t known = std::min<std::int64_t>(n, 2);
  while (known < n) {
    const std::int64_t next = std::min<std::int64_t>(n, 2 * known);
    const Series hh = h.extend(next);
    const Series err = compose(g.truncate(next), hh) - u.truncate(next);
    const Series d = compose(dg.truncate(next), hh);
    h = (hh - (err * d.inv()).truncate(next)).truncate(next);
    known = next;
  }
  return h.truncate(n);
}

}  // namespace raminsep
