#pragma once

// Text forms of field elements, Laurent series in t, and polynomials in X.
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := int | '(' fe ')' | 'a' ('^' int)? | 't' ('^' int)? | 'X' ('^' int)? | 'O(t^' int ')' ('*X' ('^' int)?)?
//   fe     := polynomial in 'a' with integer coefficients
// 'a' is the class of x modulo the defining polynomial of F_q.

#include <cctype>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "raminsep/errors.hpp"
#include "raminsep/gf.hpp"
#include "raminsep/localpoly.hpp"
#include "raminsep/series.hpp"

namespace raminsep {

namespace detail {

class Parser {
 public:
  Parser(CtxPtr ctx, std::string_view s) : ctx_(std::move(ctx)), s_(s) {}

  struct Sum {
    std::map<std::pair<std::int64_t, std::int64_t>, Elem> terms;  // (X power, t power) -> coefficient
    std::map<std::int64_t, std::int64_t> prec;                    // X power -> N from a term O(t^N)*X^k
    std::map<std::int64_t, std::size_t> o_offset;

    std::int64_t prec_at(std::int64_t xe) const {
      const auto it = prec.find(xe);
      return it == prec.end() ? kExactPrec : it->second;
    }
  };

  Sum expr(bool allow_x) {
    Sum out;
    bool neg = false;
    skip();
    if (peek() == '+' || peek() == '-') neg = get() == '-';
    for (;;) {
      term(out, neg, allow_x);
      skip();
      if (pos_ >= s_.size()) break;
      const char c = peek();
      if (c != '+' && c != '-') error("expected '+' or '-'");
      neg = get() == '-';
    }
    return out;
  }

  Elem field_element() {
    const FieldCtx& f = *ctx_;
    Elem acc = 0;
    bool neg = false;
    skip();
    if (peek() == '+' || peek() == '-') neg = get() == '-';
    for (;;) {
      Elem c = fe_term();
      if (neg) c = f.neg(c);
      acc = f.add(acc, c);
      skip();
      if (pos_ >= s_.size() || peek() == ')') break;
      const char ch = peek();
      if (ch != '+' && ch != '-') error("expected '+' or '-'");
      neg = get() == '-';
    }
    return acc;
  }

  bool at_end() {
    skip();
    return pos_ >= s_.size();
  }

  [[noreturn]] void error(const std::string& what, ErrorKind kind = ErrorKind::ParseError) const {
    throw ParseError(kind, pos_, what);
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() { return s_[pos_++]; }
  void expect(char c) {
    skip();
    if (peek() != c) error(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::int64_t integer(bool allow_sign) {
    skip();
    bool neg = false;
    if (allow_sign && (peek() == '-' || peek() == '+')) {
      neg = get() == '-';
      skip();
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) error("expected an integer");
    std::int64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (get() - '0');
      if (v > (std::int64_t(1) << 40)) error("integer too large");
    }
    return neg ? -v : v;
  }

  std::int64_t exponent() {
    skip();
    if (peek() != '^') return 1;
    ++pos_;
    skip();
    if (peek() == '(') {
      ++pos_;
      const std::int64_t e = integer(true);
      expect(')');
      return e;
    }
    return integer(true);
  }

  // int, int*a^k, a^k, (int*)a
  Elem fe_term() {
    const FieldCtx& f = *ctx_;
    skip();
    Elem c = 1;
    bool have = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      c = f.from_int(integer(false));
      have = true;
      skip();
      if (peek() != '*') return c;
      ++pos_;
      skip();
    }
    if (peek() == 'a') {
      ++pos_;
      const std::int64_t e = exponent();
      if (e < 0) error("negative power of a");
      return f.mul(c, f.pow(f.gen(), e));
    }
    if (std::isalpha(static_cast<unsigned char>(peek()))) error(std::string("unknown symbol '") + peek() + "'", ErrorKind::UnknownSymbol);
    if (have) error("expected 'a'");
    error("expected a field element");
  }

  void term(Sum& out, bool neg, bool allow_x) {
    const FieldCtx& f = *ctx_;
    Elem coef = 1;
    std::int64_t xe = 0, te = 0;
    bool first = true;
    for (;;) {
      skip();
      const char c = peek();
      if (c == 'O' && first) {
        const std::size_t at = pos_;
        ++pos_;
        expect('(');
        skip();
        if (peek() != 't') error("expected 't' in O(...)");
        ++pos_;
        const std::int64_t e = exponent();
        expect(')');
        std::int64_t xe_o = 0;
        skip();
        if (peek() == '*') {
          ++pos_;
          skip();
          if (peek() != 'X' || !allow_x) error("expected 'X' after O(...)*");
          ++pos_;
          xe_o = exponent();
        }
        if (out.prec.count(xe_o)) error("more than one O(...) term for the same power of X");
        out.prec[xe_o] = e;
        out.o_offset[xe_o] = at;
        return;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        coef = f.mul(coef, f.from_int(integer(false)));
      } else if (c == '(') {
        ++pos_;
        coef = f.mul(coef, field_element());
        expect(')');
      } else if (c == 'a') {
        ++pos_;
        const std::int64_t e = exponent();
        if (e < 0) error("negative power of a");
        coef = f.mul(coef, f.pow(f.gen(), e));
      } else if (c == 't') {
        ++pos_;
        te += exponent();
      } else if (c == 'X') {
        if (!allow_x) error("'X' is not allowed here", ErrorKind::UnknownSymbol);
        ++pos_;
        const std::int64_t e = exponent();
        if (e < 0) error("negative power of X");
        xe += e;
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        error(std::string("unknown symbol '") + c + "'", ErrorKind::UnknownSymbol);
      } else {
        error("expected a term");
      }
      first = false;
      skip();
      if (peek() != '*') break;
      ++pos_;
    }
    if (neg) coef = f.neg(coef);
    auto& slot = out.terms[{xe, te}];
    slot = f.add(slot, coef);
  }

  CtxPtr ctx_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

inline void check_below_prec(const detail::Parser::Sum& s) {
  for (const auto& [k, c] : s.terms)
    if (c && k.second >= s.prec_at(k.first)) throw ParseError(ErrorKind::ParseError, s.o_offset.at(k.first), "term at or beyond the stated O(t^N)");
}

}  // namespace detail

inline FieldElement parse_field_element(const CtxPtr& ctx, std::string_view text) {
  detail::Parser ps(ctx, text);
  const Elem v = ps.field_element();
  if (!ps.at_end()) ps.error("trailing input");
  return {ctx, v};
}

/// A Laurent series in t; exact unless an O(t^N) term is present or `prec` is given.
inline Series parse_series(const CtxPtr& ctx, std::string_view text, std::int64_t prec = kExactPrec) {
  detail::Parser ps(ctx, text);
  const auto sum = ps.expr(false);
  detail::check_below_prec(sum);
  std::map<std::int64_t, Elem> terms;
  for (const auto& [k, c] : sum.terms) terms[k.second] = ctx->add(terms[k.second], c);
  return Series::from_terms(ctx, terms, std::min(prec, sum.prec_at(0)));
}

/// A polynomial in X over Laurent series in t. A constant leading coefficient is
/// kept exact; the others get precision `prec` or their stated O(t^N)*X^k.
inline KPoly parse_poly(const CtxPtr& ctx, std::string_view text, std::int64_t prec = kExactPrec) {
  detail::Parser ps(ctx, text);
  const auto sum = ps.expr(true);
  detail::check_below_prec(sum);
  std::int64_t deg = 0;
  for (const auto& [k, c] : sum.terms)
    if (c) deg = std::max(deg, k.first);
  for (const auto& [xe, n] : sum.prec) deg = std::max(deg, xe);
  std::vector<std::map<std::int64_t, Elem>> cs(static_cast<std::size_t>(deg + 1));
  for (const auto& [k, c] : sum.terms) {
    auto& slot = cs[static_cast<std::size_t>(k.first)][k.second];
    slot = ctx->add(slot, c);
  }
  std::vector<Series> out;
  for (std::int64_t i = 0; i <= deg; ++i) {
    std::map<std::int64_t, Elem> t = cs[static_cast<std::size_t>(i)];
    for (auto it = t.begin(); it != t.end();) it = it->second ? std::next(it) : t.erase(it);
    const bool top = i == deg && t.size() == 1 && t.begin()->first == 0 && !sum.prec.count(i);
    out.push_back(Series::from_terms(ctx, t, top ? kExactPrec : std::min(prec, sum.prec_at(i))));
  }
  return KPoly(std::move(out));
}

namespace detail {

inline std::string coef_prefix(const FieldCtx& f, Elem c, bool bare) {
  if (c == 1 && !bare) return "";
  std::string s = f.to_string(c);
  if (f.m() > 1 && !f.in_prime_field(c)) s = "(" + s + ")";
  return bare ? s : s + "*";
}

inline std::string monomial_text(const FieldCtx& f, Elem c, std::int64_t xe, std::int64_t te) {
  std::string vars;
  auto add = [&](const char* v, std::int64_t e) {
    if (e == 0) return;
    if (!vars.empty()) vars += "*";
    vars += v;
    if (e != 1) vars += "^" + std::to_string(e);
  };
  add("t", te);
  add("X", xe);
  if (vars.empty()) return coef_prefix(f, c, true);
  return coef_prefix(f, c, false) + vars;
}

}  // namespace detail

/// Terms in increasing powers of t, then O(t^N) for a finite precision.
inline std::string to_text(const Series& s) {
  const FieldCtx& f = *s.ctx();
  std::string out;
  for (std::int64_t e = s.low(); e < s.high(); ++e) {
    const Elem c = s.coeff(e);
    if (!c) continue;
    out += (out.empty() ? "" : " + ") + detail::monomial_text(f, c, 0, e);
  }
  if (s.prec() < kExactPrec) out += (out.empty() ? "" : " + ") + std::string("O(t^") + std::to_string(s.prec()) + ")";
  return out.empty() ? "0" : out;
}

/// Terms in decreasing powers of X, each coefficient followed by its O(t^N)*X^k.
inline std::string to_text(const KPoly& g) {
  const FieldCtx& f = *g.ctx();
  std::string out;
  for (int i = g.degree(); i >= 0; --i) {
    const Series& c = g[static_cast<std::size_t>(i)];
    for (std::int64_t e = c.low(); e < c.high(); ++e) {
      const Elem v = c.coeff(e);
      if (!v) continue;
      out += (out.empty() ? "" : " + ") + detail::monomial_text(f, v, i, e);
    }
    if (c.prec() < kExactPrec) {
      std::string o = "O(t^" + std::to_string(c.prec()) + ")";
      if (i == 1) o += "*X";
      if (i > 1) o += "*X^" + std::to_string(i);
      out += (out.empty() ? "" : " + ") + o;
    }
  }
  return out.empty() ? "0" : out;
}

inline std::string to_text(const FieldElement& x) { return x.to_string(); }

}  // namespace raminsep
