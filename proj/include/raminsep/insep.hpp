#pragma once

// Indices of inseparability from a minimal polynomial or from the expansion
// of t in a uniformizer of L, the ramification break, and the Hasse-Herbrand
// function computed both from the indices and from the ramification groups.

#include <boost/rational.hpp>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "raminsep/errors.hpp"
#include "raminsep/localpoly.hpp"

namespace raminsep {

inline constexpr std::int64_t kInfinity = std::numeric_limits<std::int64_t>::max() / 4;

inline std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

struct IndexVector {
  int nu = 0;
  std::vector<std::int64_t> i;  // i_0, ..., i_nu

  bool operator==(const IndexVector& o) const { return nu == o.nu && i == o.i; }

  /// Checks i_nu = 0, monotonicity, and the run condition for v_p(i_j) < j.
  bool well_formed(std::int64_t p) const {
    if (static_cast<int>(i.size()) != nu + 1 || i.back() != 0) return false;
    for (int j = 0; j < nu; ++j)
      if (i[j + 1] > i[j]) return false;
    for (int j = 1; j <= nu; ++j) {
      if (i[j] == 0) continue;
      const int v = vp_int(i[j], p);
      if (v < j)
        for (int l = v; l < j; ++l)
          if (i[l] != i[j]) return false;
    }
    return true;
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t k = 0; k < i.size(); ++k) s += (k ? "," : "") + std::to_string(i[k]);
    return s + ")";
  }
};

/// i_j = min{ n v(a_k) - k : 1 <= k <= n, v_p(k) <= j }.
inline IndexVector indices_from_minpoly(const EisensteinPoly& g) {
  const std::int64_t n = g.n(), p = g.p();
  IndexVector iv;
  iv.nu = g.nu();
  for (int j = 0; j <= g.nu(); ++j) {
    std::int64_t best = kInfinity;
    std::int64_t unknown_floor = kInfinity;  // smallest value an undetermined coefficient could give
    for (std::int64_t k = 1; k <= n; ++k) {
      if (vp_int(k, p) > j) continue;
      const Series a = g.a(k);
      if (a.is_zero()) {
        if (a.prec() < kExactPrec) unknown_floor = std::min(unknown_floor, n * a.prec() - k);
        continue;
      }
      best = std::min(best, n * a.valuation() - k);
    }
    if (unknown_floor <= best)
      fail(ErrorKind::InsufficientPrecision, "minimal polynomial coefficients too imprecise for i_" + std::to_string(j));
    iv.i.push_back(best);
  }
  return iv;
}

/// The general relation i_j = min{ hat_i_{j'} + n e (j' - j) }; e = kInfinity gives hat_i unchanged.
inline IndexVector apply_absolute_ramification(const IndexVector& hat, std::int64_t n, std::int64_t e) {
  IndexVector iv = hat;
  for (int j = 0; j <= hat.nu; ++j)
    for (int jp = j + 1; jp <= hat.nu; ++jp)
      if (e < kInfinity) iv.i[j] = std::min(iv.i[j], hat.i[jp] + n * e * (jp - j));
  return iv;
}

/// ti_j = min{ h >= 0 : c_h != 0, v_p(h + n) <= j } where t = sum c_h pi^{h+n}.
/// `known_below` bounds the h for which c_h is known.
inline IndexVector indices_from_expansion(const std::map<std::int64_t, FieldElement>& c, int nu, std::int64_t p, std::int64_t known_below) {
  const std::int64_t n = ipow(p, nu);
  IndexVector iv;
  iv.nu = nu;
  for (int j = 0; j <= nu; ++j) {
    std::int64_t best = kInfinity;
    for (const auto& [h, v] : c) {
      if (h < 0 || h >= known_below || v.is_zero()) continue;
      if (vp_int(h + n, p) <= j) {
        best = h;
        break;
      }
    }
    if (best == kInfinity) fail(ErrorKind::InsufficientPrecision, "expansion too short to determine i_" + std::to_string(j));
    iv.i.push_back(best);
  }
  return iv;
}

/// Same, reading c_h off a series t(pi) with c_h the coefficient of pi^{h+n}.
inline IndexVector indices_from_expansion(const Series& t_in_pi, int nu) {
  const std::int64_t p = t_in_pi.ctx()->p();
  const std::int64_t n = ipow(p, nu);
  std::map<std::int64_t, FieldElement> c;
  for (std::int64_t e = std::max<std::int64_t>(t_in_pi.low(), n); e < t_in_pi.high(); ++e) {
    const Elem v = t_in_pi.coeff(e);
    if (v) c.emplace(e - n, FieldElement(t_in_pi.ctx(), v));
  }
  return indices_from_expansion(c, nu, p, t_in_pi.prec() - n);
}

/// b = i_0 / (p^nu - 1); must be a positive integer prime to p.
inline std::int64_t break_from_indices(const IndexVector& iv, std::int64_t p) {
  const std::int64_t n = ipow(p, iv.nu);
  if (iv.nu < 1 || iv.i.empty() || iv.i[0] % (n - 1) != 0) fail(ErrorKind::NotSingleBreak, "i_0 is not a multiple of p^nu - 1");
  const std::int64_t b = iv.i[0] / (n - 1);
  if (b < 1 || b % p == 0) fail(ErrorKind::NotSingleBreak, "break must be positive and prime to p");
  return b;
}

using Rational = boost::rational<std::int64_t>;

/// Continuous piecewise-linear function on [0, inf): vertices (x_k, y_k) with
/// slope[k] in force from x_k up to x_{k+1} (or infinity for the last).
struct PiecewiseLinear {
  std::vector<std::pair<Rational, Rational>> vertices;
  std::vector<Rational> slopes;

  bool operator==(const PiecewiseLinear& o) const { return vertices == o.vertices && slopes == o.slopes; }

  Rational operator()(const Rational& x) const {
    std::size_t k = 0;
    while (k + 1 < vertices.size() && vertices[k + 1].first <= x) ++k;
    return vertices[k].second + slopes[k] * (x - vertices[k].first);
  }

  /// y-intercepts of the lines carrying each segment.
  std::vector<Rational> intercepts() const {
    std::vector<Rational> r;
    for (std::size_t k = 0; k < slopes.size(); ++k) r.push_back(vertices[k].second - slopes[k] * vertices[k].first);
    return r;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t k = 0; k < slopes.size(); ++k) {
      const auto& [x, y] = vertices[k];
      s += "(" + std::to_string(x.numerator()) + "/" + std::to_string(x.denominator()) + "," + std::to_string(y.numerator()) + "/" +
           std::to_string(y.denominator()) + ") slope " + std::to_string(slopes[k].numerator()) + "/" +
           std::to_string(slopes[k].denominator()) + "; ";
    }
    return s;
  }
};

/// phi(x) = (1/n) min_j (i_j + p^j x), as an explicit lower envelope.
inline PiecewiseLinear phi_from_indices(const IndexVector& iv, std::int64_t p) {
  const std::int64_t n = ipow(p, iv.nu);
  struct Line {
    Rational c, s;
  };
  std::vector<Line> lines;
  for (int j = 0; j <= iv.nu; ++j) lines.push_back({Rational(iv.i[j], n), Rational(ipow(p, j), n)});
  auto value = [](const Line& l, const Rational& x) { return l.c + l.s * x; };
  PiecewiseLinear f;
  Rational x(0);
  // Line achieving the minimum just to the right of x: smallest value, then smallest slope.
  auto pick = [&](const Rational& at) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < lines.size(); ++k) {
      const Rational a = value(lines[k], at), b = value(lines[best], at);
      if (a < b || (a == b && lines[k].s < lines[best].s)) best = k;
    }
    return best;
  };
  std::size_t cur = pick(x);
  for (;;) {
    f.vertices.emplace_back(x, value(lines[cur], x));
    f.slopes.push_back(lines[cur].s);
    Rational next_x(-1);
    for (const auto& l : lines) {
      if (l.s >= lines[cur].s) continue;
      const Rational cross = (l.c - lines[cur].c) / (lines[cur].s - l.s);
      if (cross > x && (next_x < 0 || cross < next_x)) next_x = cross;
    }
    if (next_x < 0) break;
    x = next_x;
    cur = pick(x);
  }
  return f;
}

/// phi(x) = integral_0^x dt / |G_0 : G_t| for breaks (b_k, |G_{b_k}|) in increasing order of b.
inline PiecewiseLinear phi_from_breaks(const std::vector<std::pair<std::int64_t, std::int64_t>>& breaks) {
  PiecewiseLinear f;
  const std::int64_t n = breaks.empty() ? 1 : breaks.front().second;
  Rational x(0), y(0);
  for (const auto& [b, order] : breaks) {
    const Rational slope(order, n);
    if (f.slopes.empty() || f.slopes.back() != slope) {
      f.vertices.emplace_back(x, y);
      f.slopes.push_back(slope);
    }
    y += slope * (Rational(b) - x);
    x = Rational(b);
  }
  const Rational last(1, n);
  if (f.slopes.empty() || f.slopes.back() != last) {
    f.vertices.emplace_back(x, y);
    f.slopes.push_back(last);
  }
  return f;
}

}  // namespace raminsep
