#pragma once

// Dense linear algebra over F_p for small matrices.

#include <cstdint>
#include <utility>
#include <vector>

#include "raminsep/gf.hpp"

namespace raminsep {

using FpVec = std::vector<std::uint32_t>;
using FpMatrix = std::vector<FpVec>;

struct Echelon {
  FpMatrix rows;           // reduced row echelon form, nonzero rows only
  std::vector<std::size_t> pivots;
};

inline Echelon rref(FpMatrix m, std::uint32_t p) {
  Echelon out;
  if (m.empty()) return out;
  const std::size_t ncols = m.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] % p == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    const std::uint64_t inv = detail::fp_inv(m[r][c] % p, p);
    for (auto& x : m[r]) x = static_cast<std::uint32_t>(x % p * inv % p);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r) continue;
      const std::uint64_t f = m[i][c] % p;
      if (!f) continue;
      for (std::size_t j = 0; j < ncols; ++j)
        m[i][j] = static_cast<std::uint32_t>((m[i][j] % p + (p - f) * m[r][j]) % p);
    }
    out.pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  out.rows = std::move(m);
  return out;
}

inline std::size_t rank(const FpMatrix& m, std::uint32_t p) { return rref(m, p).rows.size(); }

/// Basis of {x : m x = 0}.
inline FpMatrix nullspace(const FpMatrix& m, std::size_t ncols, std::uint32_t p) {
  const Echelon e = rref(m, p);
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  FpMatrix basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    FpVec x(ncols, 0);
    x[free] = 1;
    for (std::size_t i = 0; i < e.rows.size(); ++i) x[e.pivots[i]] = (p - e.rows[i][free]) % p;
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Whether v lies in the row span of an echelon form.
inline bool in_span(const Echelon& e, FpVec v, std::uint32_t p) {
  for (std::size_t i = 0; i < e.rows.size(); ++i) {
    const std::uint64_t f = v[e.pivots[i]] % p;
    if (!f) continue;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = static_cast<std::uint32_t>((v[j] % p + (p - f) * e.rows[i][j]) % p);
  }
  for (auto x : v)
    if (x % p) return false;
  return true;
}

inline FpMatrix matmul(const FpMatrix& a, const FpMatrix& b, std::uint32_t p) {
  if (a.empty()) return {};
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b.front().size();
  FpMatrix c(n, FpVec(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      const std::uint64_t f = a[i][l] % p;
      if (!f) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] = static_cast<std::uint32_t>((c[i][j] + f * b[l][j]) % p);
    }
  return c;
}

inline FpMatrix transpose(const FpMatrix& a, std::size_t ncols) {
  FpMatrix t(ncols, FpVec(a.size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < ncols; ++j) t[j][i] = a[i][j];
  return t;
}

}  // namespace raminsep
