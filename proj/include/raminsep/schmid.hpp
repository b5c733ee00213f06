#pragma once

// Schmid's formula for the Artin-Schreier / class field pairing:
// [beta, eta) = Tr(Res(beta * eta' / eta dt)).

#include <cstdint>
#include <vector>

#include "raminsep/errors.hpp"
#include "raminsep/linalg.hpp"
#include "raminsep/series.hpp"

namespace raminsep {

inline std::uint32_t pairing(const Series& beta, const Series& eta) {
  if (eta.is_zero()) fail(ErrorKind::DivisionByIndistinguishableZero, "pairing with eta indistinguishable from zero");
  const Series dlog = eta.derivative() * eta.inv();
  const Series w = beta * dlog;
  return trace_to_prime(w.residue());
}

inline FpMatrix pairing_matrix(const std::vector<Series>& betas, const std::vector<Series>& etas) {
  FpMatrix m(betas.size(), FpVec(etas.size(), 0));
  for (std::size_t i = 0; i < betas.size(); ++i)
    for (std::size_t j = 0; j < etas.size(); ++j) m[i][j] = pairing(betas[i], etas[j]);
  return m;
}

}  // namespace raminsep
