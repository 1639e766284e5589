// Complete factorization over Q for the degrees arising here (<= 6):
// rational roots, then undetermined-coefficient quadratic and cubic splits
// with Mignotte-style coefficient bounds.
#pragma once

#include <vector>

#include "qvs/unipoly.hpp"

namespace qvs {

struct UniFactor {
  UniPoly f;  // primitive integral, positive leading coefficient, irreducible over Q
  int mult;
};

struct UniFactorization {
  Rat unit;
  std::vector<UniFactor> factors;  // sorted by (degree, ascending coefficient list)
  UniPoly product() const;
};

/// p nonzero, degree <= 6.
UniFactorization uni_factor(const UniPoly& p);

/// degree >= 1.
bool is_irreducible(const UniPoly& p);

/// Yun decomposition: pairwise-coprime squarefree parts with multiplicities.
std::vector<UniFactor> squarefree_decomposition(const UniPoly& p);

}  // namespace qvs
