// Sylvester resultants over Q.
#pragma once

#include "qvs/unipoly.hpp"

namespace qvs {

/// det of the Sylvester matrix with p's coefficient rows (descending) first.
/// Both inputs nonzero; resultant of two constants is 1.
Rat resultant(const UniPoly& p, const UniPoly& q);

}  // namespace qvs
