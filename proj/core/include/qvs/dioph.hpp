// Diophantine constructions: convergent pairs along a direction, Pell
// fundamental solutions, form automorphs, and automorph orbits confined to a
// congruence class.
#pragma once

#include <optional>
#include <vector>

#include "qvs/binform.hpp"
#include "qvs/contfrac.hpp"

namespace qvs {

struct ApproxPair {
  Int u, v;  // u >= 1; v/u is a convergent of the slope
};

/// Convergent-based integer points hugging the line of an irrational-slope
/// direction: |slope * u - v| < 1/u holds exactly for each returned pair.
std::vector<ApproxPair> direction_pairs(const Direction& xi, size_t count);

/// Fundamental solution (p, q) of p^2 - N q^2 = 1 with q >= 1;
/// N > 1 and not a perfect square.
std::pair<Int, Int> pell_plus_one(const Int& N);

/// A nontrivial SL2(Z) automorph M of an integral indefinite binary quadratic
/// form H (disc > 0, not a square): H(M (x,y)) = H(x,y), entries from the
/// Pell solution for the discriminant.
UnimodularMap form_automorph(const BinaryForm& H);

/// Orbit points M^t z0, t = t0, t0+s, t0+2s, ..., all congruent to
/// (m1, m2) mod d; s is the period of the orbit mod d.  When `backwards`,
/// M^{-1} is iterated instead (the orbit hugs the other zero direction).
/// Empty result when the class is never hit.
std::vector<std::pair<Int, Int>> automorph_orbit_in_class(
    const UnimodularMap& M, std::pair<Int, Int> z0, const Int& d, const Int& m1,
    const Int& m2, size_t count, bool backwards);

}  // namespace qvs
