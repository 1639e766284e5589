// Continued fractions of rationals and real quadratic irrationals, with
// convergents and the classical badly-approximable constant.
#pragma once

#include <vector>

#include "qvs/binform.hpp"

namespace qvs {

struct ContinuedFraction {
  std::vector<Int> head;    // partial quotients before the period (all of them
                            // for a rational number)
  std::vector<Int> period;  // nonempty exactly for quadratic irrationals

  bool periodic() const { return !period.empty(); }
  /// k-th partial quotient with the period unrolled; throws for a rational
  /// number past the end.
  Int digit(size_t k) const;
  std::string to_string() const;
};

ContinuedFraction cf_expand(const Rat& x);
ContinuedFraction cf_expand(const QuadIrr& x);

struct Convergent {
  Int p, q;  // p/q in lowest terms, q >= 1
};

/// First `count` convergents (fewer for a rational with a short expansion).
std::vector<Convergent> convergents(const ContinuedFraction& cf, size_t count);

/// c = 1/(A + 2) with A the largest partial quotient at index >= 1:
/// |alpha - p/q| > c / q^2 for every rational p/q.  Periodic inputs only.
Rat badly_approximable_constant(const ContinuedFraction& cf);

}  // namespace qvs
