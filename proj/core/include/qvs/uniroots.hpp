// Exact real-root counting, isolation, and certified interval bounds
// via Sturm chains.
#pragma once

#include <optional>
#include <vector>

#include "qvs/unipoly.hpp"

namespace qvs {

/// Sturm chain of the squarefree part of p.
std::vector<UniPoly> sturm_chain(const UniPoly& p);

/// Distinct real roots of p in the closed interval [a, b], a <= b.
int count_real_roots(const UniPoly& p, const Rat& a, const Rat& b);

/// Distinct real roots of p on all of R.
int count_real_roots(const UniPoly& p);

/// Strict bound: every real root r of p satisfies |r| < cauchy_bound(p).
Rat cauchy_bound(const UniPoly& p);

struct RootInterval {
  Rat lo, hi;   // lo == hi exactly when the root is rational and pinned
  bool exact;
};

/// Isolating intervals for the distinct real roots of p, sorted increasing.
/// Postcondition: closed intervals are pairwise disjoint (hi_i < lo_{i+1}),
/// and non-exact intervals have irrational-or-unpinned root strictly inside
/// with non-root endpoints.
std::vector<RootInterval> isolate_real_roots(const UniPoly& p);

/// Halve the width of an isolating interval `steps` times, preserving the
/// isolation invariants.  `sf` must be the squarefree part used to isolate.
void refine_interval(const UniPoly& sf, RootInterval& iv, int steps);

/// A rational c with 0 < c and p >= c on [lo, hi], certified by a Sturm
/// no-root count for p - c; found by halving from 1.  nullopt if no candidate
/// within max_halvings certifies (in particular when min p <= 0).
std::optional<Rat> certified_lower_bound(const UniPoly& p, const Rat& lo, const Rat& hi,
                                         int max_halvings = 60);

/// Some rational t with p(t) < 0, when p attains negative values.
std::optional<Rat> find_negative_point(const UniPoly& p);

/// Minimum of p over the integers, when it exists (even degree, positive
/// leading coefficient, or constant).  Returns argmin and value.
std::optional<std::pair<Int, Rat>> integer_minimum(const UniPoly& p);

}  // namespace qvs
