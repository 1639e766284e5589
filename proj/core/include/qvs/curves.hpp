// Integer points on plane cubic and conic curves: genus classification with
// singular points counted at infinity, line-pencil parametrizations, Mobius
// elimination of a degree-one coordinate, and exact conic solvability via
// Pell bounds.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qvs/bipoly.hpp"
#include "qvs/unipoly.hpp"

namespace qvs {

enum class CurveClass {
  ReducibleOverQ,   // a rational component exists
  QbarReducible,    // >= 2 singular points: splits over the closure
  GenusZero,        // exactly one singular point; parametrized
  GenusOne,         // smooth projective cubic
};

const char* curve_class_name(CurveClass c);

/// x = R1/Q1, y = R2/Q2 with P(x(t), y(t)) = 0 as an exact identity after
/// clearing denominators.
struct CurveParam {
  UniPoly R1, Q1, R2, Q2;
};

/// A singular point of the projective closure: affine when w = 1, at
/// infinity when w = 0 (then (x, y) is the direction).
struct SingularPoint {
  Rat x, y;
  int w;
};

struct PlaneCurveReport {
  CurveClass cls = CurveClass::GenusOne;
  /// Rational components, each a nonconstant polynomial factor.
  std::vector<BiPoly> components;
  /// Rational singular points found (complete for cls != ReducibleOverQ).
  std::vector<SingularPoint> singular;
  /// Count over the closure, affine plus infinity.
  int singular_count = 0;
  std::optional<CurveParam> param;  // GenusZero
  std::string note;
};

/// P nonzero of total degree 3, squarefree content removed by the caller.
PlaneCurveReport cubic_curve_analysis(const BiPoly& P);

/// Integer points of the parametrized curve x = (r t + s)/(u t + v),
/// y = R2(t)/Q2(t) when the x-map is a nonconstant Mobius map. Eliminating t
/// leaves y = Rt2(x)/Qt2(x); an integer point forces Qt2(x) to divide the
/// resultant bound, which pins x to a finite divisor set unless Qt2 is
/// constant (then y is the constant R2/Q2 and the curve carries a horizontal
/// integer line exactly when that value is an integer).
struct MobiusImage {
  bool finite = true;
  std::optional<Rat> constant_y;           // deg R2 = deg Q2 = 0 case
  UniPoly Rt2, Qt2;                        // y after eliminating t
  Int divisor_bound = 0;                   // nonzero: Qt2(x) must divide it
  std::vector<std::pair<Int, Int>> points; // exhaustive when finite
};

MobiusImage mobius_integer_points(const UniPoly& R1, const UniPoly& Q1,
                                  const UniPoly& R2, const UniPoly& Q2);

/// Exact decision for integer points on a conic (irreducible total degree 2).
/// kind: "ellipse" (definite part, exhaustive list), "parabola" (residue
/// classes; infinite when any class admits solutions), "hyperbola" (Pell
/// reduction V^2 - Delta U^2 = c0 with congruence-constrained automorph
/// orbits).
struct ConicReport {
  std::string kind;
  bool any_points = false;
  bool infinite = false;
  /// When infinite: |x| is unbounded along the family, with both signs
  /// attained unless stated otherwise in note.
  bool x_unbounded = false;
  std::vector<std::pair<Int, Int>> points;  // all of them when finite
  std::string note;
};

ConicReport conic_integer_points(const BiPoly& P);

}  // namespace qvs
