// Brute-force value-set engine: exhaustive enumeration over boxes with a
// certified completeness bound for definite leading forms, density counting
// against candidate growth classes, missing-progression-value search, annular
// sector lattice counts, and reducible-specialization counts.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qvs/binform.hpp"
#include "qvs/bipoly.hpp"

namespace qvs {

/// Distinct values of F over the box max(|x|,|y|) <= box, clipped to
/// [-range, range]. `exhaustive` means the box provably captures every value
/// of F(Z^2) in that window.
struct ValueTable {
  Int box;
  Int range;
  std::vector<Int> values;  // sorted ascending, no duplicates
  bool exhaustive = false;
  /// Aligned with values when requested: the first (x, y) in scan order
  /// (x ascending, then y ascending) attaining each value.
  std::vector<std::pair<Int, Int>> witnesses;

  bool contains(const Int& v) const;
  /// Number of listed values v with lo <= v <= hi.
  Int count_in(const Int& lo, const Int& hi) const;
};

/// Smallest B such that every value of F outside max(|x|,|y|) <= B provably
/// exceeds N. Exists only when the leading form of F is positive definite:
/// F(x,y) >= c_d m^d - c_R m^(d-1) for m = max(|x|,|y|) >= 1, with c_d a
/// certified chart minimum and c_R the coefficient mass of the lower part.
std::optional<Int> certified_box(const BiPoly& F, const Int& N);

/// Exact enumeration. Requires integer coefficients and box, range >= 1.
/// Throws std::runtime_error past the 1e8-point memory guard. band_rows is an
/// internal chunking width with no observable effect on the result.
ValueTable enumerate_values(const BiPoly& F, const Int& box, const Int& range,
                            bool keep_witnesses = false, int band_rows = 64);

enum class DensityClass {
  Sqrt,                 // c * N^(1/2)
  RootD,                // c * N^(1/d)
  LandauLogHalf,        // c * N / sqrt(log N)
  PowerOneMinusLambda,  // c * N^(1-lambda)
  Linear,               // c * N
};

const char* density_class_name(DensityClass cls);

/// Counts of attained values in [1, N] for each N, and the best-fitting
/// growth class. Counts are exact; only the fit uses floating point, and it
/// is diagnostic, never verdict-critical.
struct DensityFit {
  std::vector<std::pair<Int, Int>> counts;  // (N, #values in [1, N])
  std::vector<Int> boxes;                   // enumeration box per N
  std::vector<bool> exhaustive;             // per N
  DensityClass fitted = DensityClass::Sqrt;
  bool tie = false;                         // preferred class overrode the argmin
  std::vector<double> residuals;            // mean squared log residual per class
};

/// Ns must be strictly increasing. d is the degree used by RootD and lambda
/// the exponent used by PowerOneMinusLambda. When `preferred` fits within a
/// small margin of the best class it wins and the tie is recorded.
DensityFit density_table(const BiPoly& F, const std::vector<Int>& Ns, int d = 4,
                         const Rat& lambda = Rat(1, 4),
                         std::optional<DensityClass> preferred = std::nullopt);

/// CSV rows "N,count,exhaustive" with a header line.
std::string density_csv(const DensityFit& fit);

struct MissingValue {
  Int value;      // smallest element of {Cn : Cn >= D} not attained
  bool rigorous;  // true when backed by a certified enumeration box
};

/// Searches the progression {Cn : Cn >= D} for the smallest value F never
/// attains. budget caps the number of grid points enumerated. Returns nullopt
/// when every examined progression value is attained (inconclusive).
std::optional<MissingValue> missing_value_search(const BiPoly& F, const Int& C,
                                                 const Int& D,
                                                 const Int& budget = Int(100000000));

/// Lattice points in the annulus T <= sqrt(x^2+y^2) <= 2T lying within the
/// angular window |arg - xi| <= phi, tan(phi) = c / floor(T^(1/(2R))), on the
/// half-plane side of xi's canonical representative. All membership tests are
/// exact sign tests in Q or Q(sqrt(D)); no floating point.
Int sector_count(const Direction& xi, const Int& T, int R, const Rat& c);

/// Number of integers t0 in [-B, B] whose specialization Y(x, t0) is
/// reducible over Q or degenerates to degree <= 0. Degree-1 fibers count as
/// irreducible. When Y is linear in x, Y = Q(t)x - R(t) is rejected unless
/// gcd(Q, R) = 1 (otherwise every fiber is reducible).
Int reducible_specialization_count(const BiPoly& Y, const Int& B);

}  // namespace qvs
