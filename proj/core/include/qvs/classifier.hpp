// The case analysis. analyze() routes an input polynomial of total degree
// <= 4 through exact sign, gcd, and slope-balance gates to one of four
// verdicts, each carrying a certificate that can be replayed point by point:
// descent witnesses are exactly evaluated lattice points, sparse verdicts
// carry the counting data and certified bounds behind them, compositions are
// polynomial identities, and reducible gaps record the divisor-pinned line
// and curve analyses. Every verdict implies F(Z^2) != {Cn : Cn >= D} for all
// C >= 1, D.
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qvs/binform.hpp"
#include "qvs/bipoly.hpp"
#include "qvs/curves.hpp"
#include "qvs/oracle.hpp"

namespace qvs {

enum class Verdict {
  UnboundedBelow,   // inf F = -inf: misses all small progression values
  SparseValues,     // too few values in [1, N] to cover a progression
  Composition,      // F = outer(inner): value set inside a thin univariate image
  ReducibleGap,     // F factors; progression values force a divisor pinning
  HomogeneousEmpirical,  // defensive fallback; no known input reaches it
};

const char* verdict_name(Verdict v);

struct UnsupportedDegree : std::runtime_error {
  int degree;
  explicit UnsupportedDegree(int d)
      : std::runtime_error("total degree " + std::to_string(d) +
                           " outside the supported range 1..4"),
        degree(d) {}
};

/// A branch's own precondition failed to reproduce: always a bug in the
/// routing, never a property of the input.
struct InternalInconsistency : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WitnessPoint {
  Int x, y;
  Int value;           // N(x, y), evaluated exactly
  std::string recipe;  // how the point was constructed
};

/// Strictly decreasing values with the last one <= target.
struct DescentWitness {
  std::vector<WitnessPoint> points;
  Int target;
  std::string family;
};

/// Q(x, y) = Q2(x + q1, y + q2) + q3 for a quadratic with invertible Q2.
struct SquareCompletion {
  Rat q1, q2, q3;
  BinaryForm q2form;
};

/// A line A x + B y = C on which the restriction of N is constant.
struct ExceptionalLine {
  Int A, B, C;
  Int value;
};

/// Exact lattice counts in annular sectors shrinking like T^(-1/(2R)) around
/// a zero direction of the leading form.
struct SectorSample {
  Direction xi;
  int R = 1;
  Rat c = 1;
  std::vector<std::pair<Int, Int>> counts;  // (T, count)
};

struct SparseCertificate {
  DensityClass cls = DensityClass::Sqrt;
  Rat lambda = Rat(1, 4);  // PowerOneMinusLambda exponent
  int root_degree = 4;     // RootD degree
  DensityFit fit;
  std::vector<SectorSample> sectors;
  /// Certified enumeration box: every value <= max N of the fit comes from it.
  std::optional<Int> box;
  /// A progression value (C = 1, D = 0) never attained.
  std::optional<MissingValue> missing;
  std::vector<ExceptionalLine> lines;
  /// Certified bound: N >= -floor_bound everywhere on Z^2 (when present).
  std::optional<Rat> lower_bound;
  std::vector<std::string> clauses;  // per-direction contributions
};

/// N = outer(inner) with inner integer-valued on Z^2.
struct CompositionCertificate {
  std::vector<Rat> outer;  // outer[k] multiplies t^k
  BiPoly inner;
};

/// Restriction table for the family of lines L = t: rows[j](t) is the
/// coefficient of z^j in N(t*base + z*dir).
struct LineFamilyTable {
  BinaryForm line;
  std::pair<Int, Int> base, dir;
  std::vector<UniPoly> rows;
};

struct CurveFiberReport {
  Int level;  // the fiber K = level
  PlaneCurveReport curve;
  std::string consequence;
};

struct GapCertificate {
  BiPoly factor_a;  // N = factor_a * factor_b
  BiPoly factor_b;
  UnimodularMap frame;  // coordinates of the tables and fibers
  std::vector<LineFamilyTable> lines;
  std::vector<CurveFiberReport> fibers;
  std::string generic_fiber;  // argument covering all other fiber levels
  std::vector<std::string> theory_tags;
  /// (B, count) pairs from reducible-specialization scans.
  std::vector<std::pair<Int, Int>> empirical;
};

struct TraceStep {
  std::string node;
  std::vector<std::pair<std::string, std::string>> data;
};

struct TreeNode {
  std::string id;
  std::string description;
  std::vector<std::string> children;  // empty for leaves
};

/// The full routing graph; every Report::trace walks edges of this tree.
const std::vector<TreeNode>& decision_tree();

struct AnalyzeOptions {
  Int witness_target = -1000000;
  size_t pair_budget = 60;        // convergent pairs per direction
  bool with_density = true;       // run enumeration-backed density tables
  std::vector<Int> density_Ns = {Int(1000), Int(10000), Int(100000)};
  bool with_sectors = true;
  std::vector<Int> sector_Ts = {Int(1024), Int(2048), Int(4096)};
};

struct Report {
  BiPoly input;
  BiPoly normalized;  // scale*(input - shift): integral, zero constant term
  Normalization norm;
  Verdict verdict = Verdict::HomogeneousEmpirical;
  std::string leaf;  // terminal node of the trace
  std::vector<TraceStep> trace;
  std::optional<DescentWitness> descent;
  std::optional<SparseCertificate> sparse;
  std::optional<CompositionCertificate> composition;
  std::optional<GapCertificate> gap;
  std::optional<SquareCompletion> completion;
  std::string statement;
};

Report analyze(const BiPoly& F, const AnalyzeOptions& opt = {});

/// Degree <= 2 classifier (also used for the degree-2 leaf of analyze).
Report classify_quadratic(const BiPoly& F, const AnalyzeOptions& opt = {});

/// Searches for F = outer(inner) with inner linear or an integer-valued
/// quadratic; returns the identity when one exists.
std::optional<CompositionCertificate> detect_composition(const BiPoly& F);

/// The completion behind the positive-definite quadratic leaf; nullopt when
/// the quadratic part is degenerate.
std::optional<SquareCompletion> complete_square_quadratic(const BiPoly& Q);

}  // namespace qvs
