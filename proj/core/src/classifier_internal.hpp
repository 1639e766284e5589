// Shared internals of the case analysis: working context, descent assembly,
// line-family scans, and the branch handlers split across translation units.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qvs/classifier.hpp"

namespace qvs {
namespace detail {

struct Ctx {
  const BiPoly& N;
  BinaryForm F4, F3, F2, F1;  // homogeneous parts of N
  const AnalyzeOptions& opt;
  Report& rep;
};

BinaryForm hom_part(const BiPoly& P, int d);

void step(Report& rep, std::string node,
          std::vector<std::pair<std::string, std::string>> data = {});

struct Candidate {
  Int x, y;
  std::string recipe;
};

/// Evaluates candidates in order and keeps the first strictly decreasing run
/// of length >= 3 that reaches the target (trimmed to at most six points).
std::optional<DescentWitness> build_descent(const BiPoly& N,
                                            const std::vector<Candidate>& cands,
                                            const Int& target, std::string family);

/// Same, but a missing run is a routing bug.
DescentWitness require_descent(const BiPoly& N, const std::vector<Candidate>& cands,
                               const Int& target, std::string family);

/// Coefficient rows of N(t*base + z*dir) for the line family L = t; base and
/// dir are integer points with L(base) = 1 and L(dir) = 0, dir primitive.
LineFamilyTable line_table(const BiPoly& N, const BinaryForm& L);

/// A line of the family whose restriction is unbounded below: odd effective
/// degree or negative leading coefficient at some integer t.
struct BadLine {
  Int t;
  UniPoly restriction;  // N along the line, in the parameter z
  std::string why;
};
std::optional<BadLine> find_descending_line(const LineFamilyTable& tab);

/// Candidates along a found line, mapped to input coordinates.
std::vector<Candidate> line_candidates(const LineFamilyTable& tab, const BadLine& bad,
                                       int count);

/// Lines of the family on which the restriction is constant.
std::vector<ExceptionalLine> constant_lines(const LineFamilyTable& tab);

/// Density table + sector samples for a sparse verdict, honoring options.
SparseCertificate make_sparse(Ctx& c, DensityClass cls, const Rat& lambda, int R,
                              const std::vector<Direction>& dirs);

/// Integer roots of p, ascending.
std::vector<Int> integer_roots(const UniPoly& p);

/// Some integer t with p(t) < 0, or certified absence.
std::optional<Int> negative_integer_point(const UniPoly& p);

std::vector<Rat> outer_from_pair(const Rat& a2, const Rat& a1, const Rat& a0);

/// N rewritten so a linear factor becomes the first coordinate.
struct Aligned {
  UnimodularMap A;
  BiPoly G;                   // N in coordinates where the factor is u
  std::vector<UniPoly> rows;  // G = sum_j v^j rows[j](u), top row nonzero
};
Aligned align_to(const BiPoly& N, const BinaryForm& line);

/// Candidates on the vertical line u = u0 of an aligned frame, v = side*2^k.
std::vector<Candidate> vertical_fiber(const Aligned& al, const Int& u0, int side,
                                      const std::string& tag);

/// Lattice points hugging the conic H = const in the residue class needed to
/// pin a completed square; seeds near all four asymptotic rays, both orbit
/// directions.
std::vector<Candidate> conic_streams(const BinaryForm& H, const Rat& q1,
                                     const Rat& q2, size_t per);

/// outer(inner) expanded.
BiPoly compose_outer(const std::vector<Rat>& outer, const BiPoly& inner);

/// Verifies N == outer(inner) and records the composition, else throws.
void set_composition(Ctx& c, std::vector<Rat> outer, BiPoly inner, std::string leaf);

// Branch handlers.

/// Partial result of the balanced linear branch when it certifies a bound
/// instead of finalizing the report; merged across factors by the caller.
struct BalancedLinearOutcome {
  bool done = false;  // report finalized inside (descent or composition)
  std::vector<ExceptionalLine> lines;
  std::optional<Rat> bound;  // N >= -bound on this factor's fiber region
  std::vector<std::string> clauses;
};
BalancedLinearOutcome branch_balanced_linear(Ctx& c, const BinaryForm& H);  // r = s = 1, H linear
void branch_quartic_linear_power(Ctx& c, const BinaryForm& L);  // Ftilde4 = L^4
void branch_double_quadratic(Ctx& c, const BinaryForm& H);      // Ftilde4 = H^2, H irreducible
void branch_shared_factor(Ctx& c, const BinaryForm& h);         // four-part gcd != 1

/// Statement text for the final report.
void finish_statement(Report& rep);

}  // namespace detail
}  // namespace qvs
