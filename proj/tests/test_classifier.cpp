// Routing and certificate facts for a frozen corpus. Every input lands on a
// known leaf, the certificate carries the data that leaf promises, and the
// whole report survives independent verification.
#include "doctest.h"

#include <string>
#include <vector>

#include "qvs/certificate.hpp"
#include "qvs/classifier.hpp"

using namespace qvs;

namespace {

Int I(long v) { return Int(v); }

Report run(const char* text) { return analyze(parse_poly(text)); }

bool strictly_decreasing(const std::vector<WitnessPoint>& pts) {
  for (size_t i = 1; i < pts.size(); ++i)
    if (!(pts[i].value < pts[i - 1].value)) return false;
  return true;
}

// Horner expansion of outer(inner).
BiPoly expand(const CompositionCertificate& c) {
  BiPoly acc;
  for (size_t k = c.outer.size(); k-- > 0;)
    acc = acc * c.inner + BiPoly::constant(c.outer[k]);
  return acc;
}

struct Row {
  const char* text;
  Verdict verdict;
  const char* leaf;
};

const Row kCorpus[] = {
    {"x^4-y^4+x", Verdict::UnboundedBelow, "negative-direction-ray"},
    {"x^4+y^4+x", Verdict::SparseValues, "positive-definite-growth"},
    {"(x^2-2*y^2)^2+y^3", Verdict::UnboundedBelow, "unlinked-direction-descent"},
    {"x^2*y^2+x^3+x^2+y", Verdict::UnboundedBelow, "unlinked-direction-descent"},
    {"x^2*(x^2+y^2)+x^3+y^2", Verdict::SparseValues, "zero-direction-sparse"},
    {"x^4+x*y^2+y^2", Verdict::UnboundedBelow, "slope-imbalance-line"},
    {"x^2*(x^2+y^2)+x*y^2+y^2", Verdict::SparseValues, "fiber-bounded-discriminant"},
    {"x^4+x^2*y+y^2", Verdict::SparseValues, "fiber-quartic-defect-sparse"},
    {"(x^2+y)^2+x^2", Verdict::SparseValues, "fiber-two-square-identity"},
    {"x^4+x^2*y-y^2", Verdict::UnboundedBelow, "fiber-vertical-parabola"},
    {"(x^2-2*y^2)^2-x^2", Verdict::UnboundedBelow, "negative-sector-descent"},
    {"x^2*(x^2+y^2)-y^2", Verdict::UnboundedBelow, "negative-sector-descent"},
    {"x^2*(x^2+y^2)+x^3-y^2", Verdict::UnboundedBelow, "negative-sector-descent"},
    {"(x^2-2*y^2)^2+x", Verdict::UnboundedBelow, "residual-linear-descent"},
    {"(x^2-2*y^2)^2+x^2", Verdict::SparseValues, "zero-direction-sparse"},
    {"(x^2-2*y^2)^2+(x^2-2*y^2)", Verdict::Composition, "split-level-composition"},
    {"x*y*(x*y+1)", Verdict::ReducibleGap, "split-divisor-table"},
    {"x*(x^3+2*y^3+1)", Verdict::UnboundedBelow, "negative-direction-ray"},
    {"x^2*y^2", Verdict::Composition, "shared-quartic-composition"},
    {"x^4+x", Verdict::Composition, "shared-quartic-composition"},
    {"x*(x^3+x*y^2+1)", Verdict::ReducibleGap, "cofactor-divisor-curves"},
    {"x*(x^3+(x-2)*y^2+1)", Verdict::UnboundedBelow, "cofactor-line-descent"},
    {"x*(x*y^2-x+1+y)", Verdict::UnboundedBelow, "cofactor-line-descent"},
    {"x^2*(x^2+y^2+1)", Verdict::SparseValues, "split-definite-cofactor-sparse"},
    {"x^2*(y^2+1)", Verdict::SparseValues, "split-definite-cofactor-sparse"},
    {"(x^2-2*y^2)^2+3*(x^2-2*y^2)*x+x^2", Verdict::UnboundedBelow,
     "pair-negative-residual-orbit"},
    {"(x^2-2*y^2)^2+(x^2-2*y^2)*x+y^2", Verdict::SparseValues,
     "pair-positive-residual-sparse"},
    {"(x^2-2*y^2)^2+(x^2-2*y^2)*x+(x^2-2*y^2)+x", Verdict::UnboundedBelow,
     "residual-linear-descent"},
    {"x^4+x^2*y^2+x^3+x^2+y", Verdict::UnboundedBelow, "residual-linear-descent"},
    {"(x^2-y^2)^2+x", Verdict::UnboundedBelow, "residual-linear-descent"},
    {"x+x^2*y^2", Verdict::UnboundedBelow, "residual-linear-descent"},
    {"(x^2-2*y^2)^2+(x^2-2*y^2)*x", Verdict::UnboundedBelow, "split-orbit-descent"},
    {"x^2+y^2+2*x+4*y+1", Verdict::SparseValues, "positive-quadratic-completion"},
    {"x^2+y^2", Verdict::SparseValues, "positive-quadratic-completion"},
    {"x^2-2*y^2+4*y", Verdict::UnboundedBelow, "quadratic-negative-ray"},
    {"x^2", Verdict::Composition, "degenerate-direction-univariate"},
    {"x^2+y", Verdict::UnboundedBelow, "degenerate-direction-linear"},
    {"x+y", Verdict::UnboundedBelow, "odd-degree-ray"},
    {"x^3-y^3+1", Verdict::UnboundedBelow, "odd-degree-ray"},
};

}  // namespace

TEST_CASE("every corpus input reaches its frozen leaf and verifies") {
  for (const Row& row : kCorpus) {
    INFO(row.text);
    Report r = run(row.text);
    CHECK(r.verdict == row.verdict);
    CHECK(r.leaf == row.leaf);
    REQUIRE(!r.trace.empty());
    CHECK(r.trace.front().node == "normalize");
    CHECK(r.trace.back().node == r.leaf);
    CHECK(!r.statement.empty());
    VerifyResult v = verify_report(r);
    CAPTURE(v.failures.empty() ? std::string() : v.failures.front());
    CHECK(v.ok);
  }
}

TEST_CASE("descent witnesses are exact, strictly decreasing, and deep enough") {
  for (const char* text : {"x^4-y^4+x", "(x^2-2*y^2)^2+x", "x*(x*y^2-x+1+y)",
                           "x^2*y^2+x^3+x^2+y"}) {
    INFO(text);
    Report r = run(text);
    REQUIRE(r.descent.has_value());
    const DescentWitness& d = *r.descent;
    CHECK(d.points.size() >= 3);
    for (const WitnessPoint& p : d.points) {
      CHECK(p.value == r.normalized.eval_int(p.x, p.y));
      CHECK(!p.recipe.empty());
    }
    CHECK(strictly_decreasing(d.points));
    CHECK(d.target == I(-1000000));
    CHECK(d.points.back().value <= d.target);
  }
}

TEST_CASE("Pell ladder stops shallow at the classical convergent") {
  AnalyzeOptions opt;
  opt.witness_target = -100;
  Report r = analyze(parse_poly("(x^2-2*y^2)^2+x"), opt);
  CHECK(r.leaf == "residual-linear-descent");
  REQUIRE(r.descent.has_value());
  bool found = false;
  for (const WitnessPoint& p : r.descent->points)
    if (p.value == I(-238)) {
      found = true;
      CHECK(Int(abs(p.x)) == I(239));
      CHECK(Int(abs(p.y)) == I(169));
    }
  CHECK(found);
}

TEST_CASE("offset-line imbalance pins a negative parabola") {
  Report r = run("x^4+x*y^2+y^2");
  CHECK(r.leaf == "slope-imbalance-line");
  REQUIRE(r.descent.has_value());
  CHECK(r.descent->family == "offset line with negative leading coefficient");
  for (const WitnessPoint& p : r.descent->points) {
    CHECK(p.x == I(-3));
    CHECK(p.value == I(81) - 2 * p.y * p.y);
  }
}

TEST_CASE("square completions record the exact shift identity") {
  Report pos = run("x^2+y^2+2*x+4*y+1");
  REQUIRE(pos.completion.has_value());
  CHECK(pos.completion->q1 == Rat(1));
  CHECK(pos.completion->q2 == Rat(2));
  CHECK(pos.completion->q3 == Rat(-5));
  REQUIRE(pos.sparse.has_value());
  CHECK(pos.sparse->cls == DensityClass::LandauLogHalf);
  REQUIRE(pos.sparse->lower_bound.has_value());
  CHECK(*pos.sparse->lower_bound == Rat(5));

  Report neg = run("x^2-2*y^2+4*y");
  CHECK(neg.verdict == Verdict::UnboundedBelow);
  REQUIRE(neg.completion.has_value());
  CHECK(neg.completion->q1 == Rat(0));
  CHECK(neg.completion->q2 == Rat(-1));
  CHECK(neg.completion->q3 == Rat(2));
}

TEST_CASE("composition identities expand back to the normalized input") {
  struct Comp {
    const char* text;
    std::vector<Rat> outer;
    const char* inner;  // nullptr: only check the expansion
  };
  const Comp cases[] = {
      {"x^2*y^2", {Rat(0), Rat(0), Rat(1)}, "x*y"},
      {"x^4+x", {Rat(0), Rat(1), Rat(0), Rat(0), Rat(1)}, "x"},
      {"(x^2-2*y^2)^2+(x^2-2*y^2)", {Rat(0), Rat(1), Rat(1)}, "x^2-2*y^2"},
      {"x^2", {}, nullptr},
  };
  for (const Comp& c : cases) {
    INFO(c.text);
    Report r = run(c.text);
    REQUIRE(r.composition.has_value());
    CHECK(expand(*r.composition) == r.normalized);
    CHECK(r.composition->inner.is_integral());
    if (!c.outer.empty()) CHECK(r.composition->outer == c.outer);
    if (c.inner) CHECK(r.composition->inner == parse_poly(c.inner));
  }
}

TEST_CASE("sparse certificates carry the frozen counting data") {
  Report pd = run("x^4+y^4+x");
  REQUIRE(pd.sparse.has_value());
  CHECK(pd.sparse->cls == DensityClass::Sqrt);
  CHECK(pd.sparse->root_degree == 2);
  REQUIRE(pd.sparse->box.has_value());
  CHECK(*pd.sparse->box == I(21));
  REQUIRE(pd.sparse->missing.has_value());
  CHECK(pd.sparse->missing->value == I(4));
  CHECK(pd.sparse->missing->rigorous);
  REQUIRE(pd.sparse->fit.counts.size() == 3);
  CHECK(pd.sparse->fit.counts[0].second == I(56));
  CHECK(pd.sparse->fit.counts[1].second == I(174));
  CHECK(pd.sparse->fit.counts[2].second == I(570));

  Report defect = run("x^4+x^2*y+y^2");
  REQUIRE(defect.sparse.has_value());
  CHECK(defect.sparse->cls == DensityClass::PowerOneMinusLambda);
  CHECK(defect.sparse->lambda == Rat(1, 8));
  REQUIRE(defect.sparse->sectors.size() == 1);
  CHECK(defect.sparse->sectors[0].R == 2);
  CHECK(defect.sparse->sectors[0].xi.vertical);
  REQUIRE(defect.sparse->lower_bound.has_value());
  CHECK(*defect.sparse->lower_bound == Rat(1, 4));
  REQUIRE(defect.sparse->fit.counts.size() == 3);
  CHECK(defect.sparse->fit.counts[2].second == I(3145));

  Report cusp = run("x^2*(x^2+y^2)+x^3+y^2");
  REQUIRE(cusp.sparse.has_value());
  CHECK(cusp.sparse->lambda == Rat(1, 4));
  REQUIRE(cusp.sparse->sectors.size() == 1);
  CHECK(cusp.sparse->sectors[0].R == 1);
  CHECK(cusp.sparse->fit.counts[2].second == I(1818));

  Report pell = run("(x^2-2*y^2)^2+x^2");
  REQUIRE(pell.sparse.has_value());
  CHECK(pell.sparse->lambda == Rat(1, 4));
  CHECK(pell.sparse->sectors.size() == 2);
  CHECK(!pell.sparse->sectors[0].xi.rational);
  CHECK(pell.sparse->fit.counts[2].second == I(674));

  Report twosq = run("(x^2+y)^2+x^2");
  REQUIRE(twosq.sparse.has_value());
  CHECK(twosq.sparse->cls == DensityClass::LandauLogHalf);
  REQUIRE(twosq.sparse->lower_bound.has_value());
  CHECK(*twosq.sparse->lower_bound == Rat(0));

  for (const char* text : {"x^2*(x^2+y^2+1)", "x^2*(y^2+1)"}) {
    INFO(text);
    Report r = run(text);
    REQUIRE(r.sparse.has_value());
    REQUIRE(r.sparse->lower_bound.has_value());
    CHECK(*r.sparse->lower_bound == Rat(0));
  }
}

TEST_CASE("reducible gaps record divisor-pinned tables and curve fibers") {
  Report tab = run("x*y*(x*y+1)");
  REQUIRE(tab.gap.has_value());
  CHECK(tab.gap->factor_a * tab.gap->factor_b == tab.normalized);
  CHECK(tab.gap->lines.size() == 2);
  REQUIRE(tab.gap->empirical.size() == 2);
  CHECK(tab.gap->empirical[0] == std::make_pair(I(1000), I(31)));
  CHECK(tab.gap->empirical[1] == std::make_pair(I(10000), I(99)));
  bool tagged = false;
  for (const std::string& t : tab.gap->theory_tags)
    if (t == "divisor-bound") tagged = true;
  CHECK(tagged);

  Report curves = run("x*(x^3+x*y^2+1)");
  REQUIRE(curves.gap.has_value());
  CHECK(curves.gap->factor_a * curves.gap->factor_b == curves.normalized);
  REQUIRE(curves.gap->fibers.size() == 1);
  CHECK(curves.gap->fibers[0].level == I(1));
  bool siegel = false;
  for (const std::string& t : curves.gap->theory_tags)
    if (t == "siegel-finiteness") siegel = true;
  CHECK(siegel);
}

TEST_CASE("pair leaves handle a residual linear term on a Pell quartic") {
  Report neg = run("(x^2-2*y^2)^2+3*(x^2-2*y^2)*x+x^2");
  CHECK(neg.leaf == "pair-negative-residual-orbit");
  CHECK(neg.normalized.eval_int(I(12), I(9)) == I(-180));
  REQUIRE(neg.descent.has_value());
  CHECK(neg.descent->points.back().value <= I(-1000000));

  Report pos = run("(x^2-2*y^2)^2+(x^2-2*y^2)*x+y^2");
  CHECK(pos.leaf == "pair-positive-residual-sparse");
  REQUIRE(pos.sparse.has_value());
  CHECK(pos.sparse->lambda == Rat(1, 4));
}

TEST_CASE("degree gate rejects out-of-range inputs") {
  CHECK_THROWS_AS(run("7"), UnsupportedDegree);
  CHECK_THROWS_AS(run("x^5+y"), UnsupportedDegree);
  try {
    run("x^5+y");
  } catch (const UnsupportedDegree& e) {
    CHECK(e.degree == 5);
  }
  try {
    run("1/2");
  } catch (const UnsupportedDegree& e) {
    CHECK(e.degree == -1);
  }
}
