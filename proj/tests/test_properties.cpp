// Pipeline-wide properties: verdicts are invariants of the value set, not of
// the coordinates, and the counting options never change the routing.
#include "doctest.h"

#include <random>

#include "qvs/certificate.hpp"
#include "qvs/classifier.hpp"

using namespace qvs;

namespace {

const char* kItems[] = {
    "x^4-y^4+x",
    "x^4+y^4+x",
    "(x^2-2*y^2)^2+y^3",
    "x^4+x*y^2+y^2",
    "x^2*(x^2+y^2)+x*y^2+y^2",
    "x^4+x^2*y+y^2",
    "x^4+x^2*y-y^2",
    "(x^2-2*y^2)^2+x",
    "(x^2-2*y^2)^2+(x^2-2*y^2)",
    "x*y*(x*y+1)",
    "x*(x^3+x*y^2+1)",
    "(x^2-2*y^2)^2+3*(x^2-2*y^2)*x+x^2",
    "x^2+y^2",
    "x^2",
};

UnimodularMap mul(const UnimodularMap& X, const UnimodularMap& Y) {
  return {Int(X.a * Y.a + X.b * Y.c), Int(X.a * Y.b + X.b * Y.d),
          Int(X.c * Y.a + X.d * Y.c), Int(X.c * Y.b + X.d * Y.d)};
}

// Product of a few shears, swaps, and reflections: det +-1, small entries.
UnimodularMap random_unimodular(std::mt19937& rng) {
  std::uniform_int_distribution<int> shear(-3, 3);
  std::uniform_int_distribution<int> kind(0, 3);
  UnimodularMap A{1, 0, 0, 1};
  for (int i = 0; i < 4; ++i) {
    int m = shear(rng);
    UnimodularMap E{1, 0, 0, 1};
    switch (kind(rng)) {
      case 0: E = {1, m, 0, 1}; break;
      case 1: E = {1, 0, m, 1}; break;
      case 2: E = {0, 1, -1, 0}; break;
      default: E = {-1, 0, 0, 1}; break;
    }
    A = mul(E, A);
  }
  return A;
}

AnalyzeOptions lean_options() {
  AnalyzeOptions opt;
  opt.with_density = false;
  opt.with_sectors = false;
  return opt;
}

}  // namespace

TEST_CASE("verdicts are invariant under unimodular changes of variables") {
  std::mt19937 rng(20240817);
  AnalyzeOptions lean = lean_options();
  for (const char* text : kItems) {
    INFO(text);
    BiPoly F = parse_poly(text);
    Report base = analyze(F, lean);
    for (int k = 0; k < 20; ++k) {
      UnimodularMap A = random_unimodular(rng);
      CAPTURE(k);
      Report moved = analyze(apply_unimodular(F, A), lean);
      CHECK(moved.verdict == base.verdict);
    }
  }
}

TEST_CASE("transformed inputs still produce verifiable certificates") {
  std::mt19937 rng(7);
  AnalyzeOptions lean = lean_options();
  for (const char* text : kItems) {
    INFO(text);
    UnimodularMap A = random_unimodular(rng);
    Report moved = analyze(apply_unimodular(parse_poly(text), A), lean);
    VerifyResult v = verify_report(moved);
    CAPTURE(v.failures.empty() ? std::string() : v.failures.front());
    CHECK(v.ok);
  }
}

TEST_CASE("counting options do not change the routing") {
  AnalyzeOptions lean = lean_options();
  for (const char* text : {"x^4+y^4+x", "x^2*(x^2+y^2)+x*y^2+y^2", "x^4+x^2*y+y^2",
                           "x*y*(x*y+1)", "x^2+y^2", "(x^2-2*y^2)^2+x^2"}) {
    INFO(text);
    Report full = analyze(parse_poly(text));
    Report trimmed = analyze(parse_poly(text), lean);
    CHECK(full.verdict == trimmed.verdict);
    CHECK(full.leaf == trimmed.leaf);
  }
}

TEST_CASE("witness descents respect a custom target depth") {
  AnalyzeOptions opt = lean_options();
  opt.witness_target = -50000000;
  Report r = analyze(parse_poly("x^4-y^4+x"), opt);
  REQUIRE(r.descent.has_value());
  CHECK(r.descent->target == Int(-50000000));
  CHECK(r.descent->points.back().value <= Int(-50000000));
}
