// Certificate serialization and independent verification: byte stability,
// round trips across every verdict shape, and tamper detection.
#include "doctest.h"

#include <string>

#include "qvs/certificate.hpp"
#include "qvs/classifier.hpp"

using namespace qvs;

namespace {

Report run(const char* text) { return analyze(parse_poly(text)); }

// One representative per certificate shape.
const char* kShapes[] = {
    "x^4-y^4+x",                  // descent only
    "x^4+y^4+x",                  // sparse with box and missing value
    "x^2*(x^2+y^2)+x^3+y^2",      // sparse with sectors
    "(x^2-2*y^2)^2+(x^2-2*y^2)",  // composition
    "x*y*(x*y+1)",                // gap with line tables
    "x*(x^3+x*y^2+1)",            // gap with curve fibers
    "x^2+y^2+2*x+4*y+1",          // completion
    "(x^2-2*y^2)^2+3*(x^2-2*y^2)*x+x^2",  // quartic completion + orbit descent
};

std::string replace_once(const std::string& text, const std::string& from,
                         const std::string& to) {
  auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  std::string out = text;
  out.replace(pos, from.size(), to);
  return out;
}

}  // namespace

TEST_CASE("serialization is byte-stable and verifies for every shape") {
  for (const char* text : kShapes) {
    INFO(text);
    Report r = run(text);
    std::string a = report_to_json(r);
    std::string b = report_to_json(r);
    CHECK(a == b);
    Report r2 = run(text);
    CHECK(a == report_to_json(r2));
    VerifyResult v = verify_certificate(a);
    CAPTURE(v.failures.empty() ? std::string() : v.failures.front());
    CHECK(v.ok);
  }
}

TEST_CASE("json carries the format tag and the input line") {
  Report r = run("x^4+y^4+x");
  std::string j = report_to_json(r);
  CHECK(j.find("\"format\": \"qvs-report-1\"") != std::string::npos);
  CHECK(j.find("\"verdict\": \"SparseValues\"") != std::string::npos);
  CHECK(j.find("\"verified\": true") != std::string::npos);
}

TEST_CASE("tampered descent values are rejected") {
  Report r = run("x^4-y^4+x");
  std::string good = report_to_json(r);
  const Int& v0 = r.descent->points.back().value;
  std::string bad = replace_once(good, "\"" + v0.get_str() + "\"",
                                 "\"" + Int(v0 + 1).get_str() + "\"");
  VerifyResult v = verify_certificate(bad);
  CHECK(!v.ok);
  CHECK(!v.failures.empty());
}

TEST_CASE("swapped verdicts are rejected") {
  Report r = run("x^4-y^4+x");
  std::string bad = replace_once(report_to_json(r), "\"UnboundedBelow\"",
                                 "\"SparseValues\"");
  CHECK(!verify_certificate(bad).ok);
}

TEST_CASE("tampered gap factors are rejected") {
  Report r = run("x*y*(x*y+1)");
  std::string good = report_to_json(r);
  // factor_b = x*y + 1: bump the constant term.
  std::string bad = replace_once(
      good, "\"factor_b\": [\n        [\n          0,\n          0,\n          \"1\"",
      "\"factor_b\": [\n        [\n          0,\n          0,\n          \"2\"");
  CHECK(!verify_certificate(bad).ok);
}

TEST_CASE("tampered composition coefficients are rejected") {
  Report r = run("x^2*y^2");
  std::string good = report_to_json(r);
  REQUIRE(r.composition.has_value());
  std::string bad = replace_once(good, "\"outer\"", "\"outer_\"");
  CHECK(!verify_certificate(bad).ok);
  VerifyResult v = verify_certificate(replace_once(
      good, "\"inner\": [\n        [\n          1,\n          1,\n          \"1\"",
      "\"inner\": [\n        [\n          1,\n          1,\n          \"2\""));
  CHECK(!v.ok);
}

TEST_CASE("malformed json and missing fields fail gracefully") {
  CHECK(!verify_certificate("{not json").ok);
  CHECK(!verify_certificate("{}").ok);
  CHECK(!verify_certificate("{\"format\": \"qvs-report-1\"}").ok);
  Report r = run("x^4-y^4+x");
  std::string truncated = report_to_json(r);
  truncated.resize(truncated.size() / 2);
  CHECK(!verify_certificate(truncated).ok);
}

TEST_CASE("trace edits off the decision tree are rejected") {
  Report r = run("x^4-y^4+x");
  std::string bad = replace_once(report_to_json(r), "\"leading-form-sign\"",
                                 "\"made-up-node\"");
  CHECK(!verify_certificate(bad).ok);
}
