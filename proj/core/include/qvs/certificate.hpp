// Canonical serialization of reports and the independent re-checker.
// Serialization is byte-stable: fixed key order, canonical rational strings,
// sorted term lists. verify_certificate replays every checkable clause of a
// serialized report against a fresh parse of the input.
#pragma once

#include <string>
#include <vector>

#include "qvs/classifier.hpp"

namespace qvs {

/// Canonical JSON text of a report (ends with a newline).
std::string report_to_json(const Report& rep);

struct VerifyResult {
  bool ok = true;
  std::vector<std::string> failures;  // first violated clause first
};

/// Re-checks a serialized report: normalization identity, trace validity
/// against the decision tree, witness re-evaluation and strict descent,
/// composition identity expansion, sparse recounts at the recorded boxes,
/// gap factor products and line tables. Never trusts recorded values.
VerifyResult verify_certificate(const std::string& json_text);

/// Convenience: serialize then verify.
VerifyResult verify_report(const Report& rep);

}  // namespace qvs
