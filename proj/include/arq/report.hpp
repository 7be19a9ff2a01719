#pragma once

#include "json.hpp"

#include "arq/infrep.hpp"
#include "arq/subcat.hpp"

// JSON serialization of every result shape the command line emits, a
// deterministic text rendering, and a structural validator for the shipped
// report schema. Serialization is the single source of truth for output:
// identical inputs and seeds produce byte-identical reports.

namespace arq {

using json = nlohmann::ordered_json;

json mat_json(const Mat& m);
json rep_json(const Rep& m);
json ses_json(const ShortExact& s);
json cert_json(const AssCertificate& c);
json decomposition_json(const DecompositionReport& d);
json membership_json(const Membership& m);
json closure_json(const ClosureReport& c);
json approx_json(const Approximation& a, const SubcatSpec& c, bool right);
json ar_quiver_json(const ArQuiverResult& aq);
json dtr_verdict_json(const DtrVerdict& v);
json ass_in_rep_json(const AssInRep& a);

// Human rendering of a report object: stable indentation, no information
// beyond what the JSON carries.
std::string render_text(const json& report);

// Validate `doc` against the subset of JSON Schema the shipped schema uses:
// type, enum, const, required, properties, additionalProperties, items,
// oneOf, anyOf, minimum. Returns false and fills `why` on the first
// violation.
bool schema_check(const json& schema, const json& doc, std::string& why);

}  // namespace arq
