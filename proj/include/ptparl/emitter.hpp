#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ptparl/model.hpp"

namespace ptparl {

struct EmitError : std::runtime_error {
    EmitError(const std::string& msg, std::vector<Violation> violations = {})
        : std::runtime_error(msg), violations(std::move(violations)) {}
    std::vector<Violation> violations;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Serializes a valid debate to the annotation scheme: UTF-8, XML declaration,
// 4-space indentation, one utterance per line. Attribute order is fixed
// (debate: period, legislature, session, number, date; utterance: page-start,
// speaker-id, speaker-name, speaker-party, speaker-string, speaker-role,
// order), so equal debates emit byte-identical documents. Ambiguous speakers
// emit a candidates-count attribute unless strict, where they emit like
// unresolved. Refuses invalid debates with the validator's violations.
std::string emit_debate_xml(const AnnotatedDebate& d, bool strict = false);

// Inverse of emit_debate_xml. Checks the schema (element structure, required
// attributes, value shapes) but not the debate invariants; run
// validate_debate on the result for those. Unknown attributes are errors in
// strict mode and warnings otherwise. A candidates-count attribute parses to
// unresolved (the candidate list is not representable in the scheme) with a
// warning.
AnnotatedDebate parse_debate_xml(std::string_view bytes, bool strict = false,
                                 std::vector<std::string>* warnings = nullptr);

}  // namespace ptparl
