#pragma once

#include <string>

#include "solrig/eigenbasis.hpp"
#include "solrig/obstruction.hpp"

namespace solrig {

inline constexpr const char* kReportSchema = "rigidity-report/1";

/// Key-value document, one "key: value" per line in a fixed order. Repeated
/// keys (certificate, note, citation) appear once per entry.
std::string to_structured_text(const RigidityReport& report);

std::string to_human(const RigidityReport& report);

/// "a,b,c,id_a,id_b,id_c,value" rows for a <= b <= c, after a header line.
std::string gram_to_csv(const CubicGramTensor& tensor, const EigenfunctionBasis& basis);

/// Count summary plus every nonzero entry.
std::string gram_to_text(const CubicGramTensor& tensor, const EigenfunctionBasis& basis);

/// Verdict block for a single deformation, with the witness rendered as a
/// polynomial.
std::string verdict_to_text(const ObstructionVerdict& verdict, const EigenfunctionBasis& basis);

}  // namespace solrig
