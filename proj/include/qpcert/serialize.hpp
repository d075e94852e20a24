#pragma once

#include <string>

#include "qpcert/problem.hpp"

namespace qpcert {

/// Problem file schema:
///   {"space": {"kind": "finite"|"sequence", "dim"?: n},
///    "objective": {"block": [[...]], "tail": t, "c": [...], "const": a},
///    "constraints": [same shape, ...]}
/// block, tail, c and const all default to empty/zero. Throws ParseError
/// with the offending field path, ValidationFailure when the parsed problem
/// fails validation.
Problem parse_problem(const std::string& text);

/// Canonical rendering of a problem into the same schema; parse(render(p))
/// reproduces p exactly.
std::string render_problem(const Problem& p);

}  // namespace qpcert
