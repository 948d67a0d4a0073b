#pragma once

#include "webtensor/manifest.hpp"
#include "webtensor/report.hpp"
#include "webtensor/tensors.hpp"

#include <string>
#include <vector>

namespace webtensor {

// Formats a 1-based index tuple as "(i,j,...)".
std::string tuple_to_string(const std::vector<int>& tuple);

// Algebra laws (antisymmetry, Jacobi), split closure, section shape.
Report run_validate(const Instance& inst);

// Composition and correction coefficient tensors from both construction
// paths, entry by entry: the direct solve supplies the reference value, the
// literal formulas the compared value. Mismatches in the cubic-and-below
// and correction tensors are failures; quartic formula mismatches are
// recorded as errata.
Report run_expand(const Instance& inst);

// The derived tensor set (torsion, curvature, both quartic derivatives,
// both torsion derivatives), entry by entry from the binding paths.
Report run_tensors(const Instance& inst);

// Identity suite: path agreements for every tensor, torsion-derivative
// alternation identities, and the quartic alternation identity.
Report run_identities(const Instance& inst);

// Hexagonality: both criteria on every triple, their agreement, and (when
// hexagonal) the quartic hexagonal-case condition. The verdict itself is
// informational, not a failure.
Report run_hexagonal(const Instance& inst);

// Full direct-solve vs literal-formula comparison with errata listing.
Report run_oracle_check(const Instance& inst);

// Dispatch by command name; throws std::invalid_argument on unknown command.
Report run_command(const std::string& command, const Instance& inst);

// True for the six supported command names.
bool known_command(const std::string& command);

}  // namespace webtensor
