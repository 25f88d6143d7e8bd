#pragma once

#include "equistat/rational.hpp"

#include <optional>
#include <vector>

namespace equistat {

// Exact phase-one simplex with Bland's rule.
// Returns some x >= 0 with A x >= b, or nothing when the system is infeasible.
std::optional<std::vector<Rat>> lp_feasible(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b);

}  // namespace equistat
