#pragma once

#include <optional>
#include <vector>

#include "crn/rational.hpp"

namespace crn {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Exact phase-1 simplex: a point of {x >= 0 : constraints * x = rhs}, or
/// nullopt when the system is infeasible. Bland's rule guarantees
/// termination; all arithmetic is rational.
std::optional<std::vector<Rational>> lp_feasible_point(RationalMatrix constraints,
                                                       std::vector<Rational> rhs);

/// Decides whether some nonnegative, nonzero integer combination of the given
/// integer vectors is componentwise >= 0 and nonzero. On success returns the
/// integer coefficients (scaled from a rational certificate).
std::optional<std::vector<BigInt>> positive_cone_combination(
    const std::vector<std::vector<long long>>& vectors);

}  // namespace crn
