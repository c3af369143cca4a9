#pragma once

#include <optional>
#include <vector>

#include "crn/rational.hpp"

namespace crn {

/// Gaussian elimination with partial pivoting; nullopt on a singular matrix.
std::optional<std::vector<Rational>> solve_linear_rational(
    std::vector<std::vector<Rational>> a, std::vector<Rational> b);

std::optional<std::vector<double>> solve_linear_double(std::vector<std::vector<double>> a,
                                                       std::vector<double> b);

}  // namespace crn
