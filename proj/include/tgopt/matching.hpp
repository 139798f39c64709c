#pragma once

#include <vector>

#include "tgopt/matrix.hpp"

namespace tgopt::matching {

/// Minimum-total-cost perfect assignment on a square cost matrix (Hungarian
/// algorithm with potentials, O(n^3)). Returns, for each row, the assigned
/// column.
std::vector<Index> min_cost_assignment(const std::vector<std::vector<double>>& cost);

/// Matches two complex multisets one-to-one minimizing the total pairwise
/// distance and returns the largest matched distance. Sizes must agree.
double max_matched_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

} // namespace tgopt::matching
