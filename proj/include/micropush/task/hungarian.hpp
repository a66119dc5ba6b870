#pragma once

#include <vector>

namespace micropush::task {

/// Minimum-cost assignment of every row to a distinct column (rows <= cols),
/// by the shortest augmenting path method with potentials. Returns the column
/// of each row. Throws ConfigError on a ragged or too-wide matrix.
std::vector<int> hungarian(const std::vector<std::vector<double>>& cost);

double assignment_cost(const std::vector<std::vector<double>>& cost, const std::vector<int>& cols);

}  // namespace micropush::task
