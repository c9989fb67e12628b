#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <utility>
#include <vector>

#include <matrack/errors.hpp>

namespace matrack {

/// Rectangular score matrix, rows = detections, columns = tracks.
/// Convention throughout the engine: higher is better.
using ScoreMatrix = Eigen::MatrixXd;

struct Assignment {
    std::vector<std::pair<int, int>> matches;  ///< (row, col), sorted by row
    std::vector<int> unmatched_rows;
    std::vector<int> unmatched_cols;
    double total_score = 0.0;  ///< sum of matched scores, accumulated in row order
};

/// Optimal gated linear assignment.
///
/// Pairs scoring below `gate` are infeasible. Among matchings that use only
/// feasible pairs the solver maximizes, in order: the number of matched
/// pairs, the total matched score, and finally picks the lexicographically
/// smallest (row, col) match set. Cardinality ranks above raw total so the
/// result is invariant to shifting every entry and the gate by the same
/// constant.
///
/// Throws InvalidInputError on non-finite entries.
Assignment solve(const ScoreMatrix& scores, double gate);

}  // namespace matrack
