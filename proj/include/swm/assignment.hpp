#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace swm {

/// Dense row-major matrix of non-negative costs.
class CostMatrix {
public:
    CostMatrix(std::size_t rows, std::size_t cols, double value = 0.0)
        : rows_(rows), cols_(cols), cells_(rows * cols, value) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& at(std::size_t row, std::size_t col) { return cells_[row * cols_ + col]; }
    double at(std::size_t row, std::size_t col) const { return cells_[row * cols_ + col]; }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> cells_;
};

/// Minimum-cost injective matching of size min(rows, cols).
/// `pairs` is sorted by row index; `total_cost` is the sum of the matched
/// cell costs taken in that order.
struct AssignmentResult {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    double total_cost = 0.0;
};

/// Solves the rectangular assignment problem exactly (Hungarian method on a
/// square-padded matrix). Among cost-equal optima, returns the
/// lexicographically smallest pair list.
AssignmentResult solve_assignment(const CostMatrix& cost);

} // namespace swm
