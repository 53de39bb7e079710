#include "swm/assignment.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <stdexcept>

namespace swm {

namespace {

constexpr double kPadCost = 1.0; // the distance ceiling; neutral for argmin

// Hungarian method (shortest augmenting path with potentials) on a square
// matrix given as a row-major lookup. Returns row -> column.
std::vector<std::size_t> hungarian_square(std::size_t n, const std::vector<double>& cost) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> col_row(n + 1, 0); // column -> assigned row, 1-based; 0 = free
    std::vector<std::size_t> way(n + 1, 0);

    for (std::size_t i = 1; i <= n; ++i) {
        col_row[0] = i;
        std::size_t j0 = 0;
        std::vector<double> min_slack(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            std::size_t i0 = col_row[j0];
            std::size_t j1 = 0;
            double delta = inf;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double reduced = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
                if (reduced < min_slack[j]) {
                    min_slack[j] = reduced;
                    way[j] = j0;
                }
                if (min_slack[j] < delta) {
                    delta = min_slack[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[col_row[j]] += delta;
                    v[j] -= delta;
                } else {
                    min_slack[j] -= delta;
                }
            }
            j0 = j1;
        } while (col_row[j0] != 0);
        do {
            std::size_t j1 = way[j0];
            col_row[j0] = col_row[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<std::size_t> row_col(n, 0);
    for (std::size_t j = 1; j <= n; ++j) row_col[col_row[j] - 1] = j - 1;
    return row_col;
}

using Pair = std::pair<std::size_t, std::size_t>;

// Sum of matched real-cell costs in ascending row order. All candidate
// totals go through here so equal matchings compare bit-identically.
double canonical_total(const CostMatrix& cost, const std::vector<Pair>& pairs) {
    double total = 0.0;
    for (const Pair& p : pairs) total += cost.at(p.first, p.second);
    return total;
}

// Optimal matching on the submatrix spanned by `rows` x `cols`, mapped back
// to original indices and sorted by row.
std::vector<Pair> solve_submatrix(const CostMatrix& cost,
                                  const std::vector<std::size_t>& rows,
                                  const std::vector<std::size_t>& cols) {
    const std::size_t n = std::max(rows.size(), cols.size());
    if (n == 0) return {};
    std::vector<double> padded(n * n, kPadCost);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
            padded[r * n + c] = cost.at(rows[r], cols[c]);

    std::vector<std::size_t> row_col = hungarian_square(n, padded);
    std::vector<Pair> pairs;
    pairs.reserve(std::min(rows.size(), cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        std::size_t c = row_col[r];
        if (c < cols.size()) pairs.emplace_back(rows[r], cols[c]);
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

} // namespace

AssignmentResult solve_assignment(const CostMatrix& cost) {
    const std::size_t m = cost.rows();
    const std::size_t n = cost.cols();
    if (m == 0 || n == 0) throw std::invalid_argument("assignment needs a non-empty cost matrix");

    std::vector<std::size_t> all_cols(n);
    for (std::size_t c = 0; c < n; ++c) all_cols[c] = c;

    // Fix pairs row by row, keeping the completion optimal at every step.
    // Scanning rows in order and columns in ascending order yields the
    // lexicographically smallest optimal pair list.
    std::vector<Pair> fixed;
    std::vector<std::size_t> free_cols = all_cols;
    std::size_t slots = std::min(m, n);

    for (std::size_t row = 0; row < m && slots > 0; ++row) {
        const std::size_t rows_left = m - row; // including this one
        std::vector<std::size_t> later_rows;
        for (std::size_t r = row + 1; r < m; ++r) later_rows.push_back(r);

        double best_total = std::numeric_limits<double>::infinity();
        std::size_t best_col = n; // n = skip this row

        for (std::size_t col : free_cols) {
            std::vector<std::size_t> rest_cols;
            for (std::size_t c : free_cols)
                if (c != col) rest_cols.push_back(c);
            std::vector<Pair> completion = solve_submatrix(cost, later_rows, rest_cols);
            completion.emplace_back(row, col);
            for (const Pair& p : fixed) completion.push_back(p);
            std::sort(completion.begin(), completion.end());
            double total = canonical_total(cost, completion);
            if (total < best_total) {
                best_total = total;
                best_col = col;
            }
        }

        if (rows_left > slots) {
            // This row may stay unmatched; prefer that only when strictly cheaper.
            std::vector<Pair> completion = solve_submatrix(cost, later_rows, free_cols);
            for (const Pair& p : fixed) completion.push_back(p);
            std::sort(completion.begin(), completion.end());
            double total = canonical_total(cost, completion);
            if (total < best_total) {
                best_total = total;
                best_col = n;
            }
        }

        if (best_col < n) {
            fixed.emplace_back(row, best_col);
            free_cols.erase(std::find(free_cols.begin(), free_cols.end(), best_col));
            --slots;
        }
    }

    std::sort(fixed.begin(), fixed.end());
    assert(fixed.size() == std::min(m, n));

    AssignmentResult result;
    result.pairs = std::move(fixed);
    result.total_cost = canonical_total(cost, result.pairs);
    return result;
}

} // namespace swm
