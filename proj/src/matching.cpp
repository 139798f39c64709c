#include "tgopt/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tgopt::matching {

std::vector<Index> min_cost_assignment(const std::vector<std::vector<double>>& cost) {
    const std::size_t n = cost.size();
    for (const auto& row : cost)
        if (row.size() != n)
            throw DimensionMismatch("min_cost_assignment: cost matrix must be square");
    if (n == 0)
        return {};

    constexpr double inf = std::numeric_limits<double>::infinity();

    // Potentials formulation with 1-based columns; p[j] is the row matched to
    // column j, column 0 is the virtual start of each augmenting path.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);

    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = i;
        std::size_t j0 = 0;
        std::vector<double> min_slack(n + 1, inf);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            const std::size_t i0 = p[j0];
            std::size_t j1 = 0;
            double delta = inf;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j])
                    continue;
                const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < min_slack[j]) {
                    min_slack[j] = cur;
                    way[j] = j0;
                }
                if (min_slack[j] < delta) {
                    delta = min_slack[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    min_slack[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<Index> row_to_col(n, 0);
    for (std::size_t j = 1; j <= n; ++j)
        row_to_col[p[j] - 1] = static_cast<Index>(j - 1);
    return row_to_col;
}

double max_matched_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.size() != b.size())
        throw DimensionMismatch("max_matched_distance: multiset sizes disagree");
    const std::size_t n = a.size();
    std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            cost[i][j] = std::abs(a[i] - b[j]);
    const auto assignment = min_cost_assignment(cost);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        worst = std::max(worst, cost[i][static_cast<std::size_t>(assignment[i])]);
    return worst;
}

} // namespace tgopt::matching
