#include "feint/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace feint {

namespace {

constexpr double kPivotEps = 1e-11;

// Primal simplex for: max 1'y subject to A y <= 1, y >= 0, with every entry
// of A strictly positive. The slack basis is feasible and the feasible region
// is bounded, so phase one is unnecessary and the optimum exists. Bland's
// rule keeps the pivot sequence deterministic and finite.
struct PositiveGameLp {
    std::size_t m, n;                       // constraints, variables
    std::vector<std::vector<double>> tab;   // (m+1) x (n+m+1), last column = rhs
    std::vector<std::size_t> basis;

    explicit PositiveGameLp(const std::vector<std::vector<double>>& a)
        : m(a.size()), n(a[0].size()), tab(m + 1, std::vector<double>(n + m + 1, 0.0)), basis(m) {
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) tab[i][j] = a[i][j];
            tab[i][n + i] = 1.0;
            tab[i][n + m] = 1.0;
            basis[i] = n + i;
        }
        for (std::size_t j = 0; j < n; ++j) tab[m][j] = -1.0;
    }

    void pivot(std::size_t row, std::size_t col) {
        const double inv = 1.0 / tab[row][col];
        for (double& v : tab[row]) v *= inv;
        tab[row][col] = 1.0; // avoid drift on the pivot element itself
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == row) continue;
            const double factor = tab[i][col];
            if (factor == 0.0) continue;
            for (std::size_t j = 0; j <= n + m; ++j) tab[i][j] -= factor * tab[row][j];
            tab[i][col] = 0.0;
        }
        basis[row] = col;
    }

    void solve() {
        const std::size_t max_iterations = 50000;
        for (std::size_t iter = 0; iter < max_iterations; ++iter) {
            // Bland: entering variable = lowest index with negative cost row.
            std::size_t enter = n + m;
            for (std::size_t j = 0; j < n + m; ++j) {
                if (tab[m][j] < -kPivotEps) {
                    enter = j;
                    break;
                }
            }
            if (enter == n + m) return; // optimal

            // Leaving row: minimum ratio, ties to the lowest basis index.
            std::size_t leave = m;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m; ++i) {
                if (tab[i][enter] <= kPivotEps) continue;
                const double ratio = tab[i][n + m] / tab[i][enter];
                if (ratio < best_ratio - kPivotEps ||
                    (ratio < best_ratio + kPivotEps && (leave == m || basis[i] < basis[leave]))) {
                    best_ratio = std::min(best_ratio, ratio);
                    leave = i;
                }
            }
            if (leave == m) {
                throw std::logic_error("matrix game LP unbounded; shift failed");
            }
            pivot(leave, enter);
        }
        throw std::logic_error("simplex iteration limit exceeded");
    }

    double objective() const { return tab[m][n + m]; }

    std::vector<double> solution() const {
        std::vector<double> y(n, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            if (basis[i] < n) y[basis[i]] = tab[i][n + m];
        }
        return y;
    }
};

void check_matrix(const RewardMatrix& r) {
    if (r.values.empty() || r.values[0].empty()) {
        throw std::invalid_argument("reward matrix must be at least 1x1");
    }
    for (const auto& row : r.values) {
        if (row.size() != r.values[0].size()) {
            throw std::invalid_argument("ragged reward matrix");
        }
        for (double v : row) {
            if (!std::isfinite(v)) throw std::invalid_argument("non-finite reward entry");
        }
    }
}

} // namespace

RewardMatrix negate_transpose(const RewardMatrix& r) {
    RewardMatrix out;
    out.rows = r.cols;
    out.cols = r.rows;
    out.values.resize(r.cols.size(), std::vector<double>(r.rows.size(), 0.0));
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        for (std::size_t j = 0; j < r.cols.size(); ++j) {
            out.values[j][i] = -r.values[i][j];
        }
    }
    return out;
}

GameSolution solve_maximin(const RewardMatrix& r) {
    check_matrix(r);
    const std::size_t rows = r.values.size();
    const std::size_t cols = r.values[0].size();

    // The row player of R is the column player of -R^T; the latter is the
    // side a bounded-feasible-start simplex recovers directly. With the game
    // shifted so every entry is >= 1, value v' > 0 and y = q / v' solves
    // max 1'y : M'y <= 1.
    double min_entry = std::numeric_limits<double>::infinity();
    for (const auto& row : r.values) {
        for (double v : row) min_entry = std::min(min_entry, -v);
    }
    const double shift = 1.0 - min_entry;

    std::vector<std::vector<double>> shifted(cols, std::vector<double>(rows, 0.0));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            shifted[j][i] = -r.values[i][j] + shift;
        }
    }

    PositiveGameLp lp(shifted);
    lp.solve();
    const double total = lp.objective();
    if (!(total > 0.0)) throw std::logic_error("degenerate matrix game LP");
    const double shifted_value = 1.0 / total;

    GameSolution solution;
    solution.value = shift - shifted_value;
    solution.agent_policy.labels = r.rows;
    std::vector<double> y = lp.solution();
    solution.agent_policy.probabilities.resize(rows, 0.0);
    double sum = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
        const double p = std::max(0.0, y[i]);
        solution.agent_policy.probabilities[i] = p;
        sum += p;
    }
    for (double& p : solution.agent_policy.probabilities) p /= sum;
    return solution;
}

double expected_reward(const RewardMatrix& r, const Policy& agent, const Policy& opp) {
    check_matrix(r);
    if (agent.probabilities.size() != r.values.size() ||
        opp.probabilities.size() != r.values[0].size()) {
        throw std::invalid_argument("policy dimensions do not match the matrix");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < agent.probabilities.size(); ++i) {
        double row_sum = 0.0;
        for (std::size_t j = 0; j < opp.probabilities.size(); ++j) {
            row_sum += r.values[i][j] * opp.probabilities[j];
        }
        total += agent.probabilities[i] * row_sum;
    }
    return total;
}

double policy_entropy(const Policy& p) {
    double h = 0.0;
    for (double prob : p.probabilities) {
        if (prob > 0.0) h -= prob * std::log2(prob);
    }
    return h;
}

} // namespace feint
