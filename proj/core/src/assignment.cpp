#include <matrack/assignment.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace matrack {
namespace {

constexpr double kForbidden = 1e18;

// Result of one Jonker-Volgenant pass over a gated rectangular problem.
struct CoreResult {
    int cardinality = 0;
    double total = 0.0;             // raw score sum over matches, row order
    std::vector<int> row_to_col;    // -1 = unmatched
    std::vector<double> u, v;       // potentials of the padded square problem
    double shift = 0.0;             // cardinality-dominating score shift
};

// Shortest-augmenting-path assignment on a dense square cost matrix
// (minimize). Classic O(n^3) formulation with potentials; `cost` is a
// callable (i, j) -> double over 0-based indices.
void jv_square(int n, const std::function<double(int, int)>& cost,
               std::vector<int>& col_to_row, std::vector<double>& u,
               std::vector<double>& v) {
    const double inf = std::numeric_limits<double>::infinity();
    u.assign(n + 1, 0.0);
    v.assign(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = -1;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    col_to_row.assign(n, -1);
    for (int j = 1; j <= n; ++j) col_to_row[j - 1] = p[j] - 1;
}

// Solves the gated problem over an index subset. The square padding gives
// every row/column a zero-weight escape arc, so a perfect matching always
// exists; the shift Z makes one extra feasible pair outweigh any total-score
// difference, which ranks cardinality above raw score.
CoreResult solve_core(const ScoreMatrix& scores, double gate,
                      const std::vector<int>& rows, const std::vector<int>& cols) {
    const int m = static_cast<int>(rows.size());
    const int nc = static_cast<int>(cols.size());
    CoreResult res;
    res.row_to_col.assign(m, -1);
    if (m == 0 || nc == 0) return res;

    double max_abs = 1.0;
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < nc; ++b) {
            const double s = scores(rows[a], cols[b]);
            if (s >= gate) max_abs = std::max(max_abs, std::abs(s));
        }
    }
    const double z = (max_abs + 1.0) * (2.0 * std::min(m, nc) + 2.0);
    res.shift = z;

    const int n = m + nc;
    auto cost = [&](int i, int j) -> double {
        if (i < m && j < nc) {
            const double s = scores(rows[i], cols[j]);
            return s >= gate ? -(s + z) : kForbidden;
        }
        if (i < m) return (j - nc == i) ? 0.0 : kForbidden;   // row escape
        if (j < nc) return (i - m == j) ? 0.0 : kForbidden;   // column escape
        return 0.0;                                           // dummy-dummy
    };

    std::vector<int> col_to_row;
    jv_square(n, cost, col_to_row, res.u, res.v);

    for (int b = 0; b < nc; ++b) {
        const int a = col_to_row[b];
        if (a >= 0 && a < m && scores(rows[a], cols[b]) >= gate) {
            res.row_to_col[a] = b;
        }
    }
    for (int a = 0; a < m; ++a) {
        if (res.row_to_col[a] >= 0) {
            ++res.cardinality;
            res.total += scores(rows[a], cols[res.row_to_col[a]]);
        }
    }
    return res;
}

}  // namespace

Assignment solve(const ScoreMatrix& scores, double gate) {
    const int m = static_cast<int>(scores.rows());
    const int n = static_cast<int>(scores.cols());
    if (!scores.allFinite()) {
        throw InvalidInputError("score matrix must be finite");
    }

    Assignment out;
    if (m == 0 || n == 0) {
        out.unmatched_rows.resize(m);
        std::iota(out.unmatched_rows.begin(), out.unmatched_rows.end(), 0);
        out.unmatched_cols.resize(n);
        std::iota(out.unmatched_cols.begin(), out.unmatched_cols.end(), 0);
        return out;
    }

    std::vector<int> all_rows(m), all_cols(n);
    std::iota(all_rows.begin(), all_rows.end(), 0);
    std::iota(all_cols.begin(), all_cols.end(), 0);
    const CoreResult root = solve_core(scores, gate, all_rows, all_cols);

    // Canonicalize to the lexicographically smallest optimal match set.
    // A real arc can belong to an optimal matching of the padded problem
    // only if its reduced cost is zero, so non-zero arcs are skipped without
    // a re-solve; on tie-free inputs this pass costs nothing.
    const double lex_tol = 1e-7 * (root.shift + 1.0);
    auto reduced_cost = [&](int r, int c) {
        const double s = scores(r, c);
        return -(s + root.shift) - root.u[r + 1] - root.v[c + 1];
    };
    auto totals_equal = [](double a, double b) {
        return std::abs(a - b) <= 1e-9 * (1.0 + std::abs(a) + std::abs(b));
    };

    std::vector<char> col_active(n, 1);
    std::vector<int> cur = root.row_to_col;  // over original column indices
    int remaining_k = root.cardinality;
    double remaining_t = root.total;

    for (int r = 0; r < m; ++r) {
        const int c_cur = cur[r];
        const int limit = (c_cur < 0) ? n : c_cur;
        int chosen = c_cur;

        std::vector<int> sub_rows;
        for (int a = r + 1; a < m; ++a) sub_rows.push_back(a);

        for (int c = 0; c < limit; ++c) {
            if (!col_active[c] || scores(r, c) < gate) continue;
            if (std::abs(reduced_cost(r, c)) > lex_tol) continue;
            std::vector<int> sub_cols;
            for (int b = 0; b < n; ++b) {
                if (col_active[b] && b != c) sub_cols.push_back(b);
            }
            const CoreResult sub = solve_core(scores, gate, sub_rows, sub_cols);
            if (sub.cardinality + 1 == remaining_k &&
                totals_equal(sub.total + scores(r, c), remaining_t)) {
                chosen = c;
                for (int a = 0; a < static_cast<int>(sub_rows.size()); ++a) {
                    cur[sub_rows[a]] =
                        sub.row_to_col[a] < 0 ? -1 : sub_cols[sub.row_to_col[a]];
                }
                break;
            }
        }

        cur[r] = chosen;
        if (chosen >= 0) {
            col_active[chosen] = 0;
            --remaining_k;
            remaining_t -= scores(r, chosen);
        }
    }

    std::vector<char> col_matched(n, 0);
    for (int r = 0; r < m; ++r) {
        if (cur[r] >= 0) {
            out.matches.emplace_back(r, cur[r]);
            out.total_score += scores(r, cur[r]);
            col_matched[cur[r]] = 1;
        } else {
            out.unmatched_rows.push_back(r);
        }
    }
    for (int c = 0; c < n; ++c) {
        if (!col_matched[c]) out.unmatched_cols.push_back(c);
    }
    return out;
}

}  // namespace matrack
