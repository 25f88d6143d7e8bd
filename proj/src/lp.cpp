#include "equistat/lp.hpp"

#include "equistat/error.hpp"

namespace equistat {

std::optional<std::vector<Rat>> lp_feasible(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b) {
    const std::size_t m = A.size();
    if (b.size() != m) throw InputError("lp: row count mismatch");
    const std::size_t n = m ? A[0].size() : 0;
    for (const auto& row : A)
        if (row.size() != n) throw InputError("lp: ragged matrix");
    if (m == 0) return std::vector<Rat>(n);

    // Columns: x (n), surplus (m), artificial (m), rhs.
    const std::size_t cols = n + 2 * m;
    std::vector<std::vector<Rat>> T(m, std::vector<Rat>(cols + 1));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        Rat s = b[i].sign() < 0 ? Rat(-1) : Rat(1);
        for (std::size_t j = 0; j < n; ++j) T[i][j] = s * A[i][j];
        T[i][n + i] = -s;
        T[i][n + m + i] = 1;
        T[i][cols] = s * b[i];
        basis[i] = n + m + i;
    }
    // Reduced costs for minimizing the sum of artificials.
    std::vector<Rat> cost(cols + 1);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= cols; ++j)
            if (j < n + m || j == cols) cost[j] -= T[i][j];

    for (;;) {
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j)
            if (cost[j].sign() < 0) {
                enter = j;
                break;
            }
        if (enter == cols) break;
        std::size_t leave = m;
        Rat best;
        for (std::size_t i = 0; i < m; ++i) {
            if (T[i][enter].sign() <= 0) continue;
            Rat ratio = T[i][cols] / T[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) break;  // unbounded direction cannot occur in phase one
        Rat piv = T[leave][enter];
        for (auto& v : T[leave]) v /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || T[i][enter].sign() == 0) continue;
            Rat f = T[i][enter];
            for (std::size_t j = 0; j <= cols; ++j) T[i][j] -= f * T[leave][j];
        }
        if (cost[enter].sign() != 0) {
            Rat f = cost[enter];
            for (std::size_t j = 0; j <= cols; ++j) cost[j] -= f * T[leave][j];
        }
        basis[leave] = enter;
    }
    if (cost[cols].sign() != 0) return std::nullopt;  // -objective is nonzero
    std::vector<Rat> x(n);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) x[basis[i]] = T[i][cols];
    return x;
}

}  // namespace equistat
