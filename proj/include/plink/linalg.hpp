// Small dense exact linear algebra: determinants, square solves, rank,
// and a phase-1 simplex feasibility test for convex cell disjointness.
#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "plink/rational.hpp"

namespace plink {

using Mat = std::vector<std::vector<Rational>>;

inline Rational det(Mat a) {
    const size_t n = a.size();
    for (const auto& row : a)
        if (row.size() != n) throw std::invalid_argument("det: matrix not square");
    Rational result = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        if (pivot == n) return Rational(0);
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            result = -result;
        }
        result *= a[col][col];
        for (size_t r = col + 1; r < n; ++r) {
            if (a[r][col] == 0) continue;
            Rational f = a[r][col] / a[col][col];
            for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return result;
}

// Unique solution of A x = b for square A, or nullopt when A is singular.
inline std::optional<std::vector<Rational>> solve_square(Mat a, std::vector<Rational> b) {
    const size_t n = a.size();
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rational f = a[r][col] / a[col][col];
            for (size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<Rational> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

inline size_t rank(Mat a) {
    if (a.empty()) return 0;
    const size_t rows = a.size(), cols = a[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t pivot = r;
        while (pivot < rows && a[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[r]);
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational f = a[i][c] / a[r][c];
            for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

// Feasibility of {x >= 0 : A x = b}. Returns a feasible point or nullopt.
// Phase-1 simplex with Bland's rule; exact arithmetic, guaranteed to
// terminate. Sizes here are tiny (a handful of rows and columns).
inline std::optional<std::vector<Rational>> lp_feasible(Mat a, std::vector<Rational> b) {
    const size_t m = a.size();
    if (m == 0) return std::vector<Rational>{};
    const size_t n = a[0].size();
    for (size_t i = 0; i < m; ++i)
        if (b[i] < 0) {
            for (auto& v : a[i]) v = -v;
            b[i] = -b[i];
        }
    // Tableau over columns [x (n) | artificials (m) | rhs].
    const size_t cols = n + m + 1;
    std::vector<std::vector<Rational>> t(m, std::vector<Rational>(cols, Rational(0)));
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
        t[i][n + i] = 1;
        t[i][cols - 1] = b[i];
    }
    std::vector<size_t> basis(m);
    for (size_t i = 0; i < m; ++i) basis[i] = n + i;
    // Objective: minimize sum of artificials; reduced costs row.
    std::vector<Rational> z(cols, Rational(0));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < cols; ++j) z[j] += t[i][j];
    for (size_t i = 0; i < m; ++i) z[n + i] -= 1;  // artificial columns have cost 1

    while (true) {
        size_t enter = cols;
        for (size_t j = 0; j < n; ++j)  // Bland: smallest eligible index
            if (z[j] > 0) {
                enter = j;
                break;
            }
        if (enter == cols) break;
        size_t leave = m;
        Rational best;
        for (size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rational ratio = t[i][cols - 1] / t[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                best = ratio;
                leave = i;
            }
        }
        if (leave == m) break;  // unbounded cannot happen in phase 1; defensive exit
        Rational piv = t[leave][enter];
        for (size_t j = 0; j < cols; ++j) t[leave][j] /= piv;
        for (size_t i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            Rational f = t[i][enter];
            for (size_t j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
        }
        Rational f = z[enter];
        for (size_t j = 0; j < cols; ++j) z[j] -= f * t[leave][j];
        basis[leave] = enter;
    }

    Rational objective = 0;
    for (size_t i = 0; i < m; ++i)
        if (basis[i] >= n) objective += t[i][cols - 1];
    if (objective != 0) return std::nullopt;
    std::vector<Rational> x(n, Rational(0));
    for (size_t i = 0; i < m; ++i)
        if (basis[i] < n) x[basis[i]] = t[i][cols - 1];
    return x;
}

}  // namespace plink
