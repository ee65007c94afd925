#pragma once

#include <cstddef>
#include <vector>

#include "cycert/rational.hpp"

namespace cycert {

using RationalMatrix = std::vector<std::vector<Rational>>;
using RationalVector = std::vector<Rational>;

struct LinearSolution {
    bool consistent = false;
    RationalVector particular;            // one solution of A x = b
    std::vector<RationalVector> nullspace;  // basis of solutions of A x = 0
};

/// Exact Gaussian elimination over Q.
inline LinearSolution solve_linear(RationalMatrix a, RationalVector b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();

    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[rank]);
        std::swap(b[pivot], b[rank]);
        Rational inv = Rational(1) / a[rank][col];
        for (std::size_t j = col; j < cols; ++j) a[rank][j] *= inv;
        b[rank] *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || a[r][col] == 0) continue;
            Rational factor = a[r][col];
            for (std::size_t j = col; j < cols; ++j) a[r][j] -= factor * a[rank][j];
            b[r] -= factor * b[rank];
        }
        pivot_col.push_back(col);
        ++rank;
    }

    LinearSolution sol;
    for (std::size_t r = rank; r < rows; ++r)
        if (b[r] != 0) return sol;  // inconsistent
    sol.consistent = true;

    sol.particular.assign(cols, Rational(0));
    for (std::size_t r = 0; r < rank; ++r) sol.particular[pivot_col[r]] = b[r];

    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        RationalVector basis(cols, Rational(0));
        basis[free_col] = 1;
        for (std::size_t r = 0; r < rank; ++r) basis[pivot_col[r]] = -a[r][free_col];
        sol.nullspace.push_back(std::move(basis));
    }
    return sol;
}

namespace linalg_detail {

inline RationalVector mat_vec(const RationalMatrix& m, const RationalVector& v) {
    RationalVector r(m.size(), Rational(0));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
    return r;
}

}  // namespace linalg_detail

/// Minimizes ||C u||^2 over the affine space {particular + span(nullspace)},
/// exactly. When the minimizer is not unique, the result is further resolved
/// by minimizing ||u||^2 within the optimal set, which makes it unique and
/// deterministic.
inline RationalVector minimize_quadratic_on_affine(const RationalMatrix& c,
                                                   const RationalVector& particular,
                                                   const std::vector<RationalVector>& nullspace) {
    using linalg_detail::mat_vec;
    if (nullspace.empty()) return particular;
    const std::size_t n = particular.size();
    const std::size_t k = nullspace.size();

    // Columns of CN and the target -C u0.
    std::vector<RationalVector> cn;
    cn.reserve(k);
    for (const auto& dir : nullspace) cn.push_back(mat_vec(c, dir));
    RationalVector cu0 = mat_vec(c, particular);

    // Normal equations (CN)^T (CN) t = -(CN)^T C u0.
    RationalMatrix m(k, RationalVector(k, Rational(0)));
    RationalVector rhs(k, Rational(0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t r = 0; r < cu0.size(); ++r) m[i][j] += cn[i][r] * cn[j][r];
        for (std::size_t r = 0; r < cu0.size(); ++r) rhs[i] -= cn[i][r] * cu0[r];
    }
    LinearSolution t = solve_linear(m, rhs);
    // Normal equations of a PSD quadratic are always consistent.
    RationalVector u = particular;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) u[j] += t.particular[i] * nullspace[i][j];

    if (t.nullspace.empty()) return u;

    // Objective-flat directions remain: resolve by minimizing ||u||^2 on the
    // residual affine space (identity-weighted second stage).
    std::vector<RationalVector> residual_dirs;
    for (const auto& s : t.nullspace) {
        RationalVector dir(n, Rational(0));
        bool nonzero = false;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                dir[j] += s[i] * nullspace[i][j];
                if (dir[j] != 0) nonzero = true;
            }
        if (nonzero) residual_dirs.push_back(std::move(dir));
    }
    if (residual_dirs.empty()) return u;
    RationalMatrix identity(n, RationalVector(n, Rational(0)));
    for (std::size_t j = 0; j < n; ++j) identity[j][j] = 1;
    return minimize_quadratic_on_affine(identity, u, residual_dirs);
}

}  // namespace cycert
