#ifndef JETLAB_DETAIL_RATIONAL_SYSTEM_HPP
#define JETLAB_DETAIL_RATIONAL_SYSTEM_HPP

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include <jetlab/gauss_rat.hpp>

namespace jetlab::detail
{

enum class SolveStatus { unique, underdetermined, inconsistent };

struct SolveResult {
    SolveStatus status;
    std::size_t rank;
    std::vector<Rational> x; // filled only when unique
};

// Exact Gauss-Jordan elimination of A x = b over Q. Overdetermined systems
// are fine as long as they are consistent.
inline SolveResult solve_exact(std::vector<std::vector<Rational>> A, std::vector<Rational> b)
{
    const std::size_t rows = A.size();
    if (b.size() != rows) {
        throw std::invalid_argument("solve_exact: row count mismatch");
    }
    const std::size_t cols = rows == 0 ? 0 : A.front().size();
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && sgn(A[p][c]) == 0) {
            ++p;
        }
        if (p == rows) {
            continue;
        }
        std::swap(A[p], A[rank]);
        std::swap(b[p], b[rank]);
        const Rational inv = 1 / A[rank][c];
        for (std::size_t k = c; k < cols; ++k) {
            A[rank][k] *= inv;
        }
        b[rank] *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || sgn(A[r][c]) == 0) {
                continue;
            }
            const Rational factor = A[r][c];
            for (std::size_t k = c; k < cols; ++k) {
                if (sgn(A[rank][k]) != 0) {
                    A[r][k] -= factor * A[rank][k];
                }
            }
            b[r] -= factor * b[rank];
        }
        pivot_col.push_back(c);
        ++rank;
    }
    for (std::size_t r = rank; r < rows; ++r) {
        if (sgn(b[r]) != 0) {
            return {SolveStatus::inconsistent, rank, {}};
        }
    }
    if (rank < cols) {
        return {SolveStatus::underdetermined, rank, {}};
    }
    std::vector<Rational> x(cols);
    for (std::size_t r = 0; r < rank; ++r) {
        x[pivot_col[r]] = b[r];
    }
    return {SolveStatus::unique, rank, std::move(x)};
}

// Laplace expansion along the first row. Meant for the small matrices the
// determinant audits use.
inline GaussRat cofactor_determinant(const std::vector<std::vector<GaussRat>> &m)
{
    const std::size_t n = m.size();
    if (n == 0) {
        return GaussRat(1);
    }
    if (n == 1) {
        return m[0][0];
    }
    GaussRat det;
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c].is_zero()) {
            continue;
        }
        std::vector<std::vector<GaussRat>> minor;
        minor.reserve(n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<GaussRat> row;
            row.reserve(n - 1);
            for (std::size_t k = 0; k < n; ++k) {
                if (k != c) {
                    row.push_back(m[r][k]);
                }
            }
            minor.push_back(std::move(row));
        }
        const GaussRat term = m[0][c] * cofactor_determinant(minor);
        if (c % 2 == 0) {
            det += term;
        } else {
            det -= term;
        }
    }
    return det;
}

} // namespace jetlab::detail

#endif
