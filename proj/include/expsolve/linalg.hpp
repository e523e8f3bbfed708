#ifndef EXPSOLVE_LINALG_HPP
#define EXPSOLVE_LINALG_HPP

#include <vector>

#include "expsolve/scalar.hpp"

namespace expsolve {

// Dense row-major matrix over Scalar. Small sizes only; everything here is
// O(n^3) with no blocking.
class Matrix {
public:
    Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Scalar& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const Scalar& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    bool has_approx() const;
    Matrix to_approx() const;

private:
    size_t rows_, cols_;
    std::vector<Scalar> a_;
};

struct EliminationResult {
    int rank = 0;
    std::vector<size_t> pivot_cols;
};

/*
 * Rank and pivot columns. Exact matrices go through fraction-free
 * Bareiss-style elimination (denominators cleared per row first, so entries
 * stay Gaussian integers and growth is the usual minor-determinant bound);
 * approximate ones through elimination with magnitude pivoting and a
 * relative threshold.
 */
EliminationResult elimination_info(const Matrix& m, double rel_tol = 1e-10);

// Basis of the right nullspace of m. Exact path: echelon form plus exact
// back-substitution, each vector scaled so its first nonzero entry is 1.
// Approximate path: one-sided Jacobi; columns of V whose singular value
// falls below rel_tol * sigma_max.
std::vector<std::vector<Scalar>> nullspace(const Matrix& m, double rel_tol = 1e-10);

// Singular values (unsorted, per column of the orthogonalized matrix);
// approximate computation regardless of input mode.
std::vector<double> singular_values(const Matrix& m);

int rank(const Matrix& m, double rel_tol = 1e-10);

} // namespace expsolve

#endif
