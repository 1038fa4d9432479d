#ifndef COINT_LINALG_HPP
#define COINT_LINALG_HPP

#include <Eigen/Dense>

#include "coint/errors.hpp"

namespace coint {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Relative cutoff below which a singular value counts as zero.
inline constexpr double kRankTol = 1e-10;

// Relative asymmetry tolerated by sym_eigen before rejecting the input.
inline constexpr double kSymTol = 1e-8;

/// Eigenvalues sorted non-increasing; column i of vectors pairs with values[i].
struct EigenSystem {
    Vector values;
    Matrix vectors;
};

/// Factors of S = left * diag(singular_values) * right', with S m-by-n, m <= n.
/// left is m-by-m orthogonal, right is n-by-m with orthonormal columns,
/// singular values non-negative and non-increasing.
struct SvdResult {
    Matrix left;
    Vector singular_values;
    Matrix right;
};

bool all_finite(const Matrix &m);

SvdResult svd(const Matrix &s);

/// Spectral decomposition of a symmetric matrix, eigenvalues descending.
/// Input must satisfy ||A - A'|| <= kSymTol * ||A||; it is then symmetrized.
EigenSystem sym_eigen(const Matrix &a);

/// Solves L x = lambda M x for symmetric PSD L and SPD M by Cholesky
/// whitening. Eigenvectors are M-conjugate: W' M W = I.
EigenSystem gen_eigen(const Matrix &l, const Matrix &m);

/// Symmetric R with R * M * R = I for SPD M.
Matrix inv_sqrt(const Matrix &m);

/// Orthonormal basis Q (p-by-(p-r)) of the orthogonal complement of the
/// column space of a full-column-rank p-by-r matrix: Q' M = 0, Q' Q = I.
Matrix perp(const Matrix &m);

} // namespace coint

#endif
