#ifndef COINT_RRR_HPP
#define COINT_RRR_HPP

#include <optional>

#include "coint/linalg.hpp"

namespace coint {

/// Rank-r coefficient estimate for Y = A B X + e, with the eigenvalues of
/// the weighted cross-moment matrix the estimate derives from. When the
/// r-th and (r+1)-th eigenvalues tie, the factor subspace is not unique
/// and only the product A*B is comparable across solvers.
struct RrrEstimate {
    Matrix a; // m x r
    Matrix b; // r x n
    int rank = 0;
    std::optional<double> criterion_value;
    Vector eigenvalues; // lambda^2, descending
    bool degenerate_tie = false;
};

struct LowRankApprox {
    Matrix approx;
    double error = 0.0; // sum of squared discarded singular values
};

/// Best rank-r approximation in Frobenius norm (truncated SVD).
LowRankApprox low_rank_approx(const Matrix &s, int r);

/// Weighted least-squares reduced-rank estimator:
///   A = Syx Sxx^{-1/2} U_(r),  B = U_(r)' Sxx^{-1/2},
/// with U_(r) the top-r eigenvectors of Sxx^{-1/2} Sxy Gamma Syx Sxx^{-1/2}.
/// When Syy is supplied the minimized criterion tr(Gamma Syy) - sum of the
/// top r eigenvalues is recorded.
RrrEstimate rrr_ls(const Matrix &syx, const Matrix &sxx, const Matrix &gamma, int r,
                   const std::optional<Matrix> &syy = std::nullopt);

/// Maximum-likelihood rank-r fit from data matrices with observations in
/// columns (Y m-by-T, X n-by-T): rrr_ls at the sample moments with the
/// inverse full-rank residual covariance as the weight. The data is used
/// as-is; center beforehand when the model has an intercept.
RrrEstimate rrr_ml(const Matrix &y, const Matrix &x, int r);

} // namespace coint

#endif
