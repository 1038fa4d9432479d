#ifndef COINT_SRC_OLS_HPP
#define COINT_SRC_OLS_HPP

#include "coint/linalg.hpp"

namespace coint::detail {

struct OlsFit {
    Matrix coef;  // regressors-by-responses
    Matrix resid; // same shape as y
};

// Cholesky of an SPD matrix, or SingularMomentError with a pivot diagnostic.
inline Eigen::LLT<Matrix> spd_llt(const Matrix &m, const char *what) {
    Eigen::LLT<Matrix> llt(m);
    if (llt.info() != Eigen::Success) {
        const double pivot = Eigen::LDLT<Matrix>(m).vectorD().minCoeff();
        throw SingularMomentError(std::string(what) + " is not positive definite", pivot);
    }
    return llt;
}

// Multivariate least squares with a rank check on the design matrix.
inline OlsFit ols(const Matrix &y, const Matrix &x, const char *what) {
    if (y.rows() != x.rows()) throw InvalidInputError(std::string(what) + ": row mismatch");
    if (x.rows() <= x.cols())
        throw SampleSizeError(std::string(what) + ": fewer observations than regressors");
    Eigen::ColPivHouseholderQR<Matrix> qr(x);
    qr.setThreshold(kRankTol);
    if (qr.rank() < x.cols())
        throw SingularRegressionError(std::string(what) + ": collinear regressors (rank " +
                                      std::to_string(qr.rank()) + " of " +
                                      std::to_string(x.cols()) + ")");
    OlsFit fit;
    fit.coef = qr.solve(y);
    fit.resid = y - x * fit.coef;
    return fit;
}

} // namespace coint::detail

#endif
