#include "coint/rrr.hpp"

#include <cmath>

#include "ols.hpp"

namespace coint {

LowRankApprox low_rank_approx(const Matrix &s, int r) {
    if (r < 0 || r > std::min(s.rows(), s.cols()))
        throw InvalidRankError("low_rank_approx: rank " + std::to_string(r) +
                               " out of range for " + std::to_string(s.rows()) + "x" +
                               std::to_string(s.cols()));
    const bool tall = s.rows() > s.cols();
    const SvdResult f = tall ? svd(s.transpose()) : svd(s);

    LowRankApprox out;
    const Matrix truncated = f.left.leftCols(r) *
                             f.singular_values.head(r).asDiagonal() *
                             f.right.leftCols(r).transpose();
    out.approx = tall ? Matrix(truncated.transpose()) : truncated;
    out.error = f.singular_values.tail(f.singular_values.size() - r).squaredNorm();
    return out;
}

RrrEstimate rrr_ls(const Matrix &syx, const Matrix &sxx, const Matrix &gamma, int r,
                   const std::optional<Matrix> &syy) {
    const Index m = syx.rows();
    const Index n = syx.cols();
    if (sxx.rows() != n || sxx.cols() != n || gamma.rows() != m || gamma.cols() != m)
        throw InvalidInputError("rrr_ls: moment dimensions do not match");
    if (r < 0 || r > std::min(m, n))
        throw InvalidRankError("rrr_ls: rank out of range");
    detail::spd_llt(gamma, "rrr_ls: weight"); // reject non-SPD weights up front

    const Matrix isx = inv_sqrt(sxx);
    const Matrix core = isx * syx.transpose() * gamma * syx * isx;
    const EigenSystem es = sym_eigen(0.5 * (core + core.transpose()));

    RrrEstimate out;
    out.rank = r;
    out.eigenvalues = es.values;
    const double clamp = kRankTol * std::max(1.0, std::abs(es.values(0)));
    for (Index i = 0; i < out.eigenvalues.size(); ++i)
        if (out.eigenvalues(i) < 0.0 && out.eigenvalues(i) > -clamp)
            out.eigenvalues(i) = 0.0;

    const Matrix u_r = es.vectors.leftCols(r);
    out.a = syx * isx * u_r;
    out.b = u_r.transpose() * isx;
    if (r >= 1 && r < n)
        out.degenerate_tie = out.eigenvalues(r - 1) - out.eigenvalues(r) <=
                             1e-9 * std::max(1.0, out.eigenvalues(0));
    if (syy) {
        if (syy->rows() != m || syy->cols() != m)
            throw InvalidInputError("rrr_ls: Syy dimensions do not match");
        out.criterion_value = (gamma * (*syy)).trace() - out.eigenvalues.head(r).sum();
    }
    return out;
}

RrrEstimate rrr_ml(const Matrix &y, const Matrix &x, int r) {
    const Index m = y.rows();
    const Index n = x.rows();
    const Index t = y.cols();
    if (x.cols() != t) throw InvalidInputError("rrr_ml: observation counts differ");
    if (t <= m + n)
        throw SampleSizeError("rrr_ml: need more observations than m + n");

    const double tf = static_cast<double>(t);
    const Matrix sxx = (x * x.transpose()) / tf;
    const Matrix syx = (y * x.transpose()) / tf;
    const Matrix syy = (y * y.transpose()) / tf;

    const auto llt_xx = detail::spd_llt(sxx, "rrr_ml: Sxx");
    const Matrix c_full = llt_xx.solve(syx.transpose()).transpose(); // Syx Sxx^-1
    Matrix resid_cov = syy - c_full * syx.transpose();
    resid_cov = 0.5 * (resid_cov + resid_cov.transpose());

    const auto llt_eps = detail::spd_llt(resid_cov, "rrr_ml: residual covariance");
    const Matrix weight = llt_eps.solve(Matrix::Identity(m, m));
    return rrr_ls(syx, sxx, 0.5 * (weight + weight.transpose()), r, syy);
}

} // namespace coint
