#include "coint/ggdecomp.hpp"

namespace coint {

namespace {

// Inverse guarded by a condition-number cutoff: past 1e12 the split is
// numerically meaningless and silently regularizing it would break the
// completeness identity.
Matrix guarded_inverse(const Matrix &m, const char *what) {
    Eigen::JacobiSVD<Matrix> svd_m(m);
    const double smax = svd_m.singularValues()(0);
    const double smin = svd_m.singularValues()(svd_m.singularValues().size() - 1);
    if (!(smin > 0.0) || smax / smin > 1e12)
        throw DegenerateGeometryError(std::string(what) +
                                      " is singular or ill-conditioned; the decomposition "
                                      "does not exist for this geometry");
    return m.fullPivLu().inverse();
}

} // namespace

PtLoadings pt_loadings(const Matrix &alpha, const Matrix &beta, const Matrix &alpha_perp,
                       const Matrix &beta_perp) {
    const Index p = alpha.rows();
    const Index r = alpha.cols();
    if (beta.rows() != p || beta.cols() != r || alpha_perp.rows() != p ||
        beta_perp.rows() != p || alpha_perp.cols() != p - r || beta_perp.cols() != p - r)
        throw InvalidInputError("pt_loadings: dimension mismatch");

    PtLoadings out;
    out.a1 = beta_perp * guarded_inverse(alpha_perp.transpose() * beta_perp,
                                         "pt_loadings: alpha_perp' beta_perp");
    if (r > 0)
        out.a2 = alpha * guarded_inverse(beta.transpose() * alpha, "pt_loadings: beta' alpha");
    else
        out.a2 = Matrix::Zero(p, 0);
    return out;
}

PtDecomposition decompose(const SeriesPanel &panel, const JohansenFit &fit) {
    if (panel.dim() != fit.p) throw InvalidInputError("decompose: panel does not match fit");
    if (fit.r == 0)
        throw NoDecompositionError(
            "decompose: cointegrating rank is zero, no permanent-transitory "
            "decomposition exists");
    if (fit.r >= static_cast<int>(fit.p))
        throw InvalidRankError("decompose: rank must be below the system dimension");

    const PtLoadings load = pt_loadings(fit.alpha, fit.beta, fit.alpha_perp, fit.beta_perp);

    PtDecomposition out;
    out.a1 = load.a1;
    out.a2 = load.a2;
    out.permanent_factors = panel.values() * fit.alpha_perp;
    out.transitory_factors = panel.values() * fit.beta;
    out.permanent = out.permanent_factors * load.a1.transpose();
    out.transitory = out.transitory_factors * load.a2.transpose();

    const double gap = (out.permanent + out.transitory - panel.values())
                           .cwiseAbs()
                           .maxCoeff();
    if (gap > 1e-8)
        throw NumericalInconsistencyError(
            "decompose: components fail to reconstruct the panel (gap " +
            std::to_string(gap) + ")");
    return out;
}

} // namespace coint
