#include "coint/var.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "ols.hpp"

namespace coint {

namespace {

// Design block [1, X_{t-1}, ..., X_{t-k}] with responses X_t for
// t = trim .. T-1. trim >= k lets lag selection share one sample.
struct VarDesign {
    Matrix y;
    Matrix x;
};

VarDesign build_design(const Matrix &values, int k, Index trim) {
    const Index t_total = values.rows();
    const Index p = values.cols();
    const Index n = t_total - trim;
    VarDesign d;
    d.y.resize(n, p);
    d.x.resize(n, 1 + p * k);
    for (Index i = 0; i < n; ++i) {
        const Index t = trim + i;
        d.y.row(i) = values.row(t);
        d.x(i, 0) = 1.0;
        for (int lag = 1; lag <= k; ++lag)
            d.x.block(i, 1 + p * (lag - 1), 1, p) = values.row(t - lag);
    }
    return d;
}

VarModel model_from_fit(Index p, int k, Index nobs, const detail::OlsFit &fit) {
    VarModel m;
    m.p = p;
    m.k = k;
    m.nobs = nobs;
    m.intercept = fit.coef.row(0).transpose();
    m.coeffs.reserve(k);
    for (int lag = 1; lag <= k; ++lag)
        m.coeffs.push_back(fit.coef.middleRows(1 + p * (lag - 1), p).transpose());
    m.resid_cov = (fit.resid.transpose() * fit.resid) / static_cast<double>(nobs);
    return m;
}

double log_det_spd(const Matrix &m, const char *what) {
    Eigen::LLT<Matrix> llt(m);
    if (llt.info() != Eigen::Success) {
        const double pivot = Eigen::LDLT<Matrix>(m).vectorD().minCoeff();
        throw SingularMomentError(std::string(what) + ": residual covariance is singular",
                                  pivot);
    }
    const Matrix l = llt.matrixL();
    double out = 0.0;
    for (Index i = 0; i < l.rows(); ++i) out += std::log(l(i, i));
    return 2.0 * out;
}

// PSD square root; tolerates zero noise and tiny negative round-off.
Matrix psd_factor(const Matrix &m) {
    const EigenSystem es = sym_eigen(m);
    const double floor = -kRankTol * std::max(1.0, es.values.cwiseAbs().maxCoeff());
    Vector d = es.values;
    for (Index i = 0; i < d.size(); ++i) {
        if (d(i) < floor)
            throw SingularMomentError("simulate_var: noise covariance has a negative eigenvalue",
                                      d(i));
        d(i) = std::sqrt(std::max(d(i), 0.0));
    }
    return es.vectors * d.asDiagonal() * es.vectors.transpose();
}

double companion_spectral_radius(const VarModel &model) {
    const Index p = model.p;
    const int k = model.k;
    Matrix companion = Matrix::Zero(p * k, p * k);
    for (int i = 0; i < k; ++i) companion.block(0, p * i, p, p) = model.coeffs[i];
    if (k > 1)
        companion.block(p, 0, p * (k - 1), p * (k - 1)) =
            Matrix::Identity(p * (k - 1), p * (k - 1));
    Eigen::EigenSolver<Matrix> solver(companion, /*computeEigenvectors=*/false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

} // namespace

VarModel fit_var(const SeriesPanel &panel, int k) {
    if (k < 1) throw InvalidInputError("fit_var: order must be >= 1");
    const Index p = panel.dim();
    const Index t_total = panel.length();
    if (t_total - k < p * k + 2)
        throw SampleSizeError("fit_var: sample too short for a VAR(" + std::to_string(k) +
                              ") in dimension " + std::to_string(p));
    const VarDesign d = build_design(panel.values(), k, k);
    const auto fit = detail::ols(d.y, d.x, "fit_var");
    return model_from_fit(p, k, t_total - k, fit);
}

double aic(const VarModel &model) {
    const double q = static_cast<double>(model.p) * model.p * model.k + model.p;
    return static_cast<double>(model.nobs) * log_det_spd(model.resid_cov, "aic") + 2.0 * q;
}

double sbc(const VarModel &model) {
    const double q = static_cast<double>(model.p) * model.p * model.k + model.p;
    return static_cast<double>(model.nobs) * log_det_spd(model.resid_cov, "sbc") +
           q * std::log(static_cast<double>(model.nobs));
}

LagSelection select_lag(const SeriesPanel &panel, int k_max) {
    if (k_max < 1) throw InvalidInputError("select_lag: k_max must be >= 1");
    const Index p = panel.dim();
    const Index t_total = panel.length();
    if (t_total - k_max < p * k_max + 2)
        throw SampleSizeError("select_lag: sample too short for k_max=" +
                              std::to_string(k_max));

    const Index nobs = t_total - k_max;
    LagSelection sel;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= k_max; ++k) {
        const VarDesign d = build_design(panel.values(), k, k_max);
        const auto fit = detail::ols(d.y, d.x, "select_lag");
        VarModel m = model_from_fit(p, k, nobs, fit);
        sel.aic.push_back(aic(m));
        sel.sbc.push_back(sbc(m));
        if (sel.aic.back() < best) {
            best = sel.aic.back();
            sel.chosen_k = k;
        }
    }
    return sel;
}

VecmModel vecm_from_var(const VarModel &model) {
    const Index p = model.p;
    VecmModel out;
    out.p = p;
    out.k = model.k;
    out.intercept = model.intercept;
    Matrix sum = Matrix::Zero(p, p);
    for (const auto &pi : model.coeffs) sum += pi;
    out.long_run = -(Matrix::Identity(p, p) - sum);
    out.short_run.reserve(model.k - 1);
    for (int i = 1; i < model.k; ++i) {
        Matrix tail = Matrix::Zero(p, p);
        for (int j = i + 1; j <= model.k; ++j) tail += model.coeffs[j - 1];
        out.short_run.push_back(-tail);
    }
    return out;
}

VarModel var_from_vecm(const VecmModel &model) {
    const Index p = model.p;
    const int k = model.k;
    VarModel out;
    out.p = p;
    out.k = k;
    out.intercept = model.intercept;
    out.coeffs.assign(k, Matrix::Zero(p, p));
    if (k == 1) {
        out.coeffs[0] = Matrix::Identity(p, p) + model.long_run;
        return out;
    }
    // Pi_1 = I + Gamma + Gamma_1; Pi_i = Gamma_i - Gamma_{i-1}; Pi_k = -Gamma_{k-1}.
    out.coeffs[0] = Matrix::Identity(p, p) + model.long_run + model.short_run[0];
    for (int i = 2; i <= k - 1; ++i)
        out.coeffs[i - 1] = model.short_run[i - 1] - model.short_run[i - 2];
    out.coeffs[k - 1] = -model.short_run[k - 2];
    return out;
}

SimulationResult simulate_var(const VarModel &model, Index length, Index burn_in,
                              std::uint64_t seed, const Matrix &noise_cov) {
    const Index p = model.p;
    if (length < 1) throw InvalidInputError("simulate_var: length must be >= 1");
    if (burn_in < 0) throw InvalidInputError("simulate_var: burn_in must be >= 0");
    if (noise_cov.rows() != p || noise_cov.cols() != p)
        throw InvalidInputError("simulate_var: noise covariance has wrong shape");
    if (static_cast<int>(model.coeffs.size()) != model.k)
        throw InvalidInputError("simulate_var: coefficient count does not match order");

    const Matrix factor = psd_factor(noise_cov);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    const Index total = burn_in + length;
    Matrix x = Matrix::Zero(total + model.k, p); // leading rows: zero history
    Vector shock(p);
    for (Index t = model.k; t < total + model.k; ++t) {
        for (Index j = 0; j < p; ++j) shock(j) = gauss(rng);
        Vector next = model.intercept + factor * shock;
        for (int lag = 1; lag <= model.k; ++lag)
            next += model.coeffs[lag - 1] * x.row(t - lag).transpose();
        x.row(t) = next.transpose();
    }

    std::vector<std::string> names;
    names.reserve(p);
    for (Index j = 0; j < p; ++j) names.push_back("x" + std::to_string(j + 1));

    SimulationResult out{
        SeriesPanel(std::move(names), Period{2000, 1}, x.bottomRows(length)), false, 0.0};
    out.spectral_radius = companion_spectral_radius(model);
    out.explosive = out.spectral_radius > 1.0 + 1e-8;
    return out;
}

} // namespace coint
