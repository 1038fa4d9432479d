#include "coint/unitroot.hpp"

#include <cmath>
#include <limits>

#include "ols.hpp"

namespace coint {

double sample_std(const std::vector<double> &x) {
    const std::size_t n = x.size();
    if (n < 2) return 0.0;
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(n - 1));
}

DiffSearchResult diff_search(const std::vector<double> &x, int max_s, int max_d) {
    if (max_s < 1 || max_d < 0)
        throw InvalidInputError("diff_search: need max_s >= 1 and max_d >= 0");
    if (static_cast<long>(x.size()) <= static_cast<long>(max_s) * max_d)
        throw SampleSizeError("diff_search: series too short for the deepest transform");

    DiffSearchResult out;
    out.rows.push_back({1, 0, sample_std(x)});
    for (int d = 1; d <= max_d; ++d)
        for (int s = 1; s <= max_s; ++s)
            out.rows.push_back({s, d, sample_std(diff(x, s, d))});

    // Minimal sigma; ties toward smaller d, then smaller s.
    const DiffSearchRow *best = &out.rows.front();
    for (const auto &row : out.rows) {
        const bool better = row.sigma < best->sigma ||
                            (row.sigma == best->sigma &&
                             (row.d < best->d || (row.d == best->d && row.s < best->s)));
        if (better) best = &row;
    }
    out.best_s = best->s;
    out.best_d = best->d;
    out.best_sigma = best->sigma;
    return out;
}

std::optional<double> classify_rejection(double statistic, const AdfCriticalValues &cv) {
    if (statistic < cv.at_1pct) return 0.01;
    if (statistic < cv.at_5pct) return 0.05;
    if (statistic < cv.at_10pct) return 0.10;
    return std::nullopt;
}

AdfResult adf_test(const std::vector<double> &x, int max_lags, const AdfCriticalValues &cv) {
    if (max_lags < 0) throw InvalidInputError("adf_test: max_lags must be >= 0");
    const long t_total = static_cast<long>(x.size());
    // Need the common sample to cover the widest regression with room to spare.
    const long nobs = t_total - 1 - max_lags;
    if (nobs < max_lags + 3)
        throw SampleSizeError("adf_test: series of length " + std::to_string(t_total) +
                              " too short for max_lags=" + std::to_string(max_lags));

    std::vector<double> dx(t_total - 1);
    for (long t = 0; t + 1 < t_total; ++t) dx[t] = x[t + 1] - x[t];

    // Response rows are dx[max_lags .. end]; every candidate lag count is
    // fit over these same rows (the fixed-sample device).
    Vector y(nobs);
    for (long i = 0; i < nobs; ++i) y(i) = dx[max_lags + i];

    AdfResult out;
    out.critical_values = cv;
    out.aic_by_lag.assign(max_lags + 1, 0.0);

    double best_aic = std::numeric_limits<double>::infinity();
    int best_lag = 0;
    for (int lag = 0; lag <= max_lags; ++lag) {
        Matrix design(nobs, 2 + lag);
        for (long i = 0; i < nobs; ++i) {
            design(i, 0) = 1.0;
            design(i, 1) = x[max_lags + i]; // level one step before the response
            for (int j = 1; j <= lag; ++j) design(i, 1 + j) = dx[max_lags + i - j];
        }
        const auto fit = detail::ols(y, design, "adf_test");
        const double ssr = fit.resid.squaredNorm();
        const int nparams = 2 + lag;
        const double aic =
            static_cast<double>(nobs) * std::log(ssr / static_cast<double>(nobs)) +
            2.0 * nparams;
        out.aic_by_lag[lag] = aic;
        if (aic < best_aic) {
            best_aic = aic;
            best_lag = lag;
        }
    }

    // Refit at the chosen lag for the t-ratio on the lagged level.
    {
        const int lag = best_lag;
        Matrix design(nobs, 2 + lag);
        for (long i = 0; i < nobs; ++i) {
            design(i, 0) = 1.0;
            design(i, 1) = x[max_lags + i];
            for (int j = 1; j <= lag; ++j) design(i, 1 + j) = dx[max_lags + i - j];
        }
        const auto fit = detail::ols(y, design, "adf_test");
        const double ssr = fit.resid.squaredNorm();
        const long dof = nobs - (2 + lag);
        if (dof < 1) throw SampleSizeError("adf_test: no residual degrees of freedom");
        const double sigma2 = ssr / static_cast<double>(dof);
        const Matrix xtx_inv =
            (design.transpose() * design).ldlt().solve(Matrix::Identity(2 + lag, 2 + lag));
        const double se = std::sqrt(sigma2 * xtx_inv(1, 1));
        if (!(se > 0.0))
            throw SingularRegressionError("adf_test: degenerate regression, zero variance");
        out.statistic = fit.coef(1, 0) / se;
    }

    out.chosen_lags = best_lag;
    out.reject_at = classify_rejection(out.statistic, cv);
    return out;
}

} // namespace coint
