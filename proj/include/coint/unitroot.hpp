#ifndef COINT_UNITROOT_HPP
#define COINT_UNITROOT_HPP

#include <optional>
#include <vector>

#include "coint/series.hpp"

namespace coint {

/// One (s, d) cell of the differencing search: the sample standard
/// deviation of the series after d differences at lag s.
struct DiffSearchRow {
    int s = 1;
    int d = 0;
    double sigma = 0.0;
};

struct DiffSearchResult {
    std::vector<DiffSearchRow> rows;
    int best_s = 1;
    int best_d = 0;
    double best_sigma = 0.0;
};

/// Critical values of the constant-only Dickey-Fuller distribution.
struct AdfCriticalValues {
    double at_1pct = -3.46;
    double at_5pct = -2.88;
    double at_10pct = -2.57;
};

struct AdfResult {
    int chosen_lags = 0;
    std::vector<double> aic_by_lag; // index = lagged-difference count
    double statistic = 0.0;
    AdfCriticalValues critical_values;
    std::optional<double> reject_at; // smallest level at which rejected
};

/// Sample standard deviation (divisor n-1); 0 for fewer than two points.
double sample_std(const std::vector<double> &x);

/// Scan all differencing transforms with s in 1..max_s and d in 0..max_d
/// (the untransformed series enters once, as the d = 0 baseline row).
/// The optimum minimizes sigma; ties break toward smaller d, then smaller s.
DiffSearchResult diff_search(const std::vector<double> &x, int max_s, int max_d);

/// Augmented Dickey-Fuller test with a constant and no trend. Every lag
/// count 0..max_lags is fit on the same effective sample (the first
/// max_lags usable rows are trimmed up front) so the per-lag AIC values
/// are comparable; the statistic is the t-ratio on the lagged level at
/// the AIC-minimizing lag count.
AdfResult adf_test(const std::vector<double> &x, int max_lags = 3,
                   const AdfCriticalValues &cv = AdfCriticalValues{});

/// Smallest level in {1%, 5%, 10%} at which `statistic` rejects the unit
/// root, or nullopt when it rejects at none.
std::optional<double> classify_rejection(double statistic, const AdfCriticalValues &cv);

} // namespace coint

#endif
