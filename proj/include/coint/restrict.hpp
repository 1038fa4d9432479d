#ifndef COINT_RESTRICT_HPP
#define COINT_RESTRICT_HPP

#include "coint/johansen.hpp"

namespace coint {

/// Likelihood-ratio test of the common-trends restriction alpha_perp = G theta
/// for a p-by-m selection matrix G with p - r <= m < p.
struct RestrictionTest {
    Matrix g; // p x m
    int m = 0;
    Matrix theta_hat;              // m x (p-r)
    Matrix alpha_perp_restricted;  // G theta_hat
    Vector restricted_eigenvalues; // m values, descending
    double lr_stat = 0.0;
    int df = 0; // (p-r)(p-m)
    double p_value = 1.0;
};

struct ExclusionScanRow {
    std::vector<std::string> excluded; // series labels dropped from G
    RestrictionTest test;
};

/// Survival function of the chi-square distribution via the regularized
/// incomplete gamma function. df = 0 is defined only at the x = 0 boundary.
double chi_square_sf(double x, int df);

/// Inverts the survival function: chi_square_sf(quantile(q, df), df) = 1 - q.
double chi_square_quantile(double q, int df);

RestrictionTest test_alpha_perp(const JohansenFit &fit, const Matrix &g);

/// Tests every nonempty exclusion set of at most max_excluded variables
/// (G built from the complementary canonical basis vectors), sorted by
/// descending p-value. Requires max_excluded <= r so each m stays >= p - r.
std::vector<ExclusionScanRow> exclusion_scan(const JohansenFit &fit, int max_excluded);

} // namespace coint

#endif
