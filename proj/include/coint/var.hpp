#ifndef COINT_VAR_HPP
#define COINT_VAR_HPP

#include <cstdint>
#include <vector>

#include "coint/series.hpp"

namespace coint {

/// Level-form VAR(k): X_t = intercept + coeffs[0] X_{t-1} + ... + coeffs[k-1] X_{t-k} + e_t.
struct VarModel {
    Index p = 0;
    int k = 1;
    Vector intercept;            // Pi_0
    std::vector<Matrix> coeffs;  // Pi_1 .. Pi_k
    Matrix resid_cov;            // E'E / nobs
    Index nobs = 0;
};

/// Error-correction form with the short-run matrices entering negatively:
/// dX_t = intercept + long_run X_{t-1} - short_run[0] dX_{t-1} - ... + e_t.
struct VecmModel {
    Index p = 0;
    int k = 1;
    Vector intercept;              // Gamma_0
    Matrix long_run;               // Gamma = alpha beta'
    std::vector<Matrix> short_run; // Gamma_1 .. Gamma_{k-1}
};

struct LagSelection {
    std::vector<double> aic; // index k-1
    std::vector<double> sbc;
    int chosen_k = 1;
};

struct SimulationResult {
    SeriesPanel panel;
    bool explosive = false;
    double spectral_radius = 0.0; // companion-matrix modulus
};

/// Equation-wise least squares on [1, X_{t-1}, ..., X_{t-k}].
VarModel fit_var(const SeriesPanel &panel, int k);

/// nobs * ln|resid_cov| + 2 (p^2 k + p)
double aic(const VarModel &model);
/// nobs * ln|resid_cov| + (p^2 k + p) ln(nobs)
double sbc(const VarModel &model);

/// Fit orders 1..k_max on the identical effective sample (first k_max rows
/// trimmed) and pick the AIC minimizer, first on ties.
LagSelection select_lag(const SeriesPanel &panel, int k_max);

VecmModel vecm_from_var(const VarModel &model);
VarModel var_from_vecm(const VecmModel &model);

/// Gaussian simulation of the recursion, deterministic for a fixed seed.
/// noise_cov may be PSD (zero noise allowed). Initial history is zero and
/// burn_in leading steps are discarded.
SimulationResult simulate_var(const VarModel &model, Index length, Index burn_in,
                              std::uint64_t seed, const Matrix &noise_cov);

} // namespace coint

#endif
