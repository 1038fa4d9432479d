#ifndef COINT_GGDECOMP_HPP
#define COINT_GGDECOMP_HPP

#include "coint/johansen.hpp"

namespace coint {

/// Loading matrices of the permanent-transitory split:
///   a1 = beta_perp (alpha_perp' beta_perp)^-1
///   a2 = alpha (beta' alpha)^-1
/// Together they resolve the identity a1 alpha_perp' + a2 beta' = I.
struct PtLoadings {
    Matrix a1; // p x (p-r)
    Matrix a2; // p x r
};

/// X_t split into a permanent part driven by the common-trends factors
/// f_t = alpha_perp' X_t and a transitory part driven by z_t = beta' X_t.
/// permanent + transitory reproduces the panel row for row.
struct PtDecomposition {
    Matrix a1;
    Matrix a2;
    Matrix permanent_factors;  // T x (p-r), alpha_perp' X_t
    Matrix transitory_factors; // T x r, beta' X_t
    Matrix permanent;          // T x p, A1 f_t
    Matrix transitory;         // T x p, A2 z_t
};

PtLoadings pt_loadings(const Matrix &alpha, const Matrix &beta, const Matrix &alpha_perp,
                       const Matrix &beta_perp);

/// Requires 0 < r < p: a rank-zero fit has no common-trends split.
PtDecomposition decompose(const SeriesPanel &panel, const JohansenFit &fit);

} // namespace coint

#endif
