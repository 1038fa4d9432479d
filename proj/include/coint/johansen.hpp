#ifndef COINT_JOHANSEN_HPP
#define COINT_JOHANSEN_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "coint/series.hpp"

namespace coint {

/// Concentrated residual blocks: R0 from regressing the differences on the
/// short-run lags and a constant, R1 from regressing the lagged levels on
/// the same regressors. Rows are observations.
struct Concentrated {
    Matrix r0;
    Matrix r1;
    Index nobs = 0;
};

/// Product moments Sab = Ra' Rb / nobs. S10 is S01' by construction.
struct MomentSet {
    Matrix s00;
    Matrix s01;
    Matrix s11;
    Index nobs = 0;

    Matrix s10() const { return s01.transpose(); }
};

/// Primal and dual eigensolutions sharing one spectrum:
///   (S10 S00^-1 S01) w = lambda^2 S11 w,   W' S11 W = I
///   (S01 S11^-1 S10) z = lambda^2 S00 z,   Z' S00 Z = I
struct JohansenEigen {
    Vector eigenvalues; // lambda^2, descending, in [0, 1)
    Matrix w;
    Matrix z;
};

/// 95% critical values of the trace statistic for an unrestricted constant,
/// indexed by p - r = 1..9. Strictly increasing.
class TraceTable {
public:
    static constexpr int kMaxDim = 9;

    TraceTable();
    explicit TraceTable(const std::array<double, kMaxDim> &values);

    double critical_value(int p_minus_r) const;
    const std::array<double, kMaxDim> &values() const { return values_; }

private:
    std::array<double, kMaxDim> values_;
};

struct TraceResult {
    Vector stats;          // hypothesis r = 0 .. p-1
    Vector critical;       // matching 95% values
    int selected_rank = 0; // p when every hypothesis is rejected
};

struct JohansenFit {
    Index p = 0;
    int k = 1;
    int r = 0;
    Index nobs = 0;
    std::vector<std::string> names;
    Vector eigenvalues;
    Matrix w; // primal eigenvectors, W' S11 W = I
    Matrix z; // dual eigenvectors, Z' S00 Z = I
    MomentSet moments;
    Matrix alpha;      // S01 W_(r)
    Matrix beta;       // W_(r)
    Matrix alpha_perp; // Z_(p-r), the trailing dual columns
    Matrix beta_perp;  // S10 Z_(p-r)
    Vector trace_stats;
    Vector trace_critical;
    int trace_selected_rank = 0;
    bool rank_forced = false;
};

Concentrated concentrate(const SeriesPanel &panel, int k);

MomentSet moments(const Matrix &r0, const Matrix &r1, Index nobs);
inline MomentSet moments(const Concentrated &c) { return moments(c.r0, c.r1, c.nobs); }

JohansenEigen solve_eigenproblems(const MomentSet &m);

/// trace_r = -nobs * sum_{i>r} ln(1 - lambda_i^2); the selected rank is the
/// smallest r whose statistic falls below the critical value, or p.
TraceResult trace_test(const Vector &eigenvalues, Index nobs,
                       const TraceTable &table = TraceTable());

/// Full reduced-rank ML fit. The rank comes from the trace test unless
/// forced; r = p is rejected (the long-run matrix of an I(1) system has
/// rank at most p - 1).
JohansenFit fit_johansen(const SeriesPanel &panel, int k,
                         std::optional<int> forced_rank = std::nullopt,
                         const TraceTable &table = TraceTable());

} // namespace coint

#endif
