#include "coint/johansen.hpp"

#include <cmath>

#include "ols.hpp"

namespace coint {

TraceTable::TraceTable()
    : TraceTable(std::array<double, kMaxDim>{3.84, 15.41, 29.8, 47.71, 69.61, 95.51, 125.42,
                                             159.32, 197.22}) {}

TraceTable::TraceTable(const std::array<double, kMaxDim> &values) : values_(values) {
    for (int i = 1; i < kMaxDim; ++i)
        if (values_[i] <= values_[i - 1])
            throw InvalidInputError("trace table must be strictly increasing in p - r");
}

double TraceTable::critical_value(int p_minus_r) const {
    if (p_minus_r < 1 || p_minus_r > kMaxDim)
        throw InvalidInputError("trace table covers p - r in 1.." + std::to_string(kMaxDim) +
                                ", requested " + std::to_string(p_minus_r));
    return values_[p_minus_r - 1];
}

Concentrated concentrate(const SeriesPanel &panel, int k) {
    const Index p = panel.dim();
    const VecmBlocks blocks = build_vecm_blocks(panel, k);
    const Index n = blocks.effective_sample;
    const Index q = 1 + blocks.w.cols(); // constant plus short-run lags
    if (n < q + p + 1)
        throw SampleSizeError("concentrate: effective sample " + std::to_string(n) +
                              " too short for k=" + std::to_string(k) +
                              ", p=" + std::to_string(p));

    Matrix design(n, q);
    design.col(0).setOnes();
    design.rightCols(q - 1) = blocks.w;

    Concentrated out;
    out.nobs = n;
    out.r0 = detail::ols(blocks.y, design, "concentrate").resid;
    out.r1 = detail::ols(blocks.xlag, design, "concentrate").resid;
    return out;
}

MomentSet moments(const Matrix &r0, const Matrix &r1, Index nobs) {
    if (r0.rows() != r1.rows()) throw InvalidInputError("moments: residual blocks misaligned");
    if (nobs != r0.rows()) throw InvalidInputError("moments: nobs does not match block length");
    MomentSet m;
    m.nobs = nobs;
    const double t = static_cast<double>(nobs);
    m.s00 = (r0.transpose() * r0) / t;
    m.s01 = (r0.transpose() * r1) / t;
    m.s11 = (r1.transpose() * r1) / t;
    return m;
}

JohansenEigen solve_eigenproblems(const MomentSet &m) {
    const auto llt00 = detail::spd_llt(m.s00, "solve_eigenproblems: S00");
    const auto llt11 = detail::spd_llt(m.s11, "solve_eigenproblems: S11");

    const Matrix primal_l = m.s10() * llt00.solve(m.s01); // S10 S00^-1 S01
    const Matrix dual_l = m.s01 * llt11.solve(m.s10());   // S01 S11^-1 S10

    JohansenEigen out;
    const EigenSystem primal = gen_eigen(primal_l, m.s11);
    const EigenSystem dual = gen_eigen(dual_l, m.s00);
    out.eigenvalues = primal.values;
    out.w = primal.vectors;
    out.z = dual.vectors;
    return out;
}

TraceResult trace_test(const Vector &eigenvalues, Index nobs, const TraceTable &table) {
    const Index p = eigenvalues.size();
    if (p < 1) throw InvalidInputError("trace_test: no eigenvalues");
    for (Index i = 0; i < p; ++i)
        if (!(eigenvalues(i) >= 0.0 && eigenvalues(i) < 1.0))
            throw InvalidEigenvalueError("trace_test: eigenvalue " +
                                         std::to_string(eigenvalues(i)) +
                                         " outside [0, 1)");

    TraceResult out;
    out.stats.resize(p);
    out.critical.resize(p);
    double tail = 0.0;
    for (Index i = p - 1; i >= 0; --i) {
        tail += std::log1p(-eigenvalues(i));
        out.stats(i) = -static_cast<double>(nobs) * tail;
    }
    out.selected_rank = static_cast<int>(p);
    for (Index r = 0; r < p; ++r) {
        out.critical(r) = table.critical_value(static_cast<int>(p - r));
        if (out.selected_rank == static_cast<int>(p) && out.stats(r) < out.critical(r))
            out.selected_rank = static_cast<int>(r);
    }
    return out;
}

JohansenFit fit_johansen(const SeriesPanel &panel, int k, std::optional<int> forced_rank,
                         const TraceTable &table) {
    const Index p = panel.dim();
    const Concentrated conc = concentrate(panel, k);
    const MomentSet mom = moments(conc);
    const JohansenEigen eig = solve_eigenproblems(mom);
    const TraceResult trace = trace_test(eig.eigenvalues, mom.nobs, table);

    int r = 0;
    if (forced_rank) {
        r = *forced_rank;
        if (r < 0 || r >= static_cast<int>(p))
            throw InvalidRankError("fit_johansen: rank must lie in 0..p-1, got " +
                                   std::to_string(r));
    } else {
        r = trace.selected_rank;
        if (r >= static_cast<int>(p))
            throw InvalidRankError(
                "fit_johansen: trace test rejects every rank up to p-1; "
                "the system looks stationary, force a rank to proceed");
    }

    JohansenFit fit;
    fit.p = p;
    fit.k = k;
    fit.r = r;
    fit.nobs = mom.nobs;
    fit.names = panel.names();
    fit.eigenvalues = eig.eigenvalues;
    fit.w = eig.w;
    fit.z = eig.z;
    fit.moments = mom;
    fit.beta = eig.w.leftCols(r);
    fit.alpha = mom.s01 * fit.beta;
    fit.alpha_perp = eig.z.rightCols(p - r);
    fit.beta_perp = mom.s10() * fit.alpha_perp;
    fit.trace_stats = trace.stats;
    fit.trace_critical = trace.critical;
    fit.trace_selected_rank = trace.selected_rank;
    fit.rank_forced = forced_rank.has_value();
    return fit;
}

} // namespace coint
