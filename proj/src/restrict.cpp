#include "coint/restrict.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ols.hpp"

namespace coint {

namespace {

constexpr int kMaxIter = 500;
constexpr double kEps = 1e-15;
constexpr double kTiny = 1e-300;

// Lower regularized incomplete gamma P(a, x) by series expansion; converges
// fast for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized incomplete gamma Q(a, x) by Lentz continued fraction;
// the stable branch for x >= a + 1.
double gamma_q_fraction(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q(double a, double x) {
    if (x <= 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_fraction(a, x);
}

} // namespace

double chi_square_sf(double x, int df) {
    if (df < 0) throw InvalidInputError("chi_square_sf: negative degrees of freedom");
    if (!(x >= 0.0)) throw InvalidInputError("chi_square_sf: statistic must be >= 0");
    if (df == 0) {
        if (x == 0.0) return 1.0;
        throw InvalidInputError("chi_square_sf: df = 0 is defined only at x = 0");
    }
    return gamma_q(0.5 * df, 0.5 * x);
}

double chi_square_quantile(double q, int df) {
    if (df < 1) throw InvalidInputError("chi_square_quantile: need df >= 1");
    if (!(q >= 0.0 && q < 1.0))
        throw InvalidInputError("chi_square_quantile: probability must lie in [0, 1)");
    if (q == 0.0) return 0.0;

    double lo = 0.0;
    double hi = df + 10.0 * std::sqrt(2.0 * df) + 10.0;
    while (1.0 - chi_square_sf(hi, df) < q) {
        hi *= 2.0;
        if (hi > 1e12) throw NumericalInconsistencyError("chi_square_quantile: no bracket");
    }
    for (int i = 0; i < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        if (1.0 - chi_square_sf(mid, df) < q)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

RestrictionTest test_alpha_perp(const JohansenFit &fit, const Matrix &g) {
    const int p = static_cast<int>(fit.p);
    const int r = fit.r;
    const int m = static_cast<int>(g.cols());
    const int k = p - r;
    if (g.rows() != fit.p) throw InvalidInputError("test_alpha_perp: G has wrong row count");
    if (m < k || m >= p)
        throw InvalidRestrictionError("test_alpha_perp: need p - r <= m < p, got m=" +
                                      std::to_string(m) + " with p=" + std::to_string(p) +
                                      ", r=" + std::to_string(r));

    const Matrix s10 = fit.moments.s10();
    const auto llt11 = detail::spd_llt(fit.moments.s11, "test_alpha_perp: S11");
    const Matrix inner = fit.moments.s01 * llt11.solve(s10); // S01 S11^-1 S10

    const Matrix restricted_l = g.transpose() * inner * g;
    const Matrix restricted_m = g.transpose() * fit.moments.s00 * g;
    const EigenSystem es = gen_eigen(restricted_l, restricted_m);

    RestrictionTest out;
    out.g = g;
    out.m = m;
    out.restricted_eigenvalues = es.values;
    out.theta_hat = es.vectors.rightCols(k);
    out.alpha_perp_restricted = g * out.theta_hat;
    out.df = k * (p - m);

    // LR statistic pairs the smallest p-r restricted eigenvalues against
    // the smallest p-r unrestricted ones: index i + m - p, the one place
    // where an off-by-one would silently corrupt every test.
    double total = 0.0;
    for (int i = r; i < p; ++i) {
        const int j = i + m - p;
        if (j < 0 || j >= m)
            throw NumericalInconsistencyError("test_alpha_perp: eigenvalue index out of range");
        const double restricted = es.values(j);
        const double unrestricted = fit.eigenvalues(i);
        if (!(restricted >= 0.0 && restricted < 1.0) ||
            !(unrestricted >= 0.0 && unrestricted < 1.0))
            throw InvalidEigenvalueError("test_alpha_perp: eigenvalue outside [0, 1)");
        total += std::log1p(-restricted) - std::log1p(-unrestricted);
    }
    out.lr_stat = -static_cast<double>(fit.nobs) * total;
    if (out.lr_stat < 0.0) {
        if (out.lr_stat < -1e-8)
            throw NumericalInconsistencyError("test_alpha_perp: LR statistic " +
                                              std::to_string(out.lr_stat) + " is negative");
        out.lr_stat = 0.0;
    }
    out.p_value = chi_square_sf(out.lr_stat, out.df);
    return out;
}

std::vector<ExclusionScanRow> exclusion_scan(const JohansenFit &fit, int max_excluded) {
    const int p = static_cast<int>(fit.p);
    if (max_excluded < 1 || max_excluded > fit.r)
        throw InvalidRestrictionError(
            "exclusion_scan: max_excluded must lie in 1..r (r=" + std::to_string(fit.r) +
            "), got " + std::to_string(max_excluded));
    if (static_cast<int>(fit.names.size()) != p)
        throw InvalidInputError("exclusion_scan: fit carries no series labels");

    std::vector<ExclusionScanRow> rows;
    std::vector<int> pick;
    // All subsets of each size, lexicographic.
    auto run_subset = [&](const std::vector<int> &excluded) {
        const int m = p - static_cast<int>(excluded.size());
        Matrix g = Matrix::Zero(p, m);
        int col = 0;
        std::size_t drop = 0;
        for (int i = 0; i < p; ++i) {
            if (drop < excluded.size() && excluded[drop] == i) {
                ++drop;
                continue;
            }
            g(i, col++) = 1.0;
        }
        ExclusionScanRow row;
        for (int i : excluded) row.excluded.push_back(fit.names[i]);
        row.test = test_alpha_perp(fit, g);
        rows.push_back(std::move(row));
    };
    std::function<void(int, int)> recurse = [&](int next, int remaining) {
        if (!pick.empty()) run_subset(pick);
        if (remaining == 0) return;
        for (int i = next; i < p; ++i) {
            pick.push_back(i);
            recurse(i + 1, remaining - 1);
            pick.pop_back();
        }
    };
    recurse(0, max_excluded);

    std::stable_sort(rows.begin(), rows.end(),
                     [](const ExclusionScanRow &a, const ExclusionScanRow &b) {
                         if (a.test.p_value != b.test.p_value)
                             return a.test.p_value > b.test.p_value;
                         if (a.excluded.size() != b.excluded.size())
                             return a.excluded.size() < b.excluded.size();
                         return a.excluded < b.excluded;
                     });
    return rows;
}

} // namespace coint
