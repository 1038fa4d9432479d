#ifndef COINT_SERIES_HPP
#define COINT_SERIES_HPP

#include <string>
#include <vector>

#include "coint/linalg.hpp"

namespace coint {

/// A calendar month, the sampling unit of every panel.
struct Period {
    int year = 2000;
    int month = 1; // 1..12

    Period advanced(long n) const;
    std::string str() const; // "YYYY-MM"
    static Period parse(const std::string &text);

    friend bool operator==(const Period &a, const Period &b) {
        return a.year == b.year && a.month == b.month;
    }
    friend bool operator!=(const Period &a, const Period &b) { return !(a == b); }
};

/// T-by-p labeled monthly multivariate series. Periods are contiguous by
/// construction: row t carries the stamp start.advanced(t). Values are
/// finite, labels unique and non-empty.
class SeriesPanel {
public:
    SeriesPanel(std::vector<std::string> names, Period start, Matrix values);

    Index length() const { return values_.rows(); }
    Index dim() const { return values_.cols(); }
    const std::vector<std::string> &names() const { return names_; }
    Period start() const { return start_; }
    Period period(Index t) const { return start_.advanced(t); }
    const Matrix &values() const { return values_; }
    Vector series(Index j) const { return values_.col(j); }

private:
    std::vector<std::string> names_;
    Period start_;
    Matrix values_;
};

/// Aligned blocks for error-correction estimation: row t of y is the
/// difference at time t, xlag the level one step back, and w the stacked
/// short-run lagged differences (empty for k = 1).
struct VecmBlocks {
    Index effective_sample = 0;
    Matrix y;    // nabla X_t
    Matrix xlag; // X_{t-1}
    Matrix w;    // [nabla X_{t-1}, ..., nabla X_{t-k+1}]
};

/// d passes of differencing at lag s; d = 0 is the identity.
SeriesPanel diff(const SeriesPanel &panel, int s, int d);
std::vector<double> diff(const std::vector<double> &x, int s, int d);

/// Subtract each column's mean.
Matrix center(const Matrix &block);

VecmBlocks build_vecm_blocks(const SeriesPanel &panel, int k);

} // namespace coint

#endif
