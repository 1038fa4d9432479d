#include "coint/series.hpp"

#include <cstdio>
#include <unordered_set>

namespace coint {

Period Period::advanced(long n) const {
    const long idx = static_cast<long>(year) * 12 + (month - 1) + n;
    Period out;
    out.year = static_cast<int>(idx >= 0 ? idx / 12 : (idx - 11) / 12);
    out.month = static_cast<int>(idx - static_cast<long>(out.year) * 12) + 1;
    return out;
}

std::string Period::str() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
    return buf;
}

Period Period::parse(const std::string &text) {
    if (text.size() != 7 || text[4] != '-')
        throw LoadError("bad period '" + text + "', expected YYYY-MM");
    for (int i : {0, 1, 2, 3, 5, 6})
        if (text[i] < '0' || text[i] > '9')
            throw LoadError("bad period '" + text + "', expected YYYY-MM");
    Period p;
    p.year = std::stoi(text.substr(0, 4));
    p.month = std::stoi(text.substr(5, 2));
    if (p.month < 1 || p.month > 12)
        throw LoadError("bad period '" + text + "', month out of range");
    return p;
}

SeriesPanel::SeriesPanel(std::vector<std::string> names, Period start, Matrix values)
    : names_(std::move(names)), start_(start), values_(std::move(values)) {
    if (values_.rows() < 1) throw InvalidInputError("panel: need at least one row");
    if (static_cast<Index>(names_.size()) != values_.cols())
        throw InvalidInputError("panel: label count does not match column count");
    if (!all_finite(values_)) throw InvalidInputError("panel: non-finite value");
    if (start_.month < 1 || start_.month > 12)
        throw InvalidInputError("panel: start month out of range");
    std::unordered_set<std::string> seen;
    for (const auto &n : names_) {
        if (n.empty()) throw InvalidInputError("panel: empty series label");
        if (!seen.insert(n).second)
            throw InvalidInputError("panel: duplicate series label '" + n + "'");
    }
}

SeriesPanel diff(const SeriesPanel &panel, int s, int d) {
    if (s < 1) throw InvalidInputError("diff: lag must be >= 1");
    if (d < 0) throw InvalidInputError("diff: order must be >= 0");
    if (panel.length() <= static_cast<Index>(s) * d)
        throw SampleSizeError("diff: series of length " + std::to_string(panel.length()) +
                              " too short for s=" + std::to_string(s) +
                              ", d=" + std::to_string(d));
    Matrix v = panel.values();
    for (int pass = 0; pass < d; ++pass) {
        const Index n = v.rows() - s;
        v = (v.bottomRows(n) - v.topRows(n)).eval();
    }
    return SeriesPanel(panel.names(), panel.start().advanced(static_cast<long>(s) * d),
                       std::move(v));
}

std::vector<double> diff(const std::vector<double> &x, int s, int d) {
    if (s < 1) throw InvalidInputError("diff: lag must be >= 1");
    if (d < 0) throw InvalidInputError("diff: order must be >= 0");
    if (static_cast<long>(x.size()) <= static_cast<long>(s) * d)
        throw SampleSizeError("diff: series too short for requested transform");
    std::vector<double> v = x;
    for (int pass = 0; pass < d; ++pass) {
        std::vector<double> next(v.size() - s);
        for (std::size_t t = 0; t < next.size(); ++t) next[t] = v[t + s] - v[t];
        v = std::move(next);
    }
    return v;
}

Matrix center(const Matrix &block) {
    if (block.rows() < 1) throw InvalidInputError("center: need at least one row");
    return block.rowwise() - block.colwise().mean();
}

VecmBlocks build_vecm_blocks(const SeriesPanel &panel, int k) {
    if (k < 1) throw InvalidInputError("build_vecm_blocks: order must be >= 1");
    const Index t_total = panel.length();
    const Index p = panel.dim();
    if (t_total < k + 2)
        throw SampleSizeError("build_vecm_blocks: need T >= k + 2, have T=" +
                              std::to_string(t_total) + ", k=" + std::to_string(k));

    const Matrix &x = panel.values();
    const Index n = t_total - k;
    VecmBlocks out;
    out.effective_sample = n;
    out.y.resize(n, p);
    out.xlag.resize(n, p);
    out.w.resize(n, p * (k - 1));
    // Row i corresponds to time t = k + i (0-based); all blocks align.
    for (Index i = 0; i < n; ++i) {
        const Index t = k + i;
        out.y.row(i) = x.row(t) - x.row(t - 1);
        out.xlag.row(i) = x.row(t - 1);
        for (int j = 1; j < k; ++j)
            out.w.block(i, p * (j - 1), 1, p) = x.row(t - j) - x.row(t - j - 1);
    }
    return out;
}

} // namespace coint
