#ifndef COINT_IO_HPP
#define COINT_IO_HPP

#include <string>
#include <vector>

#include "coint/series.hpp"
#include "coint/var.hpp"

namespace coint {

/// Strict CSV reader: header "date,name1,...,namep", ISO "YYYY-MM" dates,
/// contiguous months, no missing cells. Errors name the offending row and
/// column.
SeriesPanel load_csv(const std::string &path);

/// Writes with enough digits that load_csv(save_csv(panel)) reproduces the
/// panel bit for bit.
void save_csv(const SeriesPanel &panel, const std::string &path);

/// Flat key-value description of a synthetic error-correction process.
/// Recognized keys: p, r, T, burn_in, noise_scale, alpha, beta,
/// gamma1..gammaN (short-run matrices), intercept, names, start.
/// Matrices are whitespace-separated doubles in row-major order.
struct SimConfig {
    Index p = 0;
    int r = 0;
    Index length = 240;
    Index burn_in = 100;
    double noise_scale = 0.1;
    Matrix alpha;                   // p x r
    Matrix beta;                    // p x r
    std::vector<Matrix> short_run;  // p x p each; count fixes the VAR order
    Vector intercept;               // p
    std::vector<std::string> names; // defaults to x1..xp
    Period start{2000, 1};
};

SimConfig load_sim_config(const std::string &path);

/// VECM implied by the config, ready for var_from_vecm + simulate_var.
VecmModel vecm_from_config(const SimConfig &config);

/// Tab-separated plot data: period stamp, raw factors, then per-series
/// permanent and transitory components.
void save_tsv(const std::string &path, const SeriesPanel &panel,
              const std::vector<std::string> &column_names, const Matrix &columns);

} // namespace coint

#endif
