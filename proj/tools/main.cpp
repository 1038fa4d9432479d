// Command-line front end for the cointegration toolkit: exploratory
// unit-root diagnostics, lag selection, Johansen estimation, the
// permanent-transitory decomposition, and common-trends restriction tests.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "coint/ggdecomp.hpp"
#include "coint/io.hpp"
#include "coint/johansen.hpp"
#include "coint/report.hpp"
#include "coint/restrict.hpp"
#include "coint/unitroot.hpp"
#include "coint/var.hpp"

namespace {

using namespace coint;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OutputOpts {
    bool json = false;
    bool no_banner = false;
    int precision = -1; // -1: fall back to COINT_PRECISION, then 4
};

int resolve_precision(const OutputOpts &opts) {
    int precision = 4;
    if (const char *env = std::getenv("COINT_PRECISION")) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 0 || v > 17)
            throw UsageError("COINT_PRECISION must be an integer in 0..17");
        precision = static_cast<int>(v);
    }
    if (opts.precision >= 0) precision = opts.precision;
    return precision;
}

void emit(const ReportDocument &doc, const OutputOpts &opts) {
    const int precision = resolve_precision(opts);
    if (opts.json)
        std::cout << render_json(doc, precision);
    else
        std::cout << render_text(doc, precision, !opts.no_banner);
}

std::string require_file(const std::string &path) {
    if (!std::filesystem::exists(path)) throw UsageError("no such file: " + path);
    return path;
}

void add_sample_metadata(ReportDocument &doc, const SeriesPanel &panel) {
    doc.metadata.emplace_back("sample", panel.start().str() + ".." +
                                            panel.period(panel.length() - 1).str());
    doc.metadata.emplace_back("T", std::to_string(panel.length()));
    doc.metadata.emplace_back("p", std::to_string(panel.dim()));
}

std::vector<std::string> indexed_labels(const std::string &prefix, Index n) {
    std::vector<std::string> out;
    for (Index i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
}

std::string join(const std::vector<std::string> &parts, const std::string &sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

ReportDocument cmd_explore(const std::string &csv, int max_s, int max_d, int max_lags) {
    const SeriesPanel panel = load_csv(csv);
    ReportDocument doc;
    doc.command = "explore";
    add_sample_metadata(doc, panel);
    doc.metadata.emplace_back("max_s", std::to_string(max_s));
    doc.metadata.emplace_back("max_d", std::to_string(max_d));
    doc.metadata.emplace_back("max_lags", std::to_string(max_lags));

    const Index p = panel.dim();
    ReportTable search{"differencing search", panel.names(),
                       {"sigma", "s1", "d1", "sigma1", "s2", "d2", "sigma2"},
                       Matrix(p, 7)};
    ReportTable adf{"augmented dickey-fuller (constant, no trend)", panel.names(), {},
                    Matrix(p, max_lags + 4)};
    for (int l = 0; l <= max_lags; ++l) adf.col_labels.push_back("aic(" + std::to_string(l) + ")");
    adf.col_labels.push_back("lags");
    adf.col_labels.push_back("adf");
    adf.col_labels.push_back("reject");

    const AdfCriticalValues cv;
    doc.metadata.emplace_back("adf_critical_1pct_5pct_10pct",
                              format_real(cv.at_1pct, 2) + " " + format_real(cv.at_5pct, 2) +
                                  " " + format_real(cv.at_10pct, 2));

    for (Index j = 0; j < p; ++j) {
        const Vector col = panel.series(j);
        const std::vector<double> x(col.data(), col.data() + col.size());
        const DiffSearchResult ds = diff_search(x, max_s, max_d);
        search.values(j, 0) = sample_std(x);
        search.values(j, 1) = ds.best_s;
        search.values(j, 2) = ds.best_d;
        search.values(j, 3) = ds.best_sigma;

        // Second pass: the best further (non-identity) transform of the
        // once-transformed series. A sigma above sigma1 says stop differencing.
        const double nan = std::numeric_limits<double>::quiet_NaN();
        search.values(j, 4) = nan;
        search.values(j, 5) = nan;
        search.values(j, 6) = nan;
        try {
            const std::vector<double> once = diff(x, ds.best_s, ds.best_d);
            const DiffSearchResult second = diff_search(once, max_s, max_d);
            const DiffSearchRow *best = nullptr;
            for (const auto &row : second.rows) {
                if (row.d < 1) continue;
                if (!best || row.sigma < best->sigma ||
                    (row.sigma == best->sigma &&
                     (row.d < best->d || (row.d == best->d && row.s < best->s))))
                    best = &row;
            }
            if (best) {
                search.values(j, 4) = best->s;
                search.values(j, 5) = best->d;
                search.values(j, 6) = best->sigma;
            }
        } catch (const SampleSizeError &) {
            // transformed series too short for a second pass: leave blank
        }

        const AdfResult res = adf_test(x, max_lags, cv);
        for (int l = 0; l <= max_lags; ++l) adf.values(j, l) = res.aic_by_lag[l];
        adf.values(j, max_lags + 1) = res.chosen_lags;
        adf.values(j, max_lags + 2) = res.statistic;
        adf.values(j, max_lags + 3) =
            res.reject_at ? *res.reject_at : std::numeric_limits<double>::quiet_NaN();
    }
    doc.sections.push_back(std::move(search));
    doc.sections.push_back(std::move(adf));
    return doc;
}

ReportDocument cmd_select_lags(const std::string &csv, int k_max) {
    const SeriesPanel panel = load_csv(csv);
    const LagSelection sel = select_lag(panel, k_max);

    ReportDocument doc;
    doc.command = "select-lags";
    add_sample_metadata(doc, panel);
    doc.metadata.emplace_back("k", std::to_string(sel.chosen_k));

    ReportTable table{"information criteria", indexed_labels("k=", k_max), {"aic", "sbc"},
                      Matrix(k_max, 2)};
    for (int k = 1; k <= k_max; ++k) {
        table.values(k - 1, 0) = sel.aic[k - 1];
        table.values(k - 1, 1) = sel.sbc[k - 1];
    }
    doc.sections.push_back(std::move(table));
    return doc;
}

void append_johansen_sections(ReportDocument &doc, const JohansenFit &fit) {
    const Index p = fit.p;
    const double scale = std::sqrt(static_cast<double>(fit.nobs));

    ReportTable eig{"eigenvalues", indexed_labels("lambda", p), {"lambda^2"},
                    Matrix(fit.eigenvalues)};

    ReportTable trace{"trace test", {}, {"trace", "crit95", "reject"}, Matrix(p, 3)};
    for (Index r = 0; r < p; ++r) {
        trace.row_labels.push_back(r == 0 ? "r = 0" : "r <= " + std::to_string(r));
        trace.values(r, 0) = fit.trace_stats(r);
        trace.values(r, 1) = fit.trace_critical(r);
        trace.values(r, 2) = fit.trace_stats(r) >= fit.trace_critical(r) ? 1.0 : 0.0;
    }
    doc.sections.push_back(std::move(eig));
    doc.sections.push_back(std::move(trace));

    if (fit.r > 0) {
        // Eigenvector-derived tables carry the 1/sqrt(nobs) display scaling.
        doc.sections.push_back({"alpha", fit.names, indexed_labels("z", fit.r),
                                Matrix(fit.alpha / scale)});
        doc.sections.push_back({"beta", fit.names, indexed_labels("z", fit.r),
                                Matrix(fit.beta / scale)});
    }
}

ReportDocument cmd_johansen(const std::string &csv, int lags, std::optional<int> rank) {
    const SeriesPanel panel = load_csv(csv);
    const JohansenFit fit = fit_johansen(panel, lags, rank);

    ReportDocument doc;
    doc.command = "johansen";
    add_sample_metadata(doc, panel);
    doc.metadata.emplace_back("k", std::to_string(fit.k));
    doc.metadata.emplace_back("nobs", std::to_string(fit.nobs));
    doc.metadata.emplace_back("r", std::to_string(fit.r));
    doc.metadata.emplace_back("rank_source", fit.rank_forced ? "forced" : "trace");
    append_johansen_sections(doc, fit);
    return doc;
}

ReportDocument cmd_decompose(const std::string &csv, int lags, int rank,
                             const std::string &tsv_path) {
    const SeriesPanel panel = load_csv(csv);
    const JohansenFit fit = fit_johansen(panel, lags, rank);
    const PtDecomposition pt = decompose(panel, fit);

    ReportDocument doc;
    doc.command = "decompose";
    add_sample_metadata(doc, panel);
    doc.metadata.emplace_back("k", std::to_string(fit.k));
    doc.metadata.emplace_back("r", std::to_string(fit.r));
    doc.metadata.emplace_back("common_trends", std::to_string(fit.p - fit.r));

    const Index kdim = fit.p - fit.r;
    const double scale = std::sqrt(static_cast<double>(fit.nobs));
    doc.sections.push_back({"alpha_perp", fit.names, indexed_labels("f", kdim),
                            Matrix(fit.alpha_perp / scale)});
    doc.sections.push_back({"beta_perp", fit.names, indexed_labels("f", kdim),
                            Matrix(fit.beta_perp / scale)});
    doc.sections.push_back({"A1", fit.names, indexed_labels("f", kdim),
                            Matrix(pt.a1 * scale)});
    doc.sections.push_back({"A2", fit.names, indexed_labels("z", fit.r),
                            Matrix(pt.a2 * scale)});

    if (!tsv_path.empty()) {
        std::vector<std::string> cols;
        Matrix data(panel.length(), kdim + fit.r + 2 * fit.p);
        Index c = 0;
        for (Index i = 0; i < kdim; ++i, ++c) {
            cols.push_back("f" + std::to_string(i + 1));
            data.col(c) = pt.permanent_factors.col(i);
        }
        for (int i = 0; i < fit.r; ++i, ++c) {
            cols.push_back("z" + std::to_string(i + 1));
            data.col(c) = pt.transitory_factors.col(i);
        }
        for (Index j = 0; j < fit.p; ++j) {
            cols.push_back(fit.names[j] + ".perm");
            data.col(c++) = pt.permanent.col(j);
            cols.push_back(fit.names[j] + ".trans");
            data.col(c++) = pt.transitory.col(j);
        }
        save_tsv(tsv_path, panel, cols, data);
        doc.metadata.emplace_back("tsv", tsv_path);
    }
    return doc;
}

Matrix exclusion_selection(const SeriesPanel &panel, const std::vector<std::string> &excluded) {
    const Index p = panel.dim();
    std::vector<bool> drop(p, false);
    for (const auto &name : excluded) {
        bool found = false;
        for (Index j = 0; j < p; ++j)
            if (panel.names()[j] == name) {
                if (drop[j]) throw UsageError("series '" + name + "' excluded twice");
                drop[j] = true;
                found = true;
            }
        if (!found) throw UsageError("unknown series '" + name + "'");
    }
    const Index m = p - static_cast<Index>(excluded.size());
    Matrix g = Matrix::Zero(p, m);
    Index col = 0;
    for (Index j = 0; j < p; ++j)
        if (!drop[j]) g(j, col++) = 1.0;
    return g;
}

void append_restriction_row(ReportTable &table, Index row, const RestrictionTest &test) {
    table.values(row, 0) = static_cast<double>(test.g.rows() - test.m);
    table.values(row, 1) = test.m;
    table.values(row, 2) = test.df;
    table.values(row, 3) = test.lr_stat;
    table.values(row, 4) = chi_square_quantile(0.95, test.df);
    table.values(row, 5) = test.p_value;
}

const std::vector<std::string> kRestrictionCols = {"excluded", "m",     "df",
                                                   "lr",       "crit95", "p"};

ReportDocument cmd_test(const std::string &csv, int lags, int rank,
                        const std::string &exclude_arg) {
    std::vector<std::string> excluded;
    {
        std::string item;
        std::istringstream stream(exclude_arg);
        while (std::getline(stream, item, ','))
            if (!item.empty()) excluded.push_back(item);
    }
    if (excluded.empty())
        throw UsageError("test: --exclude must drop at least one series (m < p is required)");

    const SeriesPanel panel = load_csv(csv);
    const JohansenFit fit = fit_johansen(panel, lags, rank);
    const RestrictionTest test = test_alpha_perp(fit, exclusion_selection(panel, excluded));

    ReportDocument doc;
    doc.command = "test";
    add_sample_metadata(doc, panel);
    doc.metadata.emplace_back("k", std::to_string(fit.k));
    doc.metadata.emplace_back("r", std::to_string(fit.r));
    doc.metadata.emplace_back("h0", "alpha_perp = G theta");

    ReportTable table{"restriction test", {join(excluded, ",")}, kRestrictionCols,
                      Matrix(1, 6)};
    append_restriction_row(table, 0, test);
    doc.sections.push_back(std::move(table));
    return doc;
}

ReportDocument cmd_scan(const std::string &csv, int lags, int rank, int max_excluded) {
    const SeriesPanel panel = load_csv(csv);
    const JohansenFit fit = fit_johansen(panel, lags, rank);
    const auto rows = exclusion_scan(fit, max_excluded);

    ReportDocument doc;
    doc.command = "scan";
    add_sample_metadata(doc, panel);
    doc.metadata.emplace_back("k", std::to_string(fit.k));
    doc.metadata.emplace_back("r", std::to_string(fit.r));
    doc.metadata.emplace_back("max_excluded", std::to_string(max_excluded));
    doc.metadata.emplace_back("tests", std::to_string(rows.size()));

    ReportTable table{"exclusion scan (descending p-value)", {}, kRestrictionCols,
                      Matrix(static_cast<Index>(rows.size()), 6)};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        table.row_labels.push_back(join(rows[i].excluded, ","));
        append_restriction_row(table, static_cast<Index>(i), rows[i].test);
    }
    doc.sections.push_back(std::move(table));
    return doc;
}

ReportDocument cmd_simulate(const std::string &spec_path, std::uint64_t seed,
                            const std::string &out_path) {
    const SimConfig cfg = load_sim_config(spec_path);
    const VarModel model = var_from_vecm(vecm_from_config(cfg));
    const Matrix noise =
        cfg.noise_scale * cfg.noise_scale * Matrix::Identity(cfg.p, cfg.p);
    const SimulationResult sim = simulate_var(model, cfg.length, cfg.burn_in, seed, noise);

    std::vector<std::string> names =
        cfg.names.empty() ? sim.panel.names() : cfg.names;
    const SeriesPanel panel(std::move(names), cfg.start, sim.panel.values());
    save_csv(panel, out_path);

    ReportDocument doc;
    doc.command = "simulate";
    add_sample_metadata(doc, panel);
    doc.metadata.emplace_back("r", std::to_string(cfg.r));
    doc.metadata.emplace_back("k", std::to_string(model.k));
    doc.metadata.emplace_back("seed", std::to_string(seed));
    doc.metadata.emplace_back("burn_in", std::to_string(cfg.burn_in));
    doc.metadata.emplace_back("noise_scale", format_real(cfg.noise_scale, 6));
    doc.metadata.emplace_back("spectral_radius", format_real(sim.spectral_radius, 6));
    doc.metadata.emplace_back("explosive", sim.explosive ? "yes" : "no");
    doc.metadata.emplace_back("out", out_path);
    return doc;
}

int run(int argc, char **argv) {
    CLI::App app{"cointegration analysis toolkit"};
    app.require_subcommand(1);

    OutputOpts out;
    app.add_flag("--json", out.json, "emit the report as JSON");
    app.add_flag("--no-banner", out.no_banner, "suppress the version banner");
    app.add_option("--precision", out.precision, "display decimals (default 4)")
        ->check(CLI::Range(0, 17));

    std::string csv, tsv_path, exclude_arg, spec_path, out_path;
    int max_s = 12, max_d = 2, max_lags = 3, k_max = 6, lags = 1, rank = 0;
    int max_excluded = 1;
    std::uint64_t seed = 1;
    std::optional<int> opt_rank;

    auto *explore = app.add_subcommand("explore", "differencing search and ADF tests");
    explore->add_option("csv", csv)->required();
    explore->add_option("--max-s", max_s, "largest differencing lag")->check(CLI::Range(1, 60));
    explore->add_option("--max-d", max_d, "largest differencing order")->check(CLI::Range(0, 4));
    explore->add_option("--max-lags", max_lags, "largest ADF lag count")->check(CLI::Range(0, 24));

    auto *select = app.add_subcommand("select-lags", "VAR order by information criteria");
    select->add_option("csv", csv)->required();
    select->add_option("--kmax", k_max, "largest order to try")->required()->check(CLI::Range(1, 24));

    auto *joh = app.add_subcommand("johansen", "reduced-rank ML estimation and trace test");
    joh->add_option("csv", csv)->required();
    joh->add_option("--lags", lags, "VAR order k")->required()->check(CLI::Range(1, 24));
    auto *joh_rank = joh->add_option("--rank", rank, "force the cointegrating rank");

    auto *dec = app.add_subcommand("decompose", "permanent-transitory decomposition");
    dec->add_option("csv", csv)->required();
    dec->add_option("--lags", lags)->required()->check(CLI::Range(1, 24));
    dec->add_option("--rank", rank)->required();
    dec->add_option("--tsv", tsv_path, "write factor/component series as TSV");

    auto *tst = app.add_subcommand("test", "single alpha_perp = G theta restriction test");
    tst->add_option("csv", csv)->required();
    tst->add_option("--lags", lags)->required()->check(CLI::Range(1, 24));
    tst->add_option("--rank", rank)->required();
    tst->add_option("--exclude", exclude_arg, "comma-separated series to exclude")->required();

    auto *scan = app.add_subcommand("scan", "all exclusion sets up to a given size");
    scan->add_option("csv", csv)->required();
    scan->add_option("--lags", lags)->required()->check(CLI::Range(1, 24));
    scan->add_option("--rank", rank)->required();
    scan->add_option("--max-excluded", max_excluded)->required()->check(CLI::Range(1, 24));

    auto *sim = app.add_subcommand("simulate", "synthetic VECM/VAR data");
    sim->add_option("--spec", spec_path, "key-value process description")->required();
    sim->add_option("--seed", seed, "RNG seed");
    sim->add_option("--out", out_path, "output CSV path")->required();

    // Let --json/--precision/--no-banner appear after the subcommand too.
    for (auto *sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    }

    if (joh->parsed() && joh_rank->count() > 0) opt_rank = rank;

    ReportDocument doc;
    if (explore->parsed())
        doc = cmd_explore(require_file(csv), max_s, max_d, max_lags);
    else if (select->parsed())
        doc = cmd_select_lags(require_file(csv), k_max);
    else if (joh->parsed())
        doc = cmd_johansen(require_file(csv), lags, opt_rank);
    else if (dec->parsed())
        doc = cmd_decompose(require_file(csv), lags, rank, tsv_path);
    else if (tst->parsed())
        doc = cmd_test(require_file(csv), lags, rank, exclude_arg);
    else if (scan->parsed())
        doc = cmd_scan(require_file(csv), lags, rank, max_excluded);
    else if (sim->parsed())
        doc = cmd_simulate(require_file(spec_path), seed, out_path);

    emit(doc, out);
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError &e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const coint::DataError &e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 1;
    } catch (const coint::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
