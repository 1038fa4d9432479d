#include "coint/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

namespace coint {

namespace {

std::vector<std::string> split(const std::string &line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, sep)) out.push_back(field);
    if (!line.empty() && line.back() == sep) out.push_back("");
    return out;
}

std::string strip(const std::string &s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string &text, long row, const std::string &column) {
    const std::string t = strip(text);
    if (t.empty())
        throw LoadError("row " + std::to_string(row) + ", column '" + column +
                        "': missing value");
    errno = 0;
    char *end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || errno == ERANGE)
        throw LoadError("row " + std::to_string(row) + ", column '" + column +
                        "': non-numeric value '" + t + "'");
    return v;
}

} // namespace

SeriesPanel load_csv(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw LoadError("'" + path + "': empty file");
    auto header = split(line, ',');
    if (header.size() < 2 || strip(header[0]) != "date")
        throw LoadError("'" + path + "': header must be date,name1,...,namep");
    std::vector<std::string> names(header.begin() + 1, header.end());
    for (auto &n : names) n = strip(n);
    const std::size_t p = names.size();

    std::vector<Period> periods;
    std::vector<double> cells;
    long row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (strip(line).empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != p + 1)
            throw LoadError("row " + std::to_string(row) + ": expected " +
                            std::to_string(p + 1) + " fields, found " +
                            std::to_string(fields.size()));
        Period period = Period::parse(strip(fields[0]));
        if (!periods.empty()) {
            const Period expected = periods.back().advanced(1);
            if (period == periods.back())
                throw LoadError("row " + std::to_string(row) + ": duplicate period " +
                                period.str());
            if (period != expected)
                throw LoadError("row " + std::to_string(row) + ": expected period " +
                                expected.str() + " after " + periods.back().str() +
                                ", found " + period.str());
        }
        periods.push_back(period);
        for (std::size_t j = 0; j < p; ++j)
            cells.push_back(parse_double(fields[j + 1], row, names[j]));
    }
    if (periods.empty()) throw LoadError("'" + path + "': no data rows");

    Matrix values(static_cast<Index>(periods.size()), static_cast<Index>(p));
    for (Index i = 0; i < values.rows(); ++i)
        for (Index j = 0; j < values.cols(); ++j) values(i, j) = cells[i * p + j];
    try {
        return SeriesPanel(std::move(names), periods.front(), std::move(values));
    } catch (const InvalidInputError &e) {
        throw LoadError("'" + path + "': " + e.what());
    }
}

void save_csv(const SeriesPanel &panel, const std::string &path) {
    std::ofstream out(path);
    if (!out) throw LoadError("cannot write '" + path + "'");
    out << "date";
    for (const auto &n : panel.names()) out << ',' << n;
    out << '\n';
    char buf[40];
    for (Index t = 0; t < panel.length(); ++t) {
        out << panel.period(t).str();
        for (Index j = 0; j < panel.dim(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", panel.values()(t, j));
            out << ',' << buf;
        }
        out << '\n';
    }
    if (!out) throw LoadError("write failed for '" + path + "'");
}

namespace {

Matrix parse_matrix(const std::string &text, Index rows, Index cols, const std::string &key) {
    std::istringstream stream(text);
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j)
            if (!(stream >> m(i, j)))
                throw LoadError("config key '" + key + "': expected " +
                                std::to_string(rows * cols) + " numbers");
    double extra;
    if (stream >> extra)
        throw LoadError("config key '" + key + "': too many numbers");
    return m;
}

} // namespace

SimConfig load_sim_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open '" + path + "'");

    std::map<std::string, std::string> kv;
    std::string line;
    long row = 0;
    while (std::getline(in, line)) {
        ++row;
        const std::string t = strip(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw LoadError("config line " + std::to_string(row) + ": expected key = value");
        const std::string key = strip(t.substr(0, eq));
        if (!kv.emplace(key, strip(t.substr(eq + 1))).second)
            throw LoadError("config line " + std::to_string(row) + ": duplicate key '" +
                            key + "'");
    }

    auto get = [&](const std::string &key) -> const std::string & {
        auto it = kv.find(key);
        if (it == kv.end()) throw LoadError("config is missing required key '" + key + "'");
        return it->second;
    };
    auto get_long = [&](const std::string &key, long fallback, bool required) -> long {
        auto it = kv.find(key);
        if (it == kv.end()) {
            if (required) throw LoadError("config is missing required key '" + key + "'");
            return fallback;
        }
        return std::stol(it->second);
    };

    SimConfig cfg;
    cfg.p = get_long("p", 0, true);
    cfg.r = static_cast<int>(get_long("r", 0, true));
    if (cfg.p < 1) throw LoadError("config: p must be >= 1");
    if (cfg.r < 0 || cfg.r >= cfg.p) throw LoadError("config: need 0 <= r < p");
    cfg.length = get_long("T", cfg.length, false);
    cfg.burn_in = get_long("burn_in", cfg.burn_in, false);
    if (kv.count("noise_scale")) cfg.noise_scale = std::stod(kv.at("noise_scale"));
    if (cfg.noise_scale < 0.0) throw LoadError("config: noise_scale must be >= 0");

    if (cfg.r > 0) {
        cfg.alpha = parse_matrix(get("alpha"), cfg.p, cfg.r, "alpha");
        cfg.beta = parse_matrix(get("beta"), cfg.p, cfg.r, "beta");
    } else {
        cfg.alpha = Matrix::Zero(cfg.p, 0);
        cfg.beta = Matrix::Zero(cfg.p, 0);
    }
    for (int i = 1;; ++i) {
        const std::string key = "gamma" + std::to_string(i);
        if (!kv.count(key)) break;
        cfg.short_run.push_back(parse_matrix(kv.at(key), cfg.p, cfg.p, key));
    }
    cfg.intercept = kv.count("intercept")
                        ? Vector(parse_matrix(kv.at("intercept"), cfg.p, 1, "intercept"))
                        : Vector(Vector::Zero(cfg.p));
    if (kv.count("names")) {
        for (auto &n : split(kv.at("names"), ',')) cfg.names.push_back(strip(n));
        if (static_cast<Index>(cfg.names.size()) != cfg.p)
            throw LoadError("config: names count does not match p");
    }
    if (kv.count("start")) cfg.start = Period::parse(kv.at("start"));
    return cfg;
}

VecmModel vecm_from_config(const SimConfig &cfg) {
    VecmModel m;
    m.p = cfg.p;
    m.k = static_cast<int>(cfg.short_run.size()) + 1;
    m.intercept = cfg.intercept;
    m.long_run = cfg.r > 0 ? Matrix(cfg.alpha * cfg.beta.transpose())
                           : Matrix(Matrix::Zero(cfg.p, cfg.p));
    m.short_run = cfg.short_run;
    return m;
}

void save_tsv(const std::string &path, const SeriesPanel &panel,
              const std::vector<std::string> &column_names, const Matrix &columns) {
    if (static_cast<Index>(column_names.size()) != columns.cols())
        throw InvalidInputError("save_tsv: column label count mismatch");
    if (columns.rows() != panel.length())
        throw InvalidInputError("save_tsv: row count does not match panel");
    std::ofstream out(path);
    if (!out) throw LoadError("cannot write '" + path + "'");
    out << "period";
    for (const auto &n : column_names) out << '\t' << n;
    out << '\n';
    char buf[40];
    for (Index t = 0; t < columns.rows(); ++t) {
        out << panel.period(t).str();
        for (Index j = 0; j < columns.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.10g", columns(t, j));
            out << '\t' << buf;
        }
        out << '\n';
    }
    if (!out) throw LoadError("write failed for '" + path + "'");
}

} // namespace coint
