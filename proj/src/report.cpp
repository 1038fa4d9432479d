#include "coint/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

namespace coint {

std::string format_real(double v, int precision) {
    if (std::isnan(v)) return ".";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    // Avoid the "-0.0000" artifact.
    if (buf[0] == '-') {
        bool zero = true;
        for (const char *c = buf + 1; *c; ++c)
            if (*c != '0' && *c != '.') zero = false;
        if (zero) return buf + 1;
    }
    return buf;
}

double display_round(double v, int precision) {
    if (std::isnan(v)) return v;
    return std::strtod(format_real(v, precision).c_str(), nullptr);
}

std::string render_text(const ReportDocument &doc, int precision, bool banner) {
    std::ostringstream out;
    if (banner) out << kToolName << ' ' << kToolVersion << '\n';
    out << "command = " << doc.command << '\n';
    for (const auto &[key, value] : doc.metadata) out << key << " = " << value << '\n';

    for (const auto &table : doc.sections) {
        out << '\n' << "-- " << table.title << " --" << '\n';
        const Index rows = table.values.rows();
        const Index cols = table.values.cols();

        std::size_t label_width = 0;
        for (const auto &l : table.row_labels) label_width = std::max(label_width, l.size());

        std::vector<std::size_t> widths(cols, 0);
        std::vector<std::vector<std::string>> cells(rows, std::vector<std::string>(cols));
        for (Index j = 0; j < cols; ++j) {
            widths[j] = j < static_cast<Index>(table.col_labels.size())
                            ? table.col_labels[j].size()
                            : 0;
            for (Index i = 0; i < rows; ++i) {
                cells[i][j] = format_real(table.values(i, j), precision);
                widths[j] = std::max(widths[j], cells[i][j].size());
            }
        }

        if (!table.col_labels.empty()) {
            out << std::string(label_width, ' ');
            for (Index j = 0; j < cols; ++j) {
                const std::string &l =
                    j < static_cast<Index>(table.col_labels.size()) ? table.col_labels[j] : "";
                out << "  " << std::string(widths[j] - l.size(), ' ') << l;
            }
            out << '\n';
        }
        for (Index i = 0; i < rows; ++i) {
            const std::string &l =
                i < static_cast<Index>(table.row_labels.size()) ? table.row_labels[i] : "";
            out << l << std::string(label_width - l.size(), ' ');
            for (Index j = 0; j < cols; ++j)
                out << "  " << std::string(widths[j] - cells[i][j].size(), ' ') << cells[i][j];
            out << '\n';
        }
    }
    return out.str();
}

std::string render_json(const ReportDocument &doc, int precision) {
    nlohmann::ordered_json root;
    root["schema_version"] = 1;
    root["tool"] = kToolName;
    root["version"] = kToolVersion;
    root["command"] = doc.command;
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    for (const auto &[key, value] : doc.metadata) meta[key] = value;
    root["metadata"] = std::move(meta);
    root["sections"] = nlohmann::ordered_json::array();
    for (const auto &table : doc.sections) {
        nlohmann::ordered_json section;
        section["title"] = table.title;
        section["row_labels"] = table.row_labels;
        section["col_labels"] = table.col_labels;
        nlohmann::ordered_json values = nlohmann::ordered_json::array();
        for (Index i = 0; i < table.values.rows(); ++i) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (Index j = 0; j < table.values.cols(); ++j) {
                const double v = table.values(i, j);
                if (std::isnan(v))
                    row.push_back(nullptr);
                else
                    row.push_back(display_round(v, precision));
            }
            values.push_back(std::move(row));
        }
        section["values"] = std::move(values);
        root["sections"].push_back(std::move(section));
    }
    return root.dump(2) + "\n";
}

} // namespace coint
