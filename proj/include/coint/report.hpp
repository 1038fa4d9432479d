#ifndef COINT_REPORT_HPP
#define COINT_REPORT_HPP

#include <string>
#include <utility>
#include <vector>

#include "coint/linalg.hpp"

namespace coint {

inline constexpr const char *kToolName = "coint";
inline constexpr const char *kToolVersion = "0.1.0";

/// One labeled table. NaN cells render as "." in text and null in JSON.
struct ReportTable {
    std::string title;
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    Matrix values;
};

/// A full report: metadata lines followed by table sections. The text and
/// JSON renderings carry exactly the same values at the same precision.
struct ReportDocument {
    std::string command;
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<ReportTable> sections;
};

/// Value as displayed: formatted at `precision` decimals, parsed back.
double display_round(double v, int precision);

std::string format_real(double v, int precision);

std::string render_text(const ReportDocument &doc, int precision, bool banner);

std::string render_json(const ReportDocument &doc, int precision);

} // namespace coint

#endif
