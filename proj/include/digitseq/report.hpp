#pragma once

#include <string>
#include <vector>

namespace digitseq {

/// A labeled numeric table, one row per parameter tuple. Serialized as CSV
/// with a header row and 12 significant digits per value.
struct StatReport {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// %.12g rendering used for every numeric CSV cell.
std::string format_number(double v);

std::string to_csv(const StatReport& report);
StatReport from_csv(const std::string& text);

} // namespace digitseq
