#include "digitseq/report.hpp"

#include <cstdio>
#include <sstream>

#include "digitseq/errors.hpp"

namespace digitseq {

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string to_csv(const StatReport& report) {
    std::string out;
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
        if (i) out.push_back(',');
        out += report.columns[i];
    }
    out.push_back('\n');
    for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out.push_back(',');
            out += format_number(row[i]);
        }
        out.push_back('\n');
    }
    return out;
}

StatReport from_csv(const std::string& text) {
    StatReport report;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            std::size_t comma = line.find(',', pos);
            cells.push_back(line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (header) {
            report.columns = cells;
            header = false;
        } else {
            std::vector<double> row;
            row.reserve(cells.size());
            for (const auto& c : cells) {
                try {
                    row.push_back(std::stod(c));
                } catch (const std::exception&) {
                    throw usage_error("non-numeric CSV cell '" + c + "'");
                }
            }
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

} // namespace digitseq
