#include "binaryweyl/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace bw {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string emit_report(const std::vector<ReportRow>& rows, ReportMode mode) {
    std::ostringstream out;
    if (rows.empty()) return "";
    if (mode == ReportMode::Machine) {
        for (const auto& row : rows) {
            out << "RESULT";
            for (const auto& kv : row) out << " " << kv.key << "=" << kv.value;
            out << "\n";
        }
        return out.str();
    }
    // human: column per key of the first row; rows with other keys print raw
    std::vector<std::string> keys;
    for (const auto& kv : rows.front()) keys.push_back(kv.key);
    std::vector<std::size_t> width(keys.size());
    for (std::size_t c = 0; c < keys.size(); ++c) width[c] = keys[c].size();
    for (const auto& row : rows)
        for (std::size_t c = 0; c < keys.size() && c < row.size(); ++c)
            width[c] = std::max(width[c], row[c].value.size());
    for (std::size_t c = 0; c < keys.size(); ++c) {
        out << keys[c];
        out << std::string(width[c] - keys[c].size() + 2, ' ');
    }
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < keys.size() && c < row.size(); ++c) {
            out << row[c].value;
            out << std::string(width[c] - row[c].value.size() + 2, ' ');
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace bw
