#pragma once

#include <string>
#include <vector>

namespace bw {

struct KV {
    std::string key;
    std::string value;
};

using ReportRow = std::vector<KV>;

enum class ReportMode { Human, Machine };

// 17 significant digits, shortest-faithful form.
std::string format_double(double v);

// Machine mode: one "RESULT k=v k=v ..." line per row, keys in row order.
// Human mode: aligned table with a header of the first row's keys.
std::string emit_report(const std::vector<ReportRow>& rows, ReportMode mode);

}  // namespace bw
