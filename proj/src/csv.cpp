#include <charconv>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "pilotopt/harness.hpp"

namespace pilotopt {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const SweepTable& table) {
    for (const auto& col : table.columns) out << col.name << ',';
    out << "status\n";
    for (const auto& row : table.rows) {
        for (double v : row.values) out << format_number(v) << ',';
        out << to_string(row.status) << '\n';
    }
}

void write_manifest(std::ostream& out, const SweepTable& table) {
    nlohmann::ordered_json doc;
    doc["kind"] = to_string(table.kind);
    doc["rows"] = table.rows.size();
    auto& cols = doc["columns"] = nlohmann::ordered_json::array();
    for (const auto& col : table.columns) {
        cols.push_back({{"name", col.name}, {"unit", col.unit}, {"description", col.description}});
    }
    cols.push_back({{"name", "status"},
                    {"unit", "enum"},
                    {"description", "ok | infeasible | approx_domain_error | solver_error"}});
    out << doc.dump(2) << '\n';
}

}  // namespace pilotopt
