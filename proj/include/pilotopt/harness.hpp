#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pilotopt/baselines.hpp"
#include "pilotopt/channel_model.hpp"
#include "pilotopt/ee_optimizer.hpp"
#include "pilotopt/se_optimizer.hpp"

namespace pilotopt {

enum class SweepKind { power_sweep, rate_sweep, alpha_sweep };
enum class Scheme { pos, aos, gas, ts };
enum class RowStatus { ok, infeasible, approx_domain_error, solver_error };

const char* to_string(SweepKind kind) noexcept;
const char* to_string(Scheme scheme) noexcept;
const char* to_string(RowStatus status) noexcept;
std::optional<Scheme> parse_scheme(std::string_view name);

struct SweepSpec {
    SweepKind kind = SweepKind::power_sweep;
    /// power_sweep: dBm; rate_sweep: required SE in bit/s/Hz; alpha_sweep: pilot ratio.
    double start = 20.0;
    double stop = 46.0;
    int points = 27;
    std::vector<Scheme> schemes{Scheme::pos, Scheme::aos, Scheme::gas, Scheme::ts};
    std::vector<double> ts_alphas{0.01, 0.05, 0.2};
    std::uint64_t seed = 1;
    SearchBudget budget{};  // seed field is replaced per point
    double tol = kDefaultSeTolerance;
    unsigned threads = 1;

    // alpha_sweep only
    double tx_power_w = 0.2;  // 23 dBm
    double target_rate_bps = 10e6;
    /// EE at the fixed `tx_power_w` rather than at the least power meeting
    /// `target_rate_bps`.
    bool ee_at_fixed_power = false;
};

void validate(const SweepSpec& spec);

/// Evenly spaced sweep abscissae, endpoints included.
std::vector<double> sweep_points(const SweepSpec& spec);

struct ColumnInfo {
    std::string name;
    std::string unit;
    std::string description;
};

struct SweepRow {
    double x_value = 0.0;
    std::vector<double> values;  // one per column, NaN where a scheme produced nothing
    RowStatus status = RowStatus::ok;
};

/// Rows in sweep order; `columns` describes `values` (the status column is
/// implicit and always written last).
struct SweepTable {
    SweepKind kind = SweepKind::power_sweep;
    std::vector<ColumnInfo> columns;
    std::vector<SweepRow> rows;

    std::size_t column(std::string_view name) const;  // throws ContractError if absent
    double value(std::size_t row, std::string_view name) const { return rows.at(row).values.at(column(name)); }
};

SweepTable run_power_sweep(const Scenario& scenario, const SweepSpec& spec);
SweepTable run_rate_sweep(const Scenario& scenario, const SweepSpec& spec);
SweepTable run_alpha_sweep(const Scenario& scenario, const SweepSpec& spec);
SweepTable run_sweep(const Scenario& scenario, const SweepSpec& spec);

/// Single-point solves, one row per requested method.
SweepTable solve_se_table(const Scenario& scenario, double tx_power_w, bool precise, bool approx, double tol);
SweepTable solve_ee_table(const Scenario& scenario, double target_rate_bps, bool precise, bool approx, double tol);

/// Comma separated, '.' decimal point, header first, status last. Numbers use
/// the shortest round-trip representation, so output is byte-stable.
void write_csv(std::ostream& out, const SweepTable& table);
std::string format_number(double value);

/// JSON column manifest: name, unit and description for each CSV column.
void write_manifest(std::ostream& out, const SweepTable& table);

}  // namespace pilotopt
