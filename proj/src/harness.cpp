#include "pilotopt/harness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <thread>

#include "pilotopt/errors.hpp"
#include "pilotopt/kernels.hpp"
#include "pilotopt/link_metrics.hpp"

namespace pilotopt {

const char* to_string(SweepKind kind) noexcept {
    switch (kind) {
        case SweepKind::power_sweep: return "power_sweep";
        case SweepKind::rate_sweep: return "rate_sweep";
        case SweepKind::alpha_sweep: return "alpha_sweep";
    }
    return "unknown";
}

const char* to_string(Scheme scheme) noexcept {
    switch (scheme) {
        case Scheme::pos: return "pos";
        case Scheme::aos: return "aos";
        case Scheme::gas: return "gas";
        case Scheme::ts: return "ts";
    }
    return "unknown";
}

const char* to_string(RowStatus status) noexcept {
    switch (status) {
        case RowStatus::ok: return "ok";
        case RowStatus::infeasible: return "infeasible";
        case RowStatus::approx_domain_error: return "approx_domain_error";
        case RowStatus::solver_error: return "solver_error";
    }
    return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
    for (Scheme s : {Scheme::pos, Scheme::aos, Scheme::gas, Scheme::ts}) {
        if (name == to_string(s)) return s;
    }
    return std::nullopt;
}

std::size_t SweepTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i].name == name) return i;
    }
    throw ContractError("no column named " + std::string(name));
}

void validate(const SweepSpec& spec) {
    if (spec.points < 2) throw ConfigError("sweep needs at least 2 points");
    if (!(spec.start < spec.stop)) throw ConfigError("sweep start must be below stop");
    if (spec.schemes.empty()) throw ConfigError("sweep needs at least one scheme");
    if (spec.kind == SweepKind::alpha_sweep && (spec.start < 0.0 || spec.stop > 1.0)) {
        throw ConfigError("alpha sweep range must lie within [0, 1]");
    }
    for (double a : spec.ts_alphas) {
        if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("ts alpha " + std::to_string(a) + " outside [0, 1]");
    }
    validate(spec.budget);
}

std::vector<double> sweep_points(const SweepSpec& spec) {
    std::vector<double> xs(static_cast<std::size_t>(spec.points));
    const double step = (spec.stop - spec.start) / (spec.points - 1);
    for (int i = 0; i < spec.points; ++i) xs[i] = spec.start + step * i;
    xs.back() = spec.stop;
    return xs;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool has(const SweepSpec& spec, Scheme s) {
    return std::find(spec.schemes.begin(), spec.schemes.end(), s) != spec.schemes.end();
}

std::string ts_label(double alpha) { return "ts_" + format_number(alpha); }

// Runs one scheme's computation, mapping solver exceptions to a row status.
RowStatus capture(const std::function<void()>& fn) {
    try {
        fn();
        return RowStatus::ok;
    } catch (const InfeasibleError&) {
        return RowStatus::infeasible;
    } catch (const ApproxDomainError&) {
        return RowStatus::approx_domain_error;
    } catch (const SolverError&) {
        return RowStatus::solver_error;
    }
}

// First non-ok status in scheme order wins.
void merge(RowStatus& row, RowStatus scheme) {
    if (row == RowStatus::ok) row = scheme;
}

void parallel_rows(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::jthread> workers;
    for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < count; i += threads) fn(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    workers.clear();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

SearchBudget point_budget(const SweepSpec& spec, std::size_t index) {
    SearchBudget b = spec.budget;
    b.seed = spec.seed + index;
    return b;
}

void add_alpha_columns(std::vector<ColumnInfo>& cols, const std::string& prefix, int num_bs) {
    for (int m = 1; m <= num_bs; ++m) {
        cols.push_back({prefix + "_alpha_" + std::to_string(m), "ratio",
                        "pilot ratio at BS " + std::to_string(m)});
    }
}

void put_alphas(std::vector<double>& values, std::size_t first, const PilotAllocation& alloc) {
    for (std::size_t m = 0; m < alloc.ratios.size(); ++m) values[first + m] = alloc.ratios[m];
}

}  // namespace

SweepTable run_power_sweep(const Scenario& scenario, const SweepSpec& spec) {
    validate(spec);
    if (spec.kind != SweepKind::power_sweep) throw ContractError("run_power_sweep: wrong sweep kind");
    if (spec.stop > scenario.config.max_tx_power_dbm + 1e-9) {
        throw ConfigError("power sweep exceeds max_tx_power_dbm");
    }
    const int M = scenario.config.num_bs;
    const double W = scenario.config.bandwidth_hz;

    SweepTable table;
    table.kind = SweepKind::power_sweep;
    auto& cols = table.columns;
    cols.push_back({"power_dbm", "dBm", "UE transmit power"});
    cols.push_back({"power_w", "W", "UE transmit power"});
    for (Scheme s : {Scheme::pos, Scheme::aos, Scheme::gas}) {
        if (!has(spec, s)) continue;
        const std::string p = to_string(s);
        cols.push_back({p + "_snr", "linear", "optimized combined SNR"});
        cols.push_back({p + "_rate_bps", "bit/s", "achievable uplink rate"});
        add_alpha_columns(cols, p, M);
    }
    if (has(spec, Scheme::ts)) {
        for (double a : spec.ts_alphas) {
            cols.push_back({ts_label(a) + "_snr", "linear", "combined SNR at uniform ratio " + format_number(a)});
            cols.push_back({ts_label(a) + "_rate_bps", "bit/s", "rate at uniform ratio " + format_number(a)});
        }
    }

    const auto xs = sweep_points(spec);
    table.rows.resize(xs.size());
    parallel_rows(xs.size(), spec.threads, [&](std::size_t i) {
        SweepRow& row = table.rows[i];
        row.x_value = xs[i];
        row.values.assign(cols.size(), kNaN);
        const double p_w = dbm_to_watt(xs[i]);
        row.values[table.column("power_dbm")] = xs[i];
        row.values[table.column("power_w")] = p_w;

        auto put_se = [&](const std::string& prefix, const SeSolution& sol) {
            row.values[table.column(prefix + "_snr")] = sol.optimal_snr;
            row.values[table.column(prefix + "_rate_bps")] = sol.capacity_bps;
            put_alphas(row.values, table.column(prefix + "_alpha_1"), sol.allocation);
        };
        if (has(spec, Scheme::pos)) {
            merge(row.status, capture([&] { put_se("pos", solve_se_precise(scenario, p_w, spec.tol)); }));
        }
        if (has(spec, Scheme::aos)) {
            merge(row.status, capture([&] { put_se("aos", solve_se_approx(scenario, p_w)); }));
        }
        if (has(spec, Scheme::gas)) {
            put_se("gas", stochastic_search_se(scenario, p_w, point_budget(spec, i)));
        }
        if (has(spec, Scheme::ts)) {
            std::vector<double> snr(spec.ts_alphas.size());
            uniform_ratio_snr(spec.ts_alphas, link_state(scenario, p_w), snr);
            for (std::size_t k = 0; k < snr.size(); ++k) {
                const std::string p = ts_label(spec.ts_alphas[k]);
                row.values[table.column(p + "_snr")] = snr[k];
                row.values[table.column(p + "_rate_bps")] = capacity_bps(W, snr[k]);
            }
        }
    });
    return table;
}

SweepTable run_rate_sweep(const Scenario& scenario, const SweepSpec& spec) {
    validate(spec);
    if (spec.kind != SweepKind::rate_sweep) throw ContractError("run_rate_sweep: wrong sweep kind");
    if (!(spec.start > 0.0)) throw ConfigError("rate sweep needs positive SE targets");
    const int M = scenario.config.num_bs;
    const double W = scenario.config.bandwidth_hz;

    SweepTable table;
    table.kind = SweepKind::rate_sweep;
    auto& cols = table.columns;
    cols.push_back({"se_target", "bit/s/Hz", "required spectral efficiency"});
    cols.push_back({"rate_bps", "bit/s", "required uplink rate"});
    for (Scheme s : {Scheme::pos, Scheme::aos, Scheme::gas}) {
        if (!has(spec, s)) continue;
        const std::string p = to_string(s);
        cols.push_back({p + "_power_w", "W", "minimal transmit power"});
        cols.push_back({p + "_power_dbm", "dBm", "minimal transmit power"});
        cols.push_back({p + "_ee_bit_per_j", "bit/J", "energy efficiency at minimal power"});
        add_alpha_columns(cols, p, M);
    }
    if (has(spec, Scheme::ts)) {
        for (double a : spec.ts_alphas) {
            cols.push_back({ts_label(a) + "_power_w", "W", "minimal power at uniform ratio " + format_number(a)});
            cols.push_back({ts_label(a) + "_ee_bit_per_j", "bit/J", "energy efficiency at uniform ratio " +
                                                                         format_number(a)});
        }
    }

    const auto xs = sweep_points(spec);
    table.rows.resize(xs.size());
    parallel_rows(xs.size(), spec.threads, [&](std::size_t i) {
        SweepRow& row = table.rows[i];
        row.x_value = xs[i];
        row.values.assign(cols.size(), kNaN);
        const double rate = xs[i] * W;
        row.values[table.column("se_target")] = xs[i];
        row.values[table.column("rate_bps")] = rate;

        auto put_ee = [&](const std::string& prefix, const EeSolution& sol) {
            if (sol.status == SolveStatus::infeasible) throw InfeasibleError("rate target unreachable");
            row.values[table.column(prefix + "_power_w")] = sol.min_tx_power_w;
            row.values[table.column(prefix + "_power_dbm")] = watt_to_dbm(sol.min_tx_power_w);
            row.values[table.column(prefix + "_ee_bit_per_j")] = sol.energy_efficiency_bit_per_joule;
            put_alphas(row.values, table.column(prefix + "_alpha_1"), sol.allocation);
        };
        if (has(spec, Scheme::pos)) {
            merge(row.status, capture([&] { put_ee("pos", solve_ee_precise(scenario, rate, spec.tol)); }));
        }
        if (has(spec, Scheme::aos)) {
            merge(row.status, capture([&] { put_ee("aos", solve_ee_approx(scenario, rate)); }));
        }
        if (has(spec, Scheme::gas)) {
            merge(row.status,
                  capture([&] { put_ee("gas", stochastic_search_ee(scenario, rate, point_budget(spec, i))); }));
        }
        if (has(spec, Scheme::ts)) {
            for (double a : spec.ts_alphas) {
                const FixedRatioPower fr = traditional_scheme_min_power(scenario, rate, a);
                if (fr.status == SolveStatus::infeasible) {
                    merge(row.status, RowStatus::infeasible);
                    continue;
                }
                row.values[table.column(ts_label(a) + "_power_w")] = fr.tx_power_w;
                row.values[table.column(ts_label(a) + "_ee_bit_per_j")] = fr.energy_efficiency_bit_per_joule;
            }
        }
    });
    return table;
}

SweepTable run_alpha_sweep(const Scenario& scenario, const SweepSpec& spec) {
    validate(spec);
    if (spec.kind != SweepKind::alpha_sweep) throw ContractError("run_alpha_sweep: wrong sweep kind");
    const SystemConfig& cfg = scenario.config;
    if (!(spec.tx_power_w > 0.0) || spec.tx_power_w > max_tx_power_w(cfg) * (1.0 + 1e-12)) {
        throw ConfigError("alpha sweep transmit power must be in (0, P_max]");
    }
    if (!spec.ee_at_fixed_power && !(spec.target_rate_bps > 0.0)) {
        throw ConfigError("alpha sweep needs a positive target rate");
    }

    SweepTable table;
    table.kind = SweepKind::alpha_sweep;
    table.columns = {
        {"alpha", "ratio", "uniform pilot ratio at every BS"},
        {"snr", "linear", "combined SNR at the fixed transmit power"},
        {"se_bps_per_hz", "bit/s/Hz", "spectral efficiency at the fixed transmit power"},
        {"rate_bps", "bit/s", "achievable rate at the fixed transmit power"},
        {"ee_power_w", "W",
         spec.ee_at_fixed_power ? "fixed transmit power" : "least power reaching the target rate"},
        {"ee_bit_per_j", "bit/J", "energy efficiency"},
        {"se_argmax", "flag", "1 on the row with the highest spectral efficiency"},
        {"ee_argmax", "flag", "1 on the row with the highest energy efficiency"},
    };

    const auto xs = sweep_points(spec);
    std::vector<double> snr(xs.size());
    uniform_ratio_snr(xs, link_state(scenario, spec.tx_power_w), snr);

    table.rows.resize(xs.size());
    parallel_rows(xs.size(), spec.threads, [&](std::size_t i) {
        SweepRow& row = table.rows[i];
        row.x_value = xs[i];
        row.values.assign(table.columns.size(), kNaN);
        const double rate = capacity_bps(cfg.bandwidth_hz, snr[i]);
        row.values[0] = xs[i];
        row.values[1] = snr[i];
        row.values[2] = spectral_efficiency(snr[i]);
        row.values[3] = rate;
        row.values[6] = 0.0;
        row.values[7] = 0.0;
        if (spec.ee_at_fixed_power) {
            row.values[4] = spec.tx_power_w;
            row.values[5] = energy_efficiency(rate, spec.tx_power_w, cfg);
            return;
        }
        const FixedRatioPower fr = traditional_scheme_min_power(scenario, spec.target_rate_bps, xs[i]);
        if (fr.status == SolveStatus::infeasible) {
            row.status = RowStatus::infeasible;
            return;
        }
        row.values[4] = fr.tx_power_w;
        row.values[5] = fr.energy_efficiency_bit_per_joule;
    });

    auto mark_argmax = [&](std::size_t value_col, std::size_t flag_col) {
        std::optional<std::size_t> best;
        for (std::size_t i = 0; i < table.rows.size(); ++i) {
            const double v = table.rows[i].values[value_col];
            if (std::isnan(v)) continue;
            if (!best || v > table.rows[*best].values[value_col]) best = i;
        }
        if (best) table.rows[*best].values[flag_col] = 1.0;
    };
    mark_argmax(2, 6);
    mark_argmax(5, 7);
    return table;
}

SweepTable run_sweep(const Scenario& scenario, const SweepSpec& spec) {
    switch (spec.kind) {
        case SweepKind::power_sweep: return run_power_sweep(scenario, spec);
        case SweepKind::rate_sweep: return run_rate_sweep(scenario, spec);
        case SweepKind::alpha_sweep: return run_alpha_sweep(scenario, spec);
    }
    throw ContractError("unknown sweep kind");
}

SweepTable solve_se_table(const Scenario& scenario, double tx_power_w, bool precise, bool approx, double tol) {
    const int M = scenario.config.num_bs;
    SweepTable table;
    table.kind = SweepKind::power_sweep;
    table.columns = {
        {"method_precise", "flag", "1 for the root-finding solution, 0 for the closed form"},
        {"power_dbm", "dBm", "UE transmit power"},
        {"power_w", "W", "UE transmit power"},
        {"snr", "linear", "optimal combined SNR"},
        {"capacity_bps", "bit/s", "achievable uplink rate"},
        {"se_bps_per_hz", "bit/s/Hz", "spectral efficiency"},
        {"iterations", "count", "bisection iterations"},
        {"max_abs_residual", "linear", "largest per-BS stationarity residual"},
    };
    add_alpha_columns(table.columns, "opt", M);

    auto run = [&](bool is_precise) {
        SweepRow row;
        row.x_value = watt_to_dbm(tx_power_w);
        row.values.assign(table.columns.size(), kNaN);
        row.values[0] = is_precise ? 1.0 : 0.0;
        row.values[1] = row.x_value;
        row.values[2] = tx_power_w;
        row.status = capture([&] {
            const SeSolution sol = is_precise ? solve_se_precise(scenario, tx_power_w, tol)
                                              : solve_se_approx(scenario, tx_power_w);
            row.values[3] = sol.optimal_snr;
            row.values[4] = sol.capacity_bps;
            row.values[5] = sol.capacity_bps / scenario.config.bandwidth_hz;
            row.values[6] = sol.iterations;
            row.values[7] = sol.max_abs_residual();
            put_alphas(row.values, 8, sol.allocation);
        });
        table.rows.push_back(std::move(row));
    };
    if (precise) run(true);
    if (approx) run(false);
    return table;
}

SweepTable solve_ee_table(const Scenario& scenario, double target_rate_bps, bool precise, bool approx,
                          double tol) {
    const int M = scenario.config.num_bs;
    SweepTable table;
    table.kind = SweepKind::rate_sweep;
    table.columns = {
        {"method_precise", "flag", "1 for the root-finding solution, 0 for the closed form"},
        {"rate_bps", "bit/s", "required uplink rate"},
        {"target_snr", "linear", "combined SNR the rate requires"},
        {"power_w", "W", "minimal transmit power"},
        {"power_dbm", "dBm", "minimal transmit power"},
        {"achieved_snr", "linear", "combined SNR at the reported allocation and power"},
        {"ee_bit_per_j", "bit/J", "energy efficiency"},
        {"rate_at_max_power_bps", "bit/s", "best achievable rate at the power limit (infeasible rows)"},
    };
    add_alpha_columns(table.columns, "opt", M);

    auto run = [&](bool is_precise) {
        SweepRow row;
        row.x_value = target_rate_bps;
        row.values.assign(table.columns.size(), kNaN);
        row.values[0] = is_precise ? 1.0 : 0.0;
        row.values[1] = target_rate_bps;
        row.values[2] = required_snr(target_rate_bps, scenario.config.bandwidth_hz);
        row.status = capture([&] {
            const EeSolution sol = is_precise ? solve_ee_precise(scenario, target_rate_bps, tol)
                                              : solve_ee_approx(scenario, target_rate_bps);
            if (sol.status == SolveStatus::infeasible) {
                row.values[7] = sol.achievable_rate_at_max_bps;
                throw InfeasibleError("rate target unreachable");
            }
            row.values[3] = sol.min_tx_power_w;
            row.values[4] = watt_to_dbm(sol.min_tx_power_w);
            row.values[5] = sol.achieved_snr;
            row.values[6] = sol.energy_efficiency_bit_per_joule;
            put_alphas(row.values, 8, sol.allocation);
        });
        table.rows.push_back(std::move(row));
    };
    if (precise) run(true);
    if (approx) run(false);
    return table;
}

}  // namespace pilotopt
