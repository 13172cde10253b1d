// pilotopt: optimal pilot ratios for uplink joint reception.
//
//   pilotopt solve-se scenarios/reference.ini --power-dbm 30 --both
//   pilotopt solve-ee scenarios/reference.ini --rate-mbps 40
//   pilotopt power-sweep scenarios/reference.ini --out power.csv
//   pilotopt rate-sweep scenarios/reference.ini --start 1 --stop 8 --points 15
//   pilotopt alpha-sweep scenarios/reference.ini --power-dbm 23 --rate-mbps 10
//
// Exit codes: 0 success, 1 usage, 2 scenario/config error, 3 solver error,
// 4 only infeasible results.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pilotopt/channel_model.hpp"
#include "pilotopt/errors.hpp"
#include "pilotopt/harness.hpp"
#include "pilotopt/scenario_io.hpp"

namespace {

using namespace pilotopt;

enum ExitCode : int { kOk = 0, kUsage = 1, kConfig = 2, kSolver = 3, kInfeasible = 4 };

struct CommonOptions {
    std::string scenario_path;
    std::string out_path;
    std::vector<std::string> schemes{"pos", "aos", "gas", "ts"};
    std::vector<double> ts_alphas{0.01, 0.05, 0.2};
    int points = 0;
    double start = 0.0;
    double stop = 0.0;
    std::uint64_t seed = 1;
    int population = SearchBudget{}.population;
    int generations = SearchBudget{}.generations;
    double mutation_scale = SearchBudget{}.mutation_scale;
    double tol = kDefaultSeTolerance;
    unsigned threads = 1;
    bool precise = false;
    bool approx = false;
    bool both = false;
};

void add_scenario(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("scenario", o.scenario_path, "scenario file")->required();
    cmd->add_option("--out", o.out_path, "CSV output path (a .columns.json manifest is written next to it)");
    cmd->add_option("--tol", o.tol, "solver tolerance")->check(CLI::PositiveNumber);
    auto* p = cmd->add_flag("--precise", o.precise, "precise (root-finding) optimizer only");
    auto* a = cmd->add_flag("--approx", o.approx, "closed-form optimizer only");
    auto* b = cmd->add_flag("--both", o.both, "both optimizers");
    p->excludes(a)->excludes(b);
    a->excludes(b);
}

void add_sweep(CLI::App* cmd, CommonOptions& o, double start, double stop, int points) {
    o.start = start;
    o.stop = stop;
    o.points = points;
    cmd->add_option("--start", o.start, "first sweep value")->capture_default_str();
    cmd->add_option("--stop", o.stop, "last sweep value")->capture_default_str();
    cmd->add_option("--points", o.points, "number of sweep points")->check(CLI::Range(2, 1000000))->capture_default_str();
    cmd->add_option("--schemes", o.schemes, "subset of pos,aos,gas,ts")->delimiter(',')->capture_default_str();
    cmd->add_option("--ts-alphas", o.ts_alphas, "uniform ratios for ts curves")->delimiter(',')->capture_default_str();
    cmd->add_option("--seed", o.seed, "search seed")->capture_default_str();
    cmd->add_option("--population", o.population, "search population")->capture_default_str();
    cmd->add_option("--generations", o.generations, "search generations")->capture_default_str();
    cmd->add_option("--mutation-scale", o.mutation_scale, "search mutation std-dev")->capture_default_str();
    cmd->add_option("--threads", o.threads, "worker threads, 0 = all cores")->capture_default_str();
}

SweepSpec make_spec(const CommonOptions& o, SweepKind kind) {
    SweepSpec spec;
    spec.kind = kind;
    spec.start = o.start;
    spec.stop = o.stop;
    spec.points = o.points;
    spec.schemes.clear();
    for (const auto& name : o.schemes) {
        auto s = parse_scheme(name);
        if (!s) throw ConfigError("unknown scheme '" + name + "'");
        if (*s == Scheme::pos && o.approx) continue;
        if (*s == Scheme::aos && o.precise) continue;
        spec.schemes.push_back(*s);
    }
    spec.ts_alphas = o.ts_alphas;
    spec.seed = o.seed;
    spec.budget.population = o.population;
    spec.budget.generations = o.generations;
    spec.budget.mutation_scale = o.mutation_scale;
    spec.tol = o.tol;
    spec.threads = o.threads;
    return spec;
}

void emit(const SweepTable& table, const std::string& out_path) {
    if (out_path.empty()) {
        write_csv(std::cout, table);
        return;
    }
    std::ofstream csv(out_path, std::ios::binary);
    if (!csv) throw ConfigError("cannot write " + out_path);
    write_csv(csv, table);
    std::ofstream manifest(out_path + ".columns.json", std::ios::binary);
    if (!manifest) throw ConfigError("cannot write " + out_path + ".columns.json");
    write_manifest(manifest, table);
}

int sweep_exit_code(const SweepTable& table) {
    bool any_ok = false;
    for (const auto& row : table.rows) {
        if (row.status == RowStatus::solver_error) return kSolver;
        any_ok = any_ok || row.status == RowStatus::ok;
    }
    return any_ok ? kOk : kInfeasible;
}

int solve_exit_code(const SweepTable& table) {
    bool infeasible = false;
    for (const auto& row : table.rows) {
        if (row.status == RowStatus::solver_error || row.status == RowStatus::approx_domain_error) return kSolver;
        infeasible = infeasible || row.status == RowStatus::infeasible;
    }
    return infeasible ? kInfeasible : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal pilot-symbol ratios for uplink joint-reception CoMP"};
    app.require_subcommand(1);

    CommonOptions se_opt, ee_opt, power_opt, rate_opt, alpha_opt;
    double se_power_dbm = 0.0;
    double ee_rate_mbps = 0.0;
    double alpha_power_dbm = 23.0;
    double alpha_rate_mbps = 10.0;
    bool alpha_fixed_power = false;

    auto* solve_se = app.add_subcommand("solve-se", "maximize SE at a fixed transmit power");
    add_scenario(solve_se, se_opt);
    solve_se->add_option("--power-dbm", se_power_dbm, "UE transmit power")->required();

    auto* solve_ee = app.add_subcommand("solve-ee", "minimize transmit power for a required rate");
    add_scenario(solve_ee, ee_opt);
    solve_ee->add_option("--rate-mbps", ee_rate_mbps, "required uplink rate")->required()->check(CLI::PositiveNumber);

    auto* power = app.add_subcommand("power-sweep", "optimal rate versus transmit power (dBm axis)");
    add_scenario(power, power_opt);
    add_sweep(power, power_opt, 20.0, 46.0, 27);

    auto* rate = app.add_subcommand("rate-sweep", "energy efficiency versus required SE (bit/s/Hz axis)");
    add_scenario(rate, rate_opt);
    add_sweep(rate, rate_opt, 1.0, 8.0, 15);

    auto* alpha = app.add_subcommand("alpha-sweep", "SE and EE versus a uniform pilot ratio");
    add_scenario(alpha, alpha_opt);
    add_sweep(alpha, alpha_opt, 0.001, 0.99, 990);
    alpha->add_option("--power-dbm", alpha_power_dbm, "transmit power for the SE column")->capture_default_str();
    alpha->add_option("--rate-mbps", alpha_rate_mbps, "rate target for the EE column")->capture_default_str();
    alpha->add_flag("--ee-fixed-power", alpha_fixed_power, "evaluate EE at --power-dbm instead of at minimal power");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (solve_se->parsed()) {
            const Scenario sc = load_scenario(se_opt.scenario_path);
            const bool precise = !se_opt.approx;
            const bool approx = se_opt.approx || se_opt.both;
            const SweepTable t = solve_se_table(sc, dbm_to_watt(se_power_dbm), precise, approx, se_opt.tol);
            emit(t, se_opt.out_path);
            return solve_exit_code(t);
        }
        if (solve_ee->parsed()) {
            const Scenario sc = load_scenario(ee_opt.scenario_path);
            const bool precise = !ee_opt.approx;
            const bool approx = ee_opt.approx || ee_opt.both;
            const SweepTable t = solve_ee_table(sc, ee_rate_mbps * 1e6, precise, approx, ee_opt.tol);
            emit(t, ee_opt.out_path);
            return solve_exit_code(t);
        }
        if (power->parsed()) {
            const Scenario sc = load_scenario(power_opt.scenario_path);
            const SweepTable t = run_power_sweep(sc, make_spec(power_opt, SweepKind::power_sweep));
            emit(t, power_opt.out_path);
            return sweep_exit_code(t);
        }
        if (rate->parsed()) {
            const Scenario sc = load_scenario(rate_opt.scenario_path);
            const SweepTable t = run_rate_sweep(sc, make_spec(rate_opt, SweepKind::rate_sweep));
            emit(t, rate_opt.out_path);
            return sweep_exit_code(t);
        }
        if (alpha->parsed()) {
            const Scenario sc = load_scenario(alpha_opt.scenario_path);
            SweepSpec spec = make_spec(alpha_opt, SweepKind::alpha_sweep);
            spec.schemes = {Scheme::ts};
            spec.tx_power_w = dbm_to_watt(alpha_power_dbm);
            spec.target_rate_bps = alpha_rate_mbps * 1e6;
            spec.ee_at_fixed_power = alpha_fixed_power;
            const SweepTable t = run_alpha_sweep(sc, spec);
            emit(t, alpha_opt.out_path);
            return sweep_exit_code(t);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const ContractError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kConfig;
    } catch (const DomainError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kConfig;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kSolver;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return kInfeasible;
    }
    return kUsage;
}
