// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "oracles.hpp"
#include "pilotopt/baselines.hpp"
#include "pilotopt/channel_model.hpp"
#include "pilotopt/ee_optimizer.hpp"
#include "pilotopt/errors.hpp"
#include "pilotopt/harness.hpp"
#include "pilotopt/se_optimizer.hpp"

using namespace pilotopt;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) { return format_number(v); }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

Scenario unit_scenario(std::vector<double> gains, int L) {
    SystemConfig cfg;
    cfg.bandwidth_hz = 1e6;
    cfg.coherence_symbols = L;
    cfg.num_bs = static_cast<int>(gains.size());
    cfg.max_tx_power_dbm = 80.0;
    const double n = noise_power_w(cfg);
    for (double& g : gains) g *= n;
    return scenario_from_gains(cfg, gains);
}

// Physical scenarios for the grid oracle: 1-3 BSs at 100-500 m, a transmit
// power in [20, 46] dBm and L from {100, 1000, 10000}.
struct OracleCase {
    Scenario scenario;
    double tx_power_w;
};

std::vector<OracleCase> oracle_cases(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> nbs(1, 3);
    std::uniform_int_distribution<int> lexp(2, 4);
    std::uniform_real_distribution<double> dist(100.0, 500.0);
    std::uniform_real_distribution<double> pdbm(20.0, 46.0);
    std::vector<OracleCase> out;
    for (int k = 0; k < count; ++k) {
        SystemConfig cfg;
        cfg.num_bs = nbs(rng);
        cfg.coherence_symbols = static_cast<int>(std::lround(std::pow(10.0, lexp(rng))));
        std::vector<double> d;
        for (int m = 0; m < cfg.num_bs; ++m) d.push_back(dist(rng));
        const double p = dbm_to_watt(pdbm(rng));
        out.push_back({scenario_from_distances(cfg, d), p});
    }
    return out;
}

Outcome stationarity_suite() {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> nbs(1, 3);
    std::uniform_int_distribution<int> lexp(2, 4);
    std::uniform_real_distribution<double> snr_exp(0.0, 3.0);
    const auto t0 = Clock::now();
    int bad = 0, infeasible = 0;
    double worst = 0.0;
    std::string boundary_case;
    for (int k = 0; k < 100; ++k) {
        LinkState st;
        const int M = nbs(rng);
        st.coherence_symbols = static_cast<int>(std::lround(std::pow(10.0, lexp(rng))));
        for (int m = 0; m < M; ++m) st.per_bs_snr.push_back(std::pow(10.0, snr_exp(rng)));
        try {
            const auto sol = solve_se_precise(st, 1.0);
            worst = std::max(worst, sol.max_abs_residual());
            if (!(sol.max_abs_residual() <= 1e-8)) ++bad;
        } catch (const InfeasibleError&) {
            if (++infeasible == 1) {
                boundary_case = " (first: L " + std::to_string(st.coherence_symbols) + ", SNR";
                for (double s : st.per_bs_snr) boundary_case += " " + fmt(s);
                boundary_case += ")";
            }
        } catch (const SolverError&) {
            ++bad;
        }
    }
    const double secs = seconds_since(t0);
    Outcome o;
    o.pass = bad == 0 && infeasible == 0 && secs < 5.0;
    o.detail = "worst residual " + fmt(worst) + ", over-tolerance " + std::to_string(bad) +
               ", no interior optimum " + std::to_string(infeasible) + boundary_case + ", " + fmt(secs) + " s";
    return o;
}

Outcome oracle_optimality() {
    const auto t0 = Clock::now();
    int se_beaten = 0, ee_beaten = 0;
    double worst_se = 0.0;
    for (const auto& c : oracle_cases(2, 20)) {
        const auto& sc = c.scenario;
        const double L = sc.config.coherence_symbols;
        const auto sol = solve_se_precise(sc, c.tx_power_w);
        const auto grid = oracle::full_grid_max(per_bs_snrs(sc, c.tx_power_w), L, 0.002);
        const double excess = grid.snr / sol.optimal_snr - 1.0;
        worst_se = std::max(worst_se, excess);
        if (excess > 0.002) ++se_beaten;

        // Rate target: 90% of the best rate at the drawn power, feasible by construction.
        const double rate = 0.9 * sol.capacity_bps;
        const auto ee = solve_ee_precise(sc, rate);
        if (ee.status != SolveStatus::ok) {
            ++ee_beaten;
            continue;
        }
        const double lower = ee.min_tx_power_w * 0.995;
        const auto grid_lower = oracle::full_grid_max(per_bs_snrs(sc, lower), L, 0.002);
        if (grid_lower.snr >= ee.target_snr) ++ee_beaten;
    }
    const double secs = seconds_since(t0);
    Outcome o;
    o.pass = se_beaten == 0 && ee_beaten == 0 && secs < 60.0;
    o.detail = "largest grid SNR excess " + fmt(worst_se) + ", SE beaten " + std::to_string(se_beaten) +
               ", EE beaten " + std::to_string(ee_beaten) + ", " + fmt(secs) + " s";
    return o;
}

Outcome approximation_accuracy() {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> nbs(1, 3);
    std::uniform_real_distribution<double> snr_exp(1.0, 3.0);
    std::uniform_real_distribution<double> se_target(3.0, 10.0);
    double worst_se = 0.0, worst_ee = 0.0;
    for (int k = 0; k < 50; ++k) {
        const int M = nbs(rng);
        LinkState st{{}, 1000};
        for (int m = 0; m < M; ++m) st.per_bs_snr.push_back(std::pow(10.0, snr_exp(rng)));
        worst_se = std::max(worst_se, rel(solve_se_approx(st, 1.0).optimal_snr, solve_se_precise(st, 1.0).optimal_snr));

        // EE: gains normalized so SNR_m = g_m P; keep draws where every SNR_m
        // at the optimum is at least 10.
        std::vector<double> g;
        for (int m = 0; m < M; ++m) g.push_back(std::pow(10.0, snr_exp(rng) - 1.0));
        const Scenario sc = unit_scenario(g, 1000);
        const double rate = se_target(rng) * sc.config.bandwidth_hz;
        const auto precise = solve_ee_precise(sc, rate);
        const double gmin = *std::min_element(g.begin(), g.end());
        if (precise.status != SolveStatus::ok || gmin * precise.min_tx_power_w < 10.0) continue;
        worst_ee = std::max(worst_ee, rel(solve_ee_approx(sc, rate).min_tx_power_w, precise.min_tx_power_w));
    }

    bool monotone = true;
    double prev_se = INFINITY, prev_ee = INFINITY;
    std::string gaps;
    for (int L : {100, 1000, 10000, 100000}) {
        const LinkState st{{10.0, 30.0, 100.0}, L};
        const double gse = rel(solve_se_approx(st, 1.0).optimal_snr, solve_se_precise(st, 1.0).optimal_snr);
        const Scenario sc = unit_scenario({1.0, 3.0, 10.0}, L);
        const double rate = 4.0 * sc.config.bandwidth_hz;
        const double gee =
            rel(solve_ee_approx(sc, rate).min_tx_power_w, solve_ee_precise(sc, rate).min_tx_power_w);
        monotone = monotone && gse < prev_se && gee < prev_ee;
        prev_se = gse;
        prev_ee = gee;
        gaps += " " + fmt(gse) + "/" + fmt(gee);
    }
    Outcome o;
    o.pass = worst_se <= 0.01 && worst_ee <= 0.01 && monotone;
    o.detail = "worst SNR* gap " + fmt(worst_se) + ", worst P* gap " + fmt(worst_ee) + ", SE/EE gaps over L:" + gaps;
    return o;
}

Outcome closed_form_identity() {
    double worst = 0.0;
    auto check = [&](const LinkState& st, double W) {
        const auto sol = solve_se_approx(st, W);
        worst = std::max(worst, rel(sol.capacity_bps, W * std::log2(1.0 + sol.optimal_snr)));
    };
    check(LinkState{{10.0, 10.0, 10.0}, 1000}, 10e6);
    check(LinkState{{625.0, 256.0, 123.457}, 1000}, 10e6);
    for (const auto& c : oracle_cases(2, 20)) check(link_state(c.scenario, c.tx_power_w), c.scenario.config.bandwidth_hz);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> snr_exp(0.0, 3.0);
    for (int k = 0; k < 100; ++k) {
        LinkState st{{}, 1000};
        for (int m = 0; m < 1 + k % 3; ++m) st.per_bs_snr.push_back(std::pow(10.0, snr_exp(rng)));
        check(st, 1e6);
    }
    Outcome o;
    o.pass = worst <= 1e-12;
    o.detail = "worst relative mismatch " + fmt(worst);
    return o;
}

Outcome symmetric_anchor() {
    const auto se = solve_se_approx(LinkState{{10.0, 10.0, 10.0}, 1000}, 1e6);
    double worst_alpha = 0.0;
    for (double a : se.allocation.ratios) worst_alpha = std::max(worst_alpha, std::abs(a - 0.032084));
    const Scenario sc = unit_scenario({1.0, 1.0, 1.0}, 1000);
    const auto ee = solve_ee_approx(sc, sc.config.bandwidth_hz * std::log2(11.0));
    Outcome o;
    o.pass = std::abs(se.optimal_snr - 9.35836) <= 1e-4 && worst_alpha <= 1e-5 && ee.status == SolveStatus::ok &&
             std::abs(ee.min_tx_power_w - 10.684) <= 1e-3;
    o.detail = "SNR* " + fmt(se.optimal_snr) + ", alpha* deviation " + fmt(worst_alpha) + ", P* " +
               fmt(ee.min_tx_power_w) + " W";
    return o;
}

Outcome scheme_dominance() {
    const Scenario sc = reference_scenario();
    std::vector<double> alphas;
    for (int k = 1; k <= 99; ++k) alphas.push_back(k / 100.0);

    SweepSpec power;
    power.kind = SweepKind::power_sweep;
    power.start = 20.0;
    power.stop = 46.0;
    power.points = 27;
    power.ts_alphas = alphas;
    const auto pt = run_power_sweep(sc, power);

    int ts_wins = 0, gas_misses = 0, bad_rows = 0;
    double worst_gas = 0.0;
    for (std::size_t i = 0; i < pt.rows.size(); ++i) {
        if (pt.rows[i].status != RowStatus::ok) ++bad_rows;
        const double pos = pt.value(i, "pos_snr");
        for (double a : alphas) {
            if (pt.value(i, "ts_" + format_number(a) + "_snr") > pos) ++ts_wins;
        }
        const double gap = 1.0 - pt.value(i, "gas_snr") / pos;
        worst_gas = std::max(worst_gas, gap);
        if (!(gap <= 0.005)) ++gas_misses;
    }

    SweepSpec rate;
    rate.kind = SweepKind::rate_sweep;
    rate.start = 1.0;
    rate.stop = 8.0;
    rate.points = 15;
    rate.ts_alphas = alphas;
    const auto rt = run_rate_sweep(sc, rate);
    int feasible_points = 0;
    for (std::size_t i = 0; i < rt.rows.size(); ++i) {
        const double pos = rt.value(i, "pos_ee_bit_per_j");
        if (std::isnan(pos)) continue;
        ++feasible_points;
        for (double a : alphas) {
            const double ts = rt.value(i, "ts_" + format_number(a) + "_ee_bit_per_j");
            if (!std::isnan(ts) && ts > pos) ++ts_wins;
        }
        const double gas = rt.value(i, "gas_ee_bit_per_j");
        const double gap = std::isnan(gas) ? 1.0 : 1.0 - gas / pos;
        worst_gas = std::max(worst_gas, gap);
        if (!(gap <= 0.005)) ++gas_misses;
    }
    Outcome o;
    o.pass = ts_wins == 0 && gas_misses == 0 && bad_rows == 0 && feasible_points > 0;
    o.detail = "TS above POS " + std::to_string(ts_wins) + " times, GAS worst shortfall " + fmt(worst_gas) +
               ", feasible rate points " + std::to_string(feasible_points) + "/" + std::to_string(rt.rows.size());
    return o;
}

Outcome duality() {
    const Scenario sc = reference_scenario();
    double worst = 0.0;
    int infeasible = 0;
    for (int k = 0; k < 10; ++k) {
        const double rate = (1.0 + 7.0 * k / 9.0) * sc.config.bandwidth_hz;
        const auto ee = solve_ee_precise(sc, rate);
        if (ee.status != SolveStatus::ok) {
            ++infeasible;
            continue;
        }
        worst = std::max(worst, rel(solve_se_precise(sc, ee.min_tx_power_w).capacity_bps, rate));
    }
    Outcome o;
    o.pass = infeasible == 0 && worst <= 1e-3;
    o.detail = "worst rate mismatch " + fmt(worst) + ", infeasible targets " + std::to_string(infeasible);
    return o;
}

Outcome alpha_sweep_shape() {
    Outcome o;
    for (double d : {200.0, 250.0, 300.0}) {
        SystemConfig cfg;
        cfg.num_bs = 1;
        const std::vector<double> dist{d};
        SweepSpec spec;
        spec.kind = SweepKind::alpha_sweep;
        spec.start = 0.001;
        spec.stop = 0.99;
        spec.points = 990;
        const auto t = run_alpha_sweep(scenario_from_distances(cfg, dist), spec);
        std::vector<double> se, ee;
        bool rows_ok = true;
        for (std::size_t i = 0; i < t.rows.size(); ++i) {
            rows_ok = rows_ok && t.rows[i].status == RowStatus::ok;
            se.push_back(t.value(i, "se_bps_per_hz"));
            ee.push_back(t.value(i, "ee_bit_per_j"));
        }
        const auto s = oracle::smoothed_shape(se);
        const auto e = oracle::smoothed_shape(ee);
        const bool ok = rows_ok && s.sign_changes == 1 && e.sign_changes == 1 && s.max_rise > s.max_fall &&
                        e.max_rise > e.max_fall;
        o.pass = o.pass && ok;
        o.detail += (o.detail.empty() ? "" : "; ") + format_number(d) + " m: SE " + std::to_string(s.sign_changes) +
                    " turn(s) rise/fall " + fmt(s.max_rise / s.max_fall) + ", EE " + std::to_string(e.sign_changes) +
                    " turn(s) rise/fall " + fmt(e.max_rise / e.max_fall);
    }
    return o;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome cli_determinism() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("pilotopt_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::string cli = PILOTOPT_CLI;
    const std::string scenario = std::string(PILOTOPT_SOURCE_DIR) + "/scenarios/reference.ini";
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"solve_se", "solve-se " + scenario + " --power-dbm 30 --both"},
        {"solve_ee", "solve-ee " + scenario + " --rate-mbps 40 --both"},
        {"power", "power-sweep " + scenario + " --points 8 --seed 7"},
        {"rate", "rate-sweep " + scenario + " --points 6 --seed 7 --threads 2"},
        {"alpha", "alpha-sweep " + scenario + " --points 50"},
    };
    Outcome o;
    int differing = 0, failed = 0;
    for (const auto& [name, args] : commands) {
        std::string outputs[2];
        for (int run = 0; run < 2; ++run) {
            const fs::path out = dir / (name + "_" + std::to_string(run) + ".csv");
            const std::string cmd = "\"" + cli + "\" " + args + " --out \"" + out.string() + "\" > /dev/null 2>&1";
            if (std::system(cmd.c_str()) != 0) ++failed;
            outputs[run] = slurp(out);
        }
        if (outputs[0].empty() || outputs[0] != outputs[1]) {
            ++differing;
            o.detail += " " + name + " differs;";
        }
    }
    fs::remove_all(dir);
    o.pass = differing == 0 && failed == 0;
    o.detail = std::to_string(commands.size()) + " commands, " + std::to_string(differing) + " differing, " +
               std::to_string(failed) + " nonzero exits" + o.detail;
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"1 stationarity suite", stationarity_suite},
        {"2 grid oracle optimality", oracle_optimality},
        {"3 approximation accuracy", approximation_accuracy},
        {"4 closed-form capacity identity", closed_form_identity},
        {"5 symmetric anchors", symmetric_anchor},
        {"6 scheme dominance", scheme_dominance},
        {"7 SE/EE duality", duality},
        {"8 alpha sweep shape", alpha_sweep_shape},
        {"9 CLI determinism", cli_determinism},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
