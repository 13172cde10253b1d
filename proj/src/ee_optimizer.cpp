#include "pilotopt/ee_optimizer.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pilotopt/errors.hpp"
#include "pilotopt/root_finding.hpp"

namespace pilotopt {

const char* to_string(SolveStatus status) noexcept {
    return status == SolveStatus::ok ? "ok" : "infeasible";
}

double required_snr(double rate_bps, double bandwidth_hz) {
    return std::expm1(rate_bps / bandwidth_hz * std::numbers::ln2);
}

double alpha_for_rate(double target_rate_bps, double bandwidth_hz, double snr_m, int coherence_symbols) {
    const double ls = static_cast<double>(coherence_symbols) * snr_m;
    const double vartheta = 1.0 + ls * std::exp2(target_rate_bps / bandwidth_hz);
    const double alpha = (std::sqrt(vartheta) - 1.0) / ls;
    if (!(alpha < 1.0)) {
        throw InfeasibleError("rate-binding pilot ratio " + std::to_string(alpha) + " >= 1 for per-BS SNR " +
                              std::to_string(snr_m));
    }
    return alpha;
}

double ee_power_residual(const Scenario& scenario, double tx_power_w, double target_rate_bps) {
    const double target = required_snr(target_rate_bps, scenario.config.bandwidth_hz);
    // The Eq.-24 left side equals the SE fixed-point map evaluated at the
    // required SNR, since vartheta_m = 1 + L SNR_m (target + 1).
    return se_fixed_point_map(target, link_state(scenario, tx_power_w)) - target;
}

namespace {

double gain_sum(const Scenario& scenario) {
    const double noise = noise_power_w(scenario.config);
    double total = 0.0;
    for (const BsLink& link : scenario.links) total += snr_per_watt(link, noise);
    return total;
}

PilotAllocation rate_allocation(const Scenario& scenario, double tx_power_w, double rate_bps) {
    PilotAllocation alloc;
    for (double s : per_bs_snrs(scenario, tx_power_w)) {
        alloc.ratios.push_back(
            alpha_for_rate(rate_bps, scenario.config.bandwidth_hz, s, scenario.config.coherence_symbols));
    }
    return alloc;
}

double best_rate_at(const Scenario& scenario, double tx_power_w) {
    try {
        return solve_se_precise(scenario, tx_power_w).capacity_bps;
    } catch (const std::exception&) {
        return std::nan("");
    }
}

}  // namespace

EeSolution solve_ee_precise(const Scenario& scenario, double target_rate_bps, double tol) {
    if (!(target_rate_bps > 0.0)) throw ContractError("solve_ee_precise: target rate must be positive");
    if (!(tol > 0.0)) throw ContractError("solve_ee_precise: tol must be positive");

    const SystemConfig& cfg = scenario.config;
    EeSolution sol;
    sol.method = SolveMethod::precise;
    sol.target_rate_bps = target_rate_bps;
    sol.target_snr = required_snr(target_rate_bps, cfg.bandwidth_hz);

    const double p_max = max_tx_power_w(cfg);
    // Even with every symbol carrying data and perfect estimates the combined
    // SNR stays below sum SNR_m, so this power cannot meet the target.
    const double p_lo = sol.target_snr / (gain_sum(scenario) * cfg.coherence_symbols);

    auto g = [&](double log_p) { return ee_power_residual(scenario, std::exp(log_p), target_rate_bps); };

    const double g_max = g(std::log(p_max));
    if (!(g_max >= 0.0)) {
        sol.status = SolveStatus::infeasible;
        sol.min_tx_power_w = p_max;
        sol.achievable_rate_at_max_bps = best_rate_at(scenario, p_max);
        return sol;
    }
    if (p_lo >= p_max) {
        throw SolverError("solve_ee_precise: empty power bracket", {{p_lo, 0.0}, {p_max, g_max}}, p_max);
    }
    const double g_lo = g(std::log(p_lo));
    if (!(g_lo < 0.0)) {
        throw SolverError("solve_ee_precise: residual not negative at the lower power bound",
                          {{p_lo, g_lo}, {p_max, g_max}}, p_lo);
    }

    // Bisect on log P; the final bracket width bounds the relative power error.
    const BisectionResult root =
        bisect(g, std::log(p_lo), std::log(p_max), tol / 8.0, kMaxBisectionIterations);
    const double p_star = std::exp(root.hi);

    sol.min_tx_power_w = p_star;
    sol.allocation = rate_allocation(scenario, p_star, target_rate_bps);
    sol.achieved_snr = combined_snr(sol.allocation, link_state(scenario, p_star));
    sol.energy_efficiency_bit_per_joule = energy_efficiency(target_rate_bps, p_star, cfg);
    sol.iterations = root.iterations;
    return sol;
}

EeQuadratic ee_approx_quadratic(const Scenario& scenario, double target_rate_bps) {
    const SystemConfig& cfg = scenario.config;
    const double noise = noise_power_w(cfg);
    const double L = static_cast<double>(cfg.coherence_symbols);
    const double M = static_cast<double>(scenario.links.size());
    const double t = std::exp2(target_rate_bps / cfg.bandwidth_hz);

    EeQuadratic q;
    for (const BsLink& link : scenario.links) {
        const double gm = snr_per_watt(link, noise);
        q.gain_sum += gm;
        q.b += 2.0 * std::sqrt(gm * t) / std::sqrt(L);
    }
    q.c = M * (t - 1.0) - 2.0 * M / L;
    q.sqrt_power = (q.b + std::sqrt(q.b * q.b + 4.0 * q.c * q.gain_sum)) / (2.0 * q.gain_sum);
    return q;
}

EeSolution solve_ee_approx(const Scenario& scenario, double target_rate_bps) {
    if (!(target_rate_bps > 0.0)) throw ContractError("solve_ee_approx: target rate must be positive");
    const SystemConfig& cfg = scenario.config;
    const EeQuadratic q = ee_approx_quadratic(scenario, target_rate_bps);
    if (!(q.c > 0.0)) {
        throw ApproxDomainError("solve_ee_approx: rate target too small for the closed form (c = " +
                                std::to_string(q.c) + "); use the precise solver");
    }

    EeSolution sol;
    sol.method = SolveMethod::approximate;
    sol.target_rate_bps = target_rate_bps;
    sol.target_snr = required_snr(target_rate_bps, cfg.bandwidth_hz);
    const double p_star = q.sqrt_power * q.sqrt_power;
    const double p_max = max_tx_power_w(cfg);
    if (p_star > p_max) {
        sol.status = SolveStatus::infeasible;
        sol.min_tx_power_w = p_max;
        sol.achievable_rate_at_max_bps = best_rate_at(scenario, p_max);
        return sol;
    }
    sol.min_tx_power_w = p_star;
    sol.allocation = rate_allocation(scenario, p_star, target_rate_bps);
    sol.achieved_snr = combined_snr(sol.allocation, link_state(scenario, p_star));
    sol.energy_efficiency_bit_per_joule = energy_efficiency(target_rate_bps, p_star, cfg);
    return sol;
}

}  // namespace pilotopt
