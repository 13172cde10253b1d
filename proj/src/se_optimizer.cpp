#include "pilotopt/se_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pilotopt/errors.hpp"
#include "pilotopt/root_finding.hpp"

namespace pilotopt {

const char* to_string(SolveMethod method) noexcept {
    switch (method) {
        case SolveMethod::precise: return "precise";
        case SolveMethod::approximate: return "approximate";
        case SolveMethod::search: return "search";
    }
    return "unknown";
}

double SeSolution::max_abs_residual() const {
    double worst = 0.0;
    for (double r : residuals) worst = std::max(worst, std::abs(r));
    return worst;
}

double alpha_from_target_snr(double target_snr, double snr_m, int coherence_symbols) {
    const double ls = static_cast<double>(coherence_symbols) * snr_m;
    const double alpha = (std::sqrt(1.0 + ls * (target_snr + 1.0)) - 1.0) / ls;
    if (!(alpha < 1.0)) {
        throw InfeasibleError("stationary pilot ratio " + std::to_string(alpha) + " >= 1 for per-BS SNR " +
                              std::to_string(snr_m) + " at combined SNR " + std::to_string(target_snr) +
                              "; no interior optimum");
    }
    return alpha;
}

double se_fixed_point_map(double snr, const LinkState& state) {
    const double L = static_cast<double>(state.coherence_symbols);
    double useful = 0.0;
    double noise = 0.0;
    for (double s : state.per_bs_snr) {
        const double theta = std::sqrt(1.0 + L * s * (snr + 1.0));
        useful += (1.0 - (theta - 1.0) / (L * s)) * s * (theta - 1.0) / theta;
        noise += s / theta;
    }
    return useful / (noise + static_cast<double>(state.num_bs()));
}

std::vector<double> stationarity_residuals(double snr, std::span<const double> ratios, const LinkState& state) {
    const double L = static_cast<double>(state.coherence_symbols);
    std::vector<double> out(ratios.size());
    for (std::size_t m = 0; m < ratios.size(); ++m) {
        const double a = ratios[m];
        out[m] = snr - (a * a * L * state.per_bs_snr[m] + 2.0 * a - 1.0);
    }
    return out;
}

namespace {

PilotAllocation stationary_allocation(double snr, const LinkState& state) {
    PilotAllocation alloc;
    alloc.ratios.reserve(state.per_bs_snr.size());
    for (double s : state.per_bs_snr) {
        alloc.ratios.push_back(alpha_from_target_snr(snr, s, state.coherence_symbols));
    }
    return alloc;
}

void check_power(const Scenario& scenario, double tx_power_w) {
    if (!(tx_power_w > 0.0)) throw ContractError("transmit power must be positive");
    const double limit = max_tx_power_w(scenario.config);
    if (tx_power_w > limit * (1.0 + 1e-12)) {
        throw ContractError("transmit power " + std::to_string(tx_power_w) + " W exceeds the " +
                            std::to_string(limit) + " W limit");
    }
}

}  // namespace

SeSolution solve_se_precise(const LinkState& state, double bandwidth_hz, double tol) {
    if (!(tol > 0.0)) throw ContractError("solve_se_precise: tol must be positive");
    if (state.per_bs_snr.empty()) throw ContractError("solve_se_precise: no links");

    const double upper = std::accumulate(state.per_bs_snr.begin(), state.per_bs_snr.end(), 0.0);
    auto h = [&](double s) { return se_fixed_point_map(s, state) - s; };

    // h(0) > 0 and h(upper) < 0 for any valid state. Probe the interior too so
    // a second crossing does not go unnoticed.
    std::vector<SolverError::Sample> probes;
    std::vector<double> values;
    for (int k = 0; k <= 3; ++k) {
        const double x = upper * k / 3.0;
        const double v = h(x);
        probes.push_back({x, v});
        values.push_back(v);
    }
    if (!(values.front() > 0.0) || !(values.back() < 0.0)) {
        throw SolverError("solve_se_precise: fixed-point residual does not change sign on [0, sum SNR_m]",
                          probes, 0.0);
    }
    if (count_sign_changes(values) > 1) {
        throw SolverError("solve_se_precise: multiple sign changes, fixed point not unique", probes, 0.0);
    }

    const BisectionResult root = bisect(h, 0.0, upper, tol, kMaxBisectionIterations);

    SeSolution sol;
    sol.method = SolveMethod::precise;
    sol.allocation = stationary_allocation(root.root, state);
    sol.optimal_snr = combined_snr(sol.allocation, state);
    sol.capacity_bps = capacity_bps(bandwidth_hz, sol.optimal_snr);
    sol.residuals = stationarity_residuals(sol.optimal_snr, sol.allocation.ratios, state);
    sol.iterations = root.iterations;
    return sol;
}

SeSolution solve_se_precise(const Scenario& scenario, double tx_power_w, double tol) {
    check_power(scenario, tx_power_w);
    SeSolution sol = solve_se_precise(link_state(scenario, tx_power_w), scenario.config.bandwidth_hz, tol);
    sol.tx_power_w = tx_power_w;
    return sol;
}

SeQuadratic se_approx_quadratic(const LinkState& state) {
    const double L = static_cast<double>(state.coherence_symbols);
    const double M = static_cast<double>(state.num_bs());
    SeQuadratic q;
    for (double s : state.per_bs_snr) {
        q.b += 2.0 * s / std::sqrt(L * s);
        q.c += (L * s + 2.0) / L + 1.0;
    }
    q.root = (-q.b + std::sqrt(q.b * q.b + 4.0 * M * q.c)) / (2.0 * M);
    return q;
}

SeSolution solve_se_approx(const LinkState& state, double bandwidth_hz) {
    if (state.per_bs_snr.empty()) throw ContractError("solve_se_approx: no links");
    const SeQuadratic q = se_approx_quadratic(state);
    if (!(q.root > 1.0)) {
        throw ApproxDomainError("solve_se_approx: closed form gives non-positive SNR (sqrt(SNR+1) = " +
                                std::to_string(q.root) + "); use the precise solver");
    }
    SeSolution sol;
    sol.method = SolveMethod::approximate;
    sol.optimal_snr = q.root * q.root - 1.0;
    sol.capacity_bps = 2.0 * bandwidth_hz * std::log2(q.root);
    sol.allocation = stationary_allocation(sol.optimal_snr, state);
    sol.residuals = stationarity_residuals(combined_snr(sol.allocation, state), sol.allocation.ratios, state);
    return sol;
}

SeSolution solve_se_approx(const Scenario& scenario, double tx_power_w) {
    check_power(scenario, tx_power_w);
    SeSolution sol = solve_se_approx(link_state(scenario, tx_power_w), scenario.config.bandwidth_hz);
    sol.tx_power_w = tx_power_w;
    return sol;
}

}  // namespace pilotopt
