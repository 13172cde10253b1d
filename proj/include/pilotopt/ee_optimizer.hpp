#pragma once

#include <vector>

#include "pilotopt/channel_model.hpp"
#include "pilotopt/link_metrics.hpp"
#include "pilotopt/se_optimizer.hpp"

namespace pilotopt {

enum class SolveStatus { ok, infeasible };

const char* to_string(SolveStatus status) noexcept;

/// Minimum transmit power (equivalently maximum energy efficiency) that
/// carries a required uplink rate.
struct EeSolution {
    SolveMethod method = SolveMethod::precise;
    SolveStatus status = SolveStatus::ok;
    double target_rate_bps = 0.0;
    double target_snr = 0.0;  // 2^(R/W) - 1
    /// Minimal power, or the power limit itself when infeasible.
    double min_tx_power_w = 0.0;
    PilotAllocation allocation;
    double achieved_snr = 0.0;
    double energy_efficiency_bit_per_joule = 0.0;
    /// Best rate reachable at the power limit; filled for infeasible results.
    double achievable_rate_at_max_bps = 0.0;
    int iterations = 0;
};

inline constexpr double kDefaultEeTolerance = 1e-10;

/// SNR that a rate of `rate_bps` over `bandwidth_hz` requires.
double required_snr(double rate_bps, double bandwidth_hz);

/// Stationary pilot ratio for a BS once the rate constraint binds.
/// Throws InfeasibleError when the ratio is not below 1.
double alpha_for_rate(double target_rate_bps, double bandwidth_hz, double snr_m, int coherence_symbols);

/// Combined SNR with every BS at its rate-binding stationary ratio, at
/// transmit power P, minus the required SNR. Its root in P is the optimum.
double ee_power_residual(const Scenario& scenario, double tx_power_w, double target_rate_bps);

/// Bisection in log P over [(T-1)/(L sum g_m), P_max]; `tol` is relative.
EeSolution solve_ee_precise(const Scenario& scenario, double target_rate_bps, double tol = kDefaultEeTolerance);

/// Closed form from the quadratic in sqrt(P). Flags infeasible when P* > P_max.
/// Throws ApproxDomainError when M(T - 1) - 2M/L <= 0.
EeSolution solve_ee_approx(const Scenario& scenario, double target_rate_bps);

struct EeQuadratic {
    double gain_sum = 0.0;  // sum of |h_m|^2 / (I_m + N)
    double b = 0.0;
    double c = 0.0;
    double sqrt_power = 0.0;
};
EeQuadratic ee_approx_quadratic(const Scenario& scenario, double target_rate_bps);

}  // namespace pilotopt
