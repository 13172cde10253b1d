#pragma once

#include <string>
#include <vector>

#include "pilotopt/channel_model.hpp"
#include "pilotopt/link_metrics.hpp"

namespace pilotopt {

enum class SolveMethod { precise, approximate, search };

const char* to_string(SolveMethod method) noexcept;

/// Pilot allocation maximizing the combined SNR at a fixed transmit power.
struct SeSolution {
    SolveMethod method = SolveMethod::precise;
    double tx_power_w = 0.0;
    double optimal_snr = 0.0;
    double capacity_bps = 0.0;
    PilotAllocation allocation;
    /// Per-BS stationarity residual: SNR - (alpha_m^2 L SNR_m + 2 alpha_m - 1),
    /// with SNR the combined SNR actually achieved by `allocation`.
    std::vector<double> residuals;
    int iterations = 0;

    double max_abs_residual() const;
};

inline constexpr double kDefaultSeTolerance = 1e-10;
inline constexpr int kMaxBisectionIterations = 200;

/// Positive root of alpha^2 L s + 2 alpha - 1 = target, i.e. the pilot ratio
/// at which BS `snr_m` is stationary for combined SNR `target_snr`.
/// Throws InfeasibleError when that ratio is not below 1.
double alpha_from_target_snr(double target_snr, double snr_m, int coherence_symbols);

/// Combined SNR produced when every BS uses the stationary ratio for
/// `snr`. The optimum is the fixed point of this map.
double se_fixed_point_map(double snr, const LinkState& state);

/// Stationarity residuals of `ratios` at combined SNR `snr`.
std::vector<double> stationarity_residuals(double snr, std::span<const double> ratios, const LinkState& state);

/// Bisection on map(S) - S over [0, sum SNR_m].
SeSolution solve_se_precise(const LinkState& state, double bandwidth_hz, double tol = kDefaultSeTolerance);
SeSolution solve_se_precise(const Scenario& scenario, double tx_power_w, double tol = kDefaultSeTolerance);

/// Closed-form optimum from the high-L*SNR quadratic in sqrt(SNR + 1).
/// Throws ApproxDomainError when the quadratic root gives SNR <= 0.
SeSolution solve_se_approx(const LinkState& state, double bandwidth_hz);
SeSolution solve_se_approx(const Scenario& scenario, double tx_power_w);

/// Coefficients of M y^2 + b y - c = 0 with y = sqrt(SNR + 1).
struct SeQuadratic {
    double b = 0.0;
    double c = 0.0;
    double root = 0.0;  // positive root y
};
SeQuadratic se_approx_quadratic(const LinkState& state);

}  // namespace pilotopt
