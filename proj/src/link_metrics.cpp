#include "pilotopt/link_metrics.hpp"

#include <cmath>
#include <string>

#include "pilotopt/errors.hpp"

namespace pilotopt {

LinkState link_state(const Scenario& scenario, double tx_power_w) {
    return LinkState{per_bs_snrs(scenario, tx_power_w), scenario.config.coherence_symbols};
}

double mmse_error(double alpha, int coherence_symbols, double snr_m) {
    return 1.0 / (1.0 + alpha * static_cast<double>(coherence_symbols) * snr_m);
}

// The batch kernels in kernels.cpp replicate this operation order exactly so
// that scalar and vector paths agree bit for bit.
double combined_snr(std::span<const double> ratios, const LinkState& state) {
    if (ratios.size() != state.per_bs_snr.size()) {
        throw ContractError("combined_snr: allocation has " + std::to_string(ratios.size()) +
                            " ratios for " + std::to_string(state.per_bs_snr.size()) + " links");
    }
    const double L = static_cast<double>(state.coherence_symbols);
    double useful = 0.0;
    double noise = 0.0;
    for (std::size_t m = 0; m < ratios.size(); ++m) {
        const double a = ratios[m];
        const double s = state.per_bs_snr[m];
        const double u = a * L * s;
        const double e = 1.0 / (1.0 + u);
        useful += (1.0 - a) * s * u * e;
        noise += s * e;
    }
    return useful / (noise + static_cast<double>(ratios.size()));
}

double combined_snr(const PilotAllocation& alloc, const LinkState& state) {
    return combined_snr(std::span<const double>(alloc.ratios), state);
}

double capacity_bps(double bandwidth_hz, double snr) { return bandwidth_hz * std::log2(1.0 + snr); }

double spectral_efficiency(double snr) { return std::log2(1.0 + snr); }

double energy_efficiency(double rate_bps, double tx_power_w, const SystemConfig& config) {
    return rate_bps /
           (tx_power_w + config.dynamic_circuit_w_per_bps * rate_bps + config.static_circuit_power_w);
}

}  // namespace pilotopt
