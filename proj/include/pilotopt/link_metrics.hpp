#pragma once

#include <span>
#include <vector>

#include "pilotopt/channel_model.hpp"

namespace pilotopt {

/// Fraction of each BS's coherence frame spent on pilots, one entry per BS.
struct PilotAllocation {
    std::vector<double> ratios;

    static PilotAllocation uniform(int num_bs, double alpha) {
        return PilotAllocation{std::vector<double>(static_cast<std::size_t>(num_bs), alpha)};
    }
    std::size_t size() const noexcept { return ratios.size(); }
};

/// Per-BS SNRs at one transmit power, plus the frame length they share.
struct LinkState {
    std::vector<double> per_bs_snr;
    int coherence_symbols = 1;

    int num_bs() const noexcept { return static_cast<int>(per_bs_snr.size()); }
};

LinkState link_state(const Scenario& scenario, double tx_power_w);

/// Normalized MMSE of the channel estimate: 1 / (1 + alpha L SNR_m).
double mmse_error(double alpha, int coherence_symbols, double snr_m);

/// Data-symbol SNR after non-coherent combining of all BSs, with imperfect
/// estimates. Estimation error power counts as noise; pilot share of the
/// useful power is discounted by (1 - alpha_m).
double combined_snr(std::span<const double> ratios, const LinkState& state);
double combined_snr(const PilotAllocation& alloc, const LinkState& state);

double capacity_bps(double bandwidth_hz, double snr);
double spectral_efficiency(double snr);

/// Delivered bits per joule including static and rate-proportional circuit power.
double energy_efficiency(double rate_bps, double tx_power_w, const SystemConfig& config);

}  // namespace pilotopt
