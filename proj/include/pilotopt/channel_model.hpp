#pragma once

#include <optional>
#include <span>
#include <vector>

namespace pilotopt {

/// Global link-budget and power-model constants shared by every BS.
struct SystemConfig {
    double bandwidth_hz = 10e6;
    double noise_psd_dbm_per_hz = -174.0;
    int coherence_symbols = 1000;
    int num_bs = 3;
    double max_tx_power_dbm = 46.0;
    double static_circuit_power_w = 0.05;
    /// Dynamic circuit power per bit/s of carried rate (W per bit/s).
    double dynamic_circuit_w_per_bps = 2e-9;
};

/// One cooperating base station as seen from the UE.
struct BsLink {
    std::optional<double> distance_m;
    double channel_gain_linear = 0.0;  // |h_m|^2
    double interference_power_w = 0.0;
};

struct Scenario {
    SystemConfig config;
    std::vector<BsLink> links;
};

double path_loss_db(double distance_m);

double dbm_to_watt(double p_dbm);
double watt_to_dbm(double p_w);

/// Thermal noise power over the full bandwidth.
double noise_power_w(const SystemConfig& config);

/// Received SNR at one BS for a given UE transmit power.
double per_bs_snr(double tx_power_w, const BsLink& link, double noise_w);

/// Per-watt SNR gain |h_m|^2 / (I_m + N). Multiplying by P gives SNR_m.
double snr_per_watt(const BsLink& link, double noise_w);

BsLink link_from_distance(double distance_m, double interference_power_w = 0.0);

/// Builds a scenario with path-loss gains, one BS per distance.
Scenario scenario_from_distances(const SystemConfig& config, std::span<const double> distances_m,
                                 double interference_power_w = 0.0);

/// Builds a scenario directly from linear channel gains |h_m|^2.
Scenario scenario_from_gains(const SystemConfig& config, std::span<const double> gains_linear,
                             double interference_power_w = 0.0);

/// The three-BS reference scenario: 10 MHz, -174 dBm/Hz, L = 1000,
/// UE at 200/250/300 m, 46 dBm limit, 50 mW static, 2 mW/Mbps dynamic.
Scenario reference_scenario();

/// Throws ConfigError on the first violated invariant.
void validate(const SystemConfig& config);
void validate(const Scenario& scenario);

/// Linear SNR_m for every link at transmit power P.
std::vector<double> per_bs_snrs(const Scenario& scenario, double tx_power_w);

double max_tx_power_w(const SystemConfig& config);

}  // namespace pilotopt
