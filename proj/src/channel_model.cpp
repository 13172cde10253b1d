#include "pilotopt/channel_model.hpp"

#include <cmath>
#include <string>

#include "pilotopt/errors.hpp"

namespace pilotopt {

double path_loss_db(double distance_m) {
    if (!(distance_m > 0.0)) {
        throw DomainError("path_loss_db: distance must be positive, got " + std::to_string(distance_m));
    }
    return 30.0 + 40.0 * std::log10(distance_m);
}

double dbm_to_watt(double p_dbm) { return std::pow(10.0, (p_dbm - 30.0) / 10.0); }

double watt_to_dbm(double p_w) {
    if (!(p_w > 0.0)) {
        throw DomainError("watt_to_dbm: power must be positive, got " + std::to_string(p_w));
    }
    return 10.0 * std::log10(p_w) + 30.0;
}

double noise_power_w(const SystemConfig& config) {
    return config.bandwidth_hz * dbm_to_watt(config.noise_psd_dbm_per_hz);
}

double per_bs_snr(double tx_power_w, const BsLink& link, double noise_w) {
    return tx_power_w * link.channel_gain_linear / (link.interference_power_w + noise_w);
}

double snr_per_watt(const BsLink& link, double noise_w) {
    return link.channel_gain_linear / (link.interference_power_w + noise_w);
}

BsLink link_from_distance(double distance_m, double interference_power_w) {
    BsLink link;
    link.distance_m = distance_m;
    link.channel_gain_linear = std::pow(10.0, -path_loss_db(distance_m) / 10.0);
    link.interference_power_w = interference_power_w;
    return link;
}

Scenario scenario_from_distances(const SystemConfig& config, std::span<const double> distances_m,
                                 double interference_power_w) {
    Scenario scenario{config, {}};
    scenario.config.num_bs = static_cast<int>(distances_m.size());
    for (double d : distances_m) {
        scenario.links.push_back(link_from_distance(d, interference_power_w));
    }
    validate(scenario);
    return scenario;
}

Scenario scenario_from_gains(const SystemConfig& config, std::span<const double> gains_linear,
                             double interference_power_w) {
    Scenario scenario{config, {}};
    scenario.config.num_bs = static_cast<int>(gains_linear.size());
    for (double g : gains_linear) {
        BsLink link;
        link.channel_gain_linear = g;
        link.interference_power_w = interference_power_w;
        scenario.links.push_back(link);
    }
    validate(scenario);
    return scenario;
}

Scenario reference_scenario() {
    const double distances[] = {200.0, 250.0, 300.0};
    return scenario_from_distances(SystemConfig{}, distances);
}

void validate(const SystemConfig& config) {
    if (!(config.bandwidth_hz > 0.0) || !std::isfinite(config.bandwidth_hz)) {
        throw ConfigError("bandwidth_hz must be positive");
    }
    if (config.coherence_symbols < 1) {
        throw ConfigError("coherence_symbols must be >= 1");
    }
    if (config.num_bs < 1) {
        throw ConfigError("at least one base station is required");
    }
    if (!std::isfinite(config.noise_psd_dbm_per_hz) || !(noise_power_w(config) > 0.0)) {
        throw ConfigError("noise power must be strictly positive");
    }
    if (!std::isfinite(config.max_tx_power_dbm)) {
        throw ConfigError("max_tx_power_dbm must be finite");
    }
    if (!(config.static_circuit_power_w >= 0.0)) {
        throw ConfigError("static_circuit_power_w must be >= 0");
    }
    if (!(config.dynamic_circuit_w_per_bps >= 0.0)) {
        throw ConfigError("dynamic_circuit_w_per_bps must be >= 0");
    }
}

void validate(const Scenario& scenario) {
    validate(scenario.config);
    if (static_cast<int>(scenario.links.size()) != scenario.config.num_bs) {
        throw ConfigError("scenario has " + std::to_string(scenario.links.size()) + " links but num_bs = " +
                          std::to_string(scenario.config.num_bs));
    }
    for (std::size_t m = 0; m < scenario.links.size(); ++m) {
        const BsLink& link = scenario.links[m];
        if (!(link.channel_gain_linear > 0.0) || !std::isfinite(link.channel_gain_linear)) {
            throw ConfigError("bs " + std::to_string(m + 1) + ": channel gain must be positive");
        }
        if (!(link.interference_power_w >= 0.0) || !std::isfinite(link.interference_power_w)) {
            throw ConfigError("bs " + std::to_string(m + 1) + ": interference power must be >= 0");
        }
    }
}

std::vector<double> per_bs_snrs(const Scenario& scenario, double tx_power_w) {
    const double noise = noise_power_w(scenario.config);
    std::vector<double> snrs;
    snrs.reserve(scenario.links.size());
    for (const BsLink& link : scenario.links) {
        snrs.push_back(per_bs_snr(tx_power_w, link, noise));
    }
    return snrs;
}

double max_tx_power_w(const SystemConfig& config) { return dbm_to_watt(config.max_tx_power_dbm); }

}  // namespace pilotopt
