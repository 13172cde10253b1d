#pragma once

#include <filesystem>
#include <string_view>

#include "pilotopt/channel_model.hpp"

namespace pilotopt {

// Scenario files are line-oriented `key = value` text. Global keys come first,
// then one `[bs]` block per base station:
//
//   bandwidth_hz = 10e6
//   noise_psd_dbm_per_hz = -174
//   coherence_symbols = 1000
//   max_tx_power_dbm = 46
//   static_circuit_power_w = 0.05
//   dynamic_circuit_w_per_bps = 2e-9
//
//   [bs]
//   distance_m = 200          # or channel_gain_db = -122.04, never both
//   interference_dbm = -120   # optional, absent means 0 W
//
// `#` and `;` start comments. Unknown keys are rejected.

Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace pilotopt
