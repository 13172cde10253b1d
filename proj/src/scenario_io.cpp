#include "pilotopt/scenario_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "pilotopt/errors.hpp"

namespace pilotopt {
namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(int line_no, const std::string& msg) {
    throw ConfigError("scenario line " + std::to_string(line_no) + ": " + msg);
}

double parse_real(std::string_view value, int line_no) {
    double out = 0.0;
    const char* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end) fail(line_no, "not a number: '" + std::string(value) + "'");
    return out;
}

int parse_int(std::string_view value, int line_no) {
    int out = 0;
    const char* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end) fail(line_no, "not an integer: '" + std::string(value) + "'");
    return out;
}

struct PendingBs {
    int line_no = 0;
    std::optional<double> distance_m;
    std::optional<double> gain_db;
    std::optional<double> interference_dbm;
};

BsLink finish_bs(const PendingBs& bs) {
    if (bs.distance_m.has_value() == bs.gain_db.has_value()) {
        fail(bs.line_no, "[bs] block needs exactly one of distance_m or channel_gain_db");
    }
    const double interference_w = bs.interference_dbm ? dbm_to_watt(*bs.interference_dbm) : 0.0;
    if (bs.distance_m) {
        if (!(*bs.distance_m > 0.0)) fail(bs.line_no, "distance_m must be positive");
        return link_from_distance(*bs.distance_m, interference_w);
    }
    BsLink link;
    link.channel_gain_linear = std::pow(10.0, *bs.gain_db / 10.0);
    link.interference_power_w = interference_w;
    return link;
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
    Scenario scenario;
    std::optional<int> declared_num_bs;
    std::set<std::string> seen_globals;
    std::vector<PendingBs> blocks;
    std::set<std::string> seen_in_block;

    const std::set<std::string> required = {"bandwidth_hz",           "noise_psd_dbm_per_hz",
                                            "coherence_symbols",      "max_tx_power_dbm",
                                            "static_circuit_power_w", "dynamic_circuit_w_per_bps"};

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;

        if (auto c = line.find_first_of("#;"); c != std::string_view::npos) line = line.substr(0, c);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line != "[bs]") fail(line_no, "unknown section " + std::string(line));
            blocks.push_back(PendingBs{line_no, {}, {}, {}});
            seen_in_block.clear();
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) fail(line_no, "expected key = value");
        const std::string key{trim(line.substr(0, eq))};
        const std::string_view value = trim(line.substr(eq + 1));
        if (value.empty()) fail(line_no, "missing value for " + key);

        if (!blocks.empty()) {
            PendingBs& bs = blocks.back();
            if (!seen_in_block.insert(key).second) fail(line_no, "duplicate key " + key);
            if (key == "distance_m") {
                bs.distance_m = parse_real(value, line_no);
            } else if (key == "channel_gain_db") {
                bs.gain_db = parse_real(value, line_no);
            } else if (key == "interference_dbm") {
                bs.interference_dbm = parse_real(value, line_no);
            } else {
                fail(line_no, "unknown [bs] key " + key);
            }
            continue;
        }

        if (!seen_globals.insert(key).second) fail(line_no, "duplicate key " + key);
        SystemConfig& cfg = scenario.config;
        if (key == "bandwidth_hz") {
            cfg.bandwidth_hz = parse_real(value, line_no);
        } else if (key == "noise_psd_dbm_per_hz") {
            cfg.noise_psd_dbm_per_hz = parse_real(value, line_no);
        } else if (key == "coherence_symbols") {
            cfg.coherence_symbols = parse_int(value, line_no);
        } else if (key == "max_tx_power_dbm") {
            cfg.max_tx_power_dbm = parse_real(value, line_no);
        } else if (key == "static_circuit_power_w") {
            cfg.static_circuit_power_w = parse_real(value, line_no);
        } else if (key == "dynamic_circuit_w_per_bps") {
            cfg.dynamic_circuit_w_per_bps = parse_real(value, line_no);
        } else if (key == "num_bs") {
            declared_num_bs = parse_int(value, line_no);
        } else {
            fail(line_no, "unknown key " + key);
        }
    }

    for (const auto& key : required) {
        if (!seen_globals.count(key)) throw ConfigError("scenario is missing required key " + key);
    }
    if (blocks.empty()) throw ConfigError("scenario has no [bs] blocks");
    for (const auto& bs : blocks) scenario.links.push_back(finish_bs(bs));

    scenario.config.num_bs = static_cast<int>(scenario.links.size());
    if (declared_num_bs && *declared_num_bs != scenario.config.num_bs) {
        throw ConfigError("num_bs = " + std::to_string(*declared_num_bs) + " but " +
                          std::to_string(scenario.config.num_bs) + " [bs] blocks present");
    }
    validate(scenario);
    return scenario;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

}  // namespace pilotopt
