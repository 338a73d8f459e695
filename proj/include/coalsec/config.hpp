/// \file config.hpp
/// Simulation parameters, validation, and the plain-text config format.

#ifndef COALSEC_CONFIG_HPP
#define COALSEC_CONFIG_HPP

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace coalsec {

/// Raised by config parsing/validation; message names the offending key.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

inline double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// All physical and algorithmic parameters of a simulation instance.
/// The core works in linear units throughout: meters, watts, bits/s/Hz.
/// dBm/dB inputs are converted once, at config-parse time.
struct SimConfig {
    int n_users = 15;
    int n_destinations = 2;
    int n_eavesdroppers = 2;       ///< must be >= 2 (multi-eavesdropper model)
    double area_side = 2500.0;     ///< meters, square deployment area
    double slot_power = 0.01;      ///< watts, per-slot transmit budget
    double noise_power = 1e-12;    ///< watts (default: -90 dBm)
    double exchange_snr = 10.0;    ///< linear target SNR for information exchange
    double pathloss_exp = 3.0;     ///< >= 2
    std::uint64_t rng_seed = 1;
    double singular_threshold = 1e12;  ///< Gram condition-number bound for feasibility
    double numeric_tol = 1e-9;

    // Engine guards, all configurable.
    int max_sweeps = 10000;            ///< merge/split sweeps before declaring non-termination
    int max_split_size = 12;           ///< largest coalition split enumeration will accept
    std::uint64_t max_union_subsets = 1u << 20;  ///< coalition-subset enumeration cap
    int max_dc_users = 12;             ///< largest N for exhaustive partition enumeration

    void validate() const {
        auto positive = [](double v, const char* key) {
            if (!(v > 0.0) || !std::isfinite(v))
                throw config_error(std::string("config key '") + key + "' must be positive");
        };
        if (n_users < 1) throw config_error("config key 'n_users' must be positive");
        if (n_destinations < 1) throw config_error("config key 'n_destinations' must be positive");
        if (n_eavesdroppers < 2)
            throw config_error("config key 'n_eavesdroppers' must be at least 2");
        positive(area_side, "area_side");
        positive(slot_power, "slot_power");
        positive(noise_power, "noise_power");
        positive(exchange_snr, "exchange_snr");
        positive(pathloss_exp, "pathloss_exp");
        if (pathloss_exp < 2.0) throw config_error("config key 'pathloss_exp' must be >= 2");
        positive(singular_threshold, "singular_threshold");
        positive(numeric_tol, "numeric_tol");
        if (max_sweeps < 1) throw config_error("config key 'max_sweeps' must be positive");
        if (max_split_size < 1) throw config_error("config key 'max_split_size' must be positive");
        if (max_dc_users < 1) throw config_error("config key 'max_dc_users' must be positive");
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const char* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

inline double parse_number(const std::string& value, const std::string& key) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size())
            throw config_error("config key '" + key + "': trailing characters in '" + value + "'");
        return v;
    } catch (const config_error&) {
        throw;
    } catch (const std::exception&) {
        throw config_error("config key '" + key + "': cannot parse number '" + value + "'");
    }
}

}  // namespace detail

/// Applies one `key = value` assignment to a config. Accepts every SimConfig
/// field by name plus the converted forms `noise_dbm` and `exchange_snr_db`.
inline void apply_config_entry(SimConfig& cfg, const std::string& key, const std::string& value) {
    using detail::parse_number;
    if (key == "n_users") cfg.n_users = static_cast<int>(parse_number(value, key));
    else if (key == "n_destinations") cfg.n_destinations = static_cast<int>(parse_number(value, key));
    else if (key == "n_eavesdroppers") cfg.n_eavesdroppers = static_cast<int>(parse_number(value, key));
    else if (key == "area_side") cfg.area_side = parse_number(value, key);
    else if (key == "slot_power") cfg.slot_power = parse_number(value, key);
    else if (key == "noise_power") cfg.noise_power = parse_number(value, key);
    else if (key == "noise_dbm") cfg.noise_power = dbm_to_watts(parse_number(value, key));
    else if (key == "exchange_snr") cfg.exchange_snr = parse_number(value, key);
    else if (key == "exchange_snr_db") cfg.exchange_snr = db_to_linear(parse_number(value, key));
    else if (key == "pathloss_exp") cfg.pathloss_exp = parse_number(value, key);
    else if (key == "rng_seed") cfg.rng_seed = static_cast<std::uint64_t>(parse_number(value, key));
    else if (key == "singular_threshold") cfg.singular_threshold = parse_number(value, key);
    else if (key == "numeric_tol") cfg.numeric_tol = parse_number(value, key);
    else if (key == "max_sweeps") cfg.max_sweeps = static_cast<int>(parse_number(value, key));
    else if (key == "max_split_size") cfg.max_split_size = static_cast<int>(parse_number(value, key));
    else if (key == "max_union_subsets") cfg.max_union_subsets = static_cast<std::uint64_t>(parse_number(value, key));
    else if (key == "max_dc_users") cfg.max_dc_users = static_cast<int>(parse_number(value, key));
    else throw config_error("unknown config key '" + key + "'");
}

/// Parses a `key = value` config file (# comments, blank lines allowed).
/// Missing keys keep their defaults; an empty file yields the default config.
inline SimConfig parse_config_stream(std::istream& in) {
    SimConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config line " + std::to_string(lineno) + ": expected 'key = value'");
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw config_error("config line " + std::to_string(lineno) + ": expected 'key = value'");
        apply_config_entry(cfg, key, value);
    }
    cfg.validate();
    return cfg;
}

inline SimConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    return parse_config_stream(in);
}

}  // namespace coalsec

#endif  // COALSEC_CONFIG_HPP
