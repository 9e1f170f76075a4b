#pragma once

#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "isacsense/cf_inversion.hpp"
#include "isacsense/errors.hpp"
#include "isacsense/mc.hpp"
#include "isacsense/params.hpp"

namespace isacsense {

/// Everything a run needs besides the seed and the subcommand arguments.
/// Seeds deliberately have no config key: they arrive on the command line
/// so that a config file can be shared without pinning anyone's RNG.
struct Config {
    NetworkParams params;
    McConfig mc;
    InversionConfig inversion;
};

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string guard_mode_name(GuardMode mode) {
    return mode == GuardMode::FixedMean ? "fixed_mean" : "per_realization";
}

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline double parse_real(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double out = 0.0;
    try {
        out = std::stod(value, &used);
    } catch (const std::exception&) {
        throw config_error(key + ": cannot parse '" + value + "' as a number");
    }
    if (used != value.size()) throw config_error(key + ": trailing junk in '" + value + "'");
    return out;
}

inline long long parse_int(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    long long out = 0;
    try {
        out = std::stoll(value, &used);
    } catch (const std::exception&) {
        throw config_error(key + ": cannot parse '" + value + "' as an integer");
    }
    if (used != value.size()) throw config_error(key + ": trailing junk in '" + value + "'");
    return out;
}

}  // namespace detail

/// Applies one key=value pair. Unknown keys are an error so that typos do
/// not silently fall back to defaults.
inline void set_key(Config& cfg, const std::string& key, const std::string& value) {
    using detail::parse_int;
    using detail::parse_real;
    NetworkParams& p = cfg.params;
    if (key == "lambda_B") {
        p.lambda_b = parse_real(key, value);
    } else if (key == "alpha_c") {
        p.alpha_c = parse_real(key, value);
    } else if (key == "alpha_r") {
        p.alpha_r = parse_real(key, value);
    } else if (key == "xi") {
        p.xi = parse_real(key, value);
    } else if (key == "N_t") {
        p.n_t = static_cast<int>(parse_int(key, value));
    } else if (key == "N_r") {
        p.n_r = static_cast<int>(parse_int(key, value));
    } else if (key == "h_B") {
        p.h_b = parse_real(key, value);
    } else if (key == "h_U") {
        p.h_u = parse_real(key, value);
    } else if (key == "h_T") {
        p.h_t = parse_real(key, value);
    } else if (key == "N") {
        p.num_subcarriers = static_cast<int>(parse_int(key, value));
    } else if (key == "M") {
        p.num_symbols = static_cast<int>(parse_int(key, value));
    } else if (key == "K") {
        p.k_factor = static_cast<int>(parse_int(key, value));
    } else if (key == "N_c") {
        p.n_c = static_cast<int>(parse_int(key, value));
    } else if (key == "P_t") {
        p.p_t = parse_real(key, value);
    } else if (key == "f_c") {
        p.f_c = parse_real(key, value);
    } else if (key == "mc.trials") {
        const long long v = parse_int(key, value);
        if (v < 0) throw config_error("mc.trials: must be non-negative");
        cfg.mc.trials = static_cast<std::size_t>(v);
    } else if (key == "mc.window_factor") {
        cfg.mc.window_factor = parse_real(key, value);
    } else if (key == "mc.guard_mode") {
        if (value == "fixed_mean") {
            cfg.mc.guard_mode = GuardMode::FixedMean;
        } else if (value == "per_realization") {
            cfg.mc.guard_mode = GuardMode::PerRealization;
        } else {
            throw config_error("mc.guard_mode: expected fixed_mean or per_realization, got '" + value + "'");
        }
    } else if (key == "mc.floor_factor") {
        cfg.mc.floor_factor = parse_real(key, value);
    } else if (key == "mc.split_factor") {
        cfg.mc.split_factor = parse_real(key, value);
    } else if (key == "mc.chunk") {
        const long long v = parse_int(key, value);
        if (v < 1) throw config_error("mc.chunk: must be at least 1");
        cfg.mc.chunk = static_cast<std::size_t>(v);
    } else if (key == "mc.threads") {
        const long long v = parse_int(key, value);
        if (v < 0) throw config_error("mc.threads: must be non-negative");
        cfg.mc.threads = static_cast<unsigned>(v);
    } else if (key == "mc.max_expected_exact") {
        cfg.mc.max_expected_exact = parse_real(key, value);
    } else if (key == "inversion.quad_rel_tol") {
        cfg.inversion.quad_rel_tol = parse_real(key, value);
    } else if (key == "inversion.max_subdivisions") {
        const long long v = parse_int(key, value);
        if (v < 1) throw config_error("inversion.max_subdivisions: must be at least 1");
        cfg.inversion.max_subdivisions = static_cast<std::size_t>(v);
    } else if (key == "inversion.quantile_rel_tol") {
        cfg.inversion.quantile_rel_tol = parse_real(key, value);
    } else if (key == "inversion.omega_eps") {
        cfg.inversion.omega_eps = parse_real(key, value);
    } else if (key == "inversion.max_chunks") {
        const long long v = parse_int(key, value);
        if (v < 1) throw config_error("inversion.max_chunks: must be at least 1");
        cfg.inversion.max_chunks = static_cast<std::size_t>(v);
    } else {
        throw config_error("unknown config key '" + key + "'");
    }
}

/// Flat key=value text. Blank lines and lines starting with '#' are
/// ignored; everything else must contain '='. Later keys override earlier
/// ones, so a file can start from an include-by-concatenation base.
inline Config parse_config(std::istream& in, const std::string& source_name = "<config>") {
    Config cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw config_error(source_name + ":" + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = detail::trim(t.substr(0, eq));
        const std::string value = detail::trim(t.substr(eq + 1));
        if (key.empty()) {
            throw config_error(source_name + ":" + std::to_string(line_no) + ": empty key");
        }
        try {
            set_key(cfg, key, value);
        } catch (const config_error& e) {
            throw config_error(source_name + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return cfg;
}

inline Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    return parse_config(in, path);
}

/// Canonical serialization order; used by the manifest so that replay
/// compares byte-identical resolved configurations.
inline std::vector<std::pair<std::string, std::string>> config_items(const Config& cfg) {
    const NetworkParams& p = cfg.params;
    std::vector<std::pair<std::string, std::string>> items;
    items.emplace_back("lambda_B", format_double(p.lambda_b));
    items.emplace_back("alpha_c", format_double(p.alpha_c));
    items.emplace_back("alpha_r", format_double(p.alpha_r));
    items.emplace_back("xi", format_double(p.xi));
    items.emplace_back("N_t", std::to_string(p.n_t));
    items.emplace_back("N_r", std::to_string(p.n_r));
    items.emplace_back("h_B", format_double(p.h_b));
    items.emplace_back("h_U", format_double(p.h_u));
    items.emplace_back("h_T", format_double(p.h_t));
    items.emplace_back("N", std::to_string(p.num_subcarriers));
    items.emplace_back("M", std::to_string(p.num_symbols));
    items.emplace_back("K", std::to_string(p.k_factor));
    items.emplace_back("N_c", std::to_string(p.n_c));
    items.emplace_back("P_t", format_double(p.p_t));
    items.emplace_back("f_c", format_double(p.f_c));
    items.emplace_back("mc.trials", std::to_string(cfg.mc.trials));
    items.emplace_back("mc.window_factor", format_double(cfg.mc.window_factor));
    items.emplace_back("mc.guard_mode", guard_mode_name(cfg.mc.guard_mode));
    items.emplace_back("mc.floor_factor", format_double(cfg.mc.floor_factor));
    items.emplace_back("mc.split_factor", format_double(cfg.mc.split_factor));
    items.emplace_back("mc.chunk", std::to_string(cfg.mc.chunk));
    items.emplace_back("mc.threads", std::to_string(cfg.mc.threads));
    items.emplace_back("mc.max_expected_exact", format_double(cfg.mc.max_expected_exact));
    items.emplace_back("inversion.quad_rel_tol", format_double(cfg.inversion.quad_rel_tol));
    items.emplace_back("inversion.max_subdivisions", std::to_string(cfg.inversion.max_subdivisions));
    items.emplace_back("inversion.quantile_rel_tol", format_double(cfg.inversion.quantile_rel_tol));
    items.emplace_back("inversion.omega_eps", format_double(cfg.inversion.omega_eps));
    items.emplace_back("inversion.max_chunks", std::to_string(cfg.inversion.max_chunks));
    return items;
}

}  // namespace isacsense
