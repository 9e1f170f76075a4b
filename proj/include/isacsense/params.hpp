#pragma once

// Network model parameters and the handful of deterministic constants
// derived from them. All values are SI internally (m, m^-2, Hz, W); any
// per-km^2 convenience conversion happens at the CLI boundary only.

#include <cmath>
#include <string>
#include <vector>

#include "isacsense/errors.hpp"
#include "isacsense/specials.hpp"

namespace isacsense {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

/// Physical and deployment constants of the air-ground network model.
///
/// Conventions: base stations form a planar homogeneous Poisson process of
/// density lambda_b; interference decays with exponent alpha_c over the
/// horizontal distance; the sensing echo decays with exponent alpha_r over
/// the 3D link distance (round trip, so d^(-2 alpha_r)); each base station
/// cooperates with its n_c nearest neighbors, which silences all
/// interferers closer than the (n_c + 2)-th nearest station.
struct NetworkParams {
    double lambda_b = 1e-4;   // BS density, m^-2
    double alpha_c = 4.0;     // interference path-loss exponent
    double alpha_r = 2.0;     // sensing path-loss exponent
    double xi = 1.0;          // radar cross-section, m^2
    int n_t = 16;             // transmit antennas
    int n_r = 16;             // receive antennas
    double h_b = 25.0;        // BS height, m
    double h_u = 1.5;         // user height, m
    double h_t = 100.0;       // sensing-target height, m
    int num_subcarriers = 64; // N: subcarriers per frame
    int num_symbols = 16;     // M: symbols per frame
    int k_factor = 1;         // targets sensed per BS
    int n_c = 3;              // cooperating neighbor count
    double p_t = 1.0;         // transmit power, W
    double f_c = 3.5e9;       // carrier frequency, Hz

    /// Vertical offset of the sensing link, m.
    double delta_h() const { return h_t - h_b; }

    /// Carrier wavelength, m. Always derived, never stored.
    double wavelength() const { return kSpeedOfLight / f_c; }

    /// Processing gain of one frame (subcarriers x symbols).
    double processing_gain() const { return static_cast<double>(num_subcarriers) * num_symbols; }
};

/// Collect every violated invariant; empty means the parameter set is usable.
inline std::vector<std::string> validate(const NetworkParams& p) {
    std::vector<std::string> issues;
    auto require = [&issues](bool ok, const std::string& msg) {
        if (!ok) issues.push_back(msg);
    };
    require(p.lambda_b > 0.0, "lambda_B must be positive");
    require(p.alpha_c > 2.0, "alpha_c must exceed 2 (interference moments diverge otherwise)");
    require(p.alpha_r > 0.0, "alpha_r must be positive");
    require(p.xi > 0.0, "xi must be positive");
    require(p.n_t >= 1, "N_t must be at least 1");
    require(p.n_r >= 1, "N_r must be at least 1");
    require(p.h_t > p.h_b, "h_T > h_B required (target above BS)");
    require(p.h_b > p.h_u, "h_B > h_U required (BS above user)");
    require(p.num_subcarriers >= 1, "N must be at least 1");
    require(p.num_symbols >= 1, "M must be at least 1");
    require(p.k_factor >= 1, "K must be at least 1");
    require(p.n_c >= 0, "N_c must be non-negative");
    require(p.p_t > 0.0, "P_t must be positive");
    require(p.f_c > 0.0, "f_c must be positive");
    return issues;
}

/// Throwing wrapper around validate for call sites that need a hard gate.
inline void ensure_valid(const NetworkParams& p) {
    const auto issues = validate(p);
    if (issues.empty()) return;
    std::string msg = "invalid parameters:";
    for (const auto& s : issues) msg += "\n  - " + s;
    throw config_error(msg);
}

/// Deterministic numerator constant of the sensing SIR: xi * N_r / (4 pi).
inline double sir_constant(const NetworkParams& p) { return p.xi * p.n_r / (4.0 * kPi); }

/// 3D sensing link distance for horizontal separation r_1.
inline double link_distance(double r_1, const NetworkParams& p) {
    return std::sqrt(r_1 * r_1 + p.delta_h() * p.delta_h());
}

}  // namespace isacsense
