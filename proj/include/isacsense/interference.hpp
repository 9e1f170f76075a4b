#pragma once

// Analytical models of the aggregated sensing interference seen by a
// receiver at the origin: exact cumulants of the guarded field (Campbell's
// theorem), the skewed stable law of the unguarded field, the
// truncated-stable law fitted to the guarded field by cumulant matching,
// and the strongest-interferer approximation.

#include <cmath>
#include <complex>
#include <string>
#include <string_view>
#include <variant>

#include "isacsense/errors.hpp"
#include "isacsense/params.hpp"
#include "isacsense/specials.hpp"

namespace isacsense {

/// Parameters (alpha, beta, c, mu) of a stable law, characteristic function
/// exp(j mu w - c |w|^alpha [1 - j beta sgn(w) phase(alpha, w)]).
struct StableParams {
    double alpha = 0.5;  // stability index, (0, 2]
    double beta = 1.0;   // skewness, [-1, 1]
    double c = 1.0;      // scale, > 0
    double mu = 0.0;     // location
};

/// Parameters of an exponentially tempered (truncated) stable law,
/// characteristic function exp(c Gamma(-alpha) [(g - jw)^alpha - g^alpha]).
struct TsdParams {
    double alpha = 0.5;  // inherited stability index, (0, 1)
    double c = 1.0;      // scale, > 0
    double g = 1.0;      // tempering rate, > 0
};

/// Strongest-interferer approximation: the aggregate is replaced by the
/// largest single term max w^(-alpha_c) g over the field beyond the guard.
struct SiaParams {
    double density = 1e-4;      // m^-2
    double alpha_c = 4.0;       // path-loss exponent
    double guard_radius = 0.0;  // m, >= 0
};

using InterferenceModel = std::variant<StableParams, TsdParams, SiaParams>;

inline std::string_view model_name(const InterferenceModel& m) {
    struct Visitor {
        const char* operator()(const StableParams&) const { return "stable"; }
        const char* operator()(const TsdParams&) const { return "tsd"; }
        const char* operator()(const SiaParams&) const { return "sia"; }
    };
    return std::visit(Visitor{}, m);
}

inline void ensure_valid(const StableParams& sp) {
    if (!(sp.alpha > 0.0 && sp.alpha <= 2.0)) throw config_error("stable: alpha must lie in (0, 2]");
    if (!(sp.beta >= -1.0 && sp.beta <= 1.0)) throw config_error("stable: beta must lie in [-1, 1]");
    if (!(sp.c > 0.0)) throw config_error("stable: scale c must be positive");
}

inline void ensure_valid(const TsdParams& tp) {
    if (!(tp.alpha > 0.0 && tp.alpha < 1.0)) throw config_error("tsd: alpha must lie in (0, 1)");
    if (!(tp.c > 0.0)) throw config_error("tsd: scale c must be positive");
    if (!(tp.g > 0.0)) throw config_error("tsd: tempering rate g must be positive");
}

/// n-th cumulant of the guarded interference (all interferers beyond r_c):
/// kappa(n) = 2 pi lambda Gamma(1+n) r_c^(2 - n alpha_c) / (n alpha_c - 2).
/// kappa(1) is the mean interference used by the threshold chain.
inline double campbell_cumulant(int n, const NetworkParams& p, double r_c) {
    if (n < 1) throw std::domain_error("campbell_cumulant: order must be positive");
    if (!(r_c > 0.0)) throw std::domain_error("campbell_cumulant: guard radius must be positive");
    const double denom = n * p.alpha_c - 2.0;
    if (!(denom > 0.0)) {
        throw std::domain_error("campbell_cumulant: order " + std::to_string(n) + " diverges at alpha_c = " +
                                std::to_string(p.alpha_c) + " (need n*alpha_c > 2)");
    }
    return 2.0 * kPi * p.lambda_b * gamma_fn(1.0 + n) * std::pow(r_c, 2.0 - n * p.alpha_c) / denom;
}

/// Stable law of the unguarded aggregate: alpha = 2/alpha_c, fully skewed,
/// scale lambda_b * pi / sinc_n(1/alpha_c), zero location.
inline StableParams stable_params_noncoop(const NetworkParams& p) {
    ensure_valid(p);
    StableParams sp;
    sp.alpha = 2.0 / p.alpha_c;
    sp.beta = 1.0;
    sp.c = p.lambda_b * kPi / sinc_n(1.0 / p.alpha_c);
    sp.mu = 0.0;
    return sp;
}

/// Characteristic function of a stable law, both phase branches.
inline std::complex<double> stable_cf(const StableParams& sp, double omega) {
    if (omega == 0.0) return {1.0, 0.0};
    const double aw = std::fabs(omega);
    const double sgn = omega > 0.0 ? 1.0 : -1.0;
    const double phase = sp.alpha == 1.0 ? -(2.0 / kPi) * std::log(aw) : std::tan(kPi * sp.alpha / 2.0);
    const std::complex<double> exponent(-sp.c * std::pow(aw, sp.alpha),
                                        sp.mu * omega + sp.c * std::pow(aw, sp.alpha) * sp.beta * sgn * phase);
    return std::exp(exponent);
}

/// Fit the tempered law to the guarded field by matching its first two
/// cumulants to campbell_cumulant(1), campbell_cumulant(2); the stability
/// index stays 2/alpha_c.
inline TsdParams tsd_params_coop(const NetworkParams& p, double r_c) {
    ensure_valid(p);
    const double k1 = campbell_cumulant(1, p, r_c);
    const double k2 = campbell_cumulant(2, p, r_c);
    TsdParams tp;
    tp.alpha = 2.0 / p.alpha_c;
    tp.g = k1 * (1.0 - tp.alpha) / k2;
    tp.c = -k1 / (gamma_fn(-tp.alpha) * tp.alpha * std::pow(tp.g, tp.alpha - 1.0));
    return tp;
}

/// Characteristic function of the tempered law; (g - jw)^alpha on the
/// principal branch, which g > 0 keeps away from the cut.
inline std::complex<double> tsd_cf(const TsdParams& tp, double omega) {
    const std::complex<double> base(tp.g, -omega);
    const std::complex<double> bracket = std::pow(base, tp.alpha) - std::pow(tp.g, tp.alpha);
    return std::exp(tp.c * gamma_fn(-tp.alpha) * bracket);
}

/// Closed-form cumulants of the tempered law:
/// kappa(n) = (-1)^n c Gamma(-alpha) g^(alpha - n) prod_{i<n} (alpha - i).
inline double tsd_cumulant(const TsdParams& tp, int n) {
    if (n < 1) throw std::domain_error("tsd_cumulant: order must be positive");
    double prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= tp.alpha - i;
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return sign * tp.c * gamma_fn(-tp.alpha) * std::pow(tp.g, tp.alpha - n) * prod;
}

/// CCDF of the strongest guarded interference term:
/// P{max_i w_i^(-alpha_c) g_i > eta}
///   = 1 - exp(-(2 pi lambda / alpha_c) eta^(-2/alpha_c)
///             Gamma_u(2/alpha_c, eta * r_c^alpha_c)).
/// Derivation: a point at radius w with an Exp(1) mark beats eta with
/// probability exp(-eta w^alpha_c); integrating that thinning over the
/// field beyond r_c gives the void-probability exponent above.
inline double sia_ccdf(double eta, const SiaParams& sia) {
    if (!(eta > 0.0)) throw std::domain_error("sia_ccdf: threshold must be positive");
    if (!(sia.alpha_c > 2.0)) throw config_error("sia: alpha_c must exceed 2");
    if (!(sia.density > 0.0)) throw config_error("sia: density must be positive");
    if (sia.guard_radius < 0.0) throw config_error("sia: guard radius must be non-negative");
    const double s = 2.0 / sia.alpha_c;
    const double x0 = eta * std::pow(sia.guard_radius, sia.alpha_c);
    const double mean_exceeders =
        (2.0 * kPi * sia.density / sia.alpha_c) * std::pow(eta, -s) * upper_incomplete_gamma(s, x0);
    return -std::expm1(-mean_exceeders);
}

inline double sia_ccdf(double eta, double density, double alpha_c, double guard_radius) {
    return sia_ccdf(eta, SiaParams{density, alpha_c, guard_radius});
}

}  // namespace isacsense
