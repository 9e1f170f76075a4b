#pragma once

// The detection-threshold pipeline: a frame-level false-alarm budget is
// split across the N*M resolution bins of a frame, the per-bin budget is
// inverted through an interference model into the normalized threshold eta,
// and eta is converted to the raw power threshold and to the SIR threshold
// t_r = eta / E{I}.

#include <cmath>
#include <optional>
#include <string>

#include "isacsense/cf_inversion.hpp"
#include "isacsense/errors.hpp"
#include "isacsense/interference.hpp"
#include "isacsense/params.hpp"

namespace isacsense {

struct CfarResult {
    double p_frame = 0.0;
    double p_bin = 0.0;
    double eta = 0.0;        // normalized interference threshold
    double eta_prime = 0.0;  // raw received-power threshold, W
    // Defined only for guarded (finite-mean) interference; the unguarded
    // stable law has no mean, so these stay empty for it.
    std::optional<double> mean_interference;
    std::optional<double> t_r;
};

/// Per-bin false-alarm probability giving a frame-level probability
/// p_frame over N*M independent bins: 1 - (1 - p_frame)^(1/(NM)),
/// evaluated in log space so tiny probabilities survive.
inline double frame_to_bin(double p_frame, int n_subcarriers, int m_symbols) {
    if (!(p_frame > 0.0 && p_frame < 1.0)) {
        throw config_error("frame_to_bin: p_frame must lie inside (0, 1), got " + std::to_string(p_frame));
    }
    if (n_subcarriers < 1 || m_symbols < 1) throw config_error("frame_to_bin: N and M must be positive");
    const double bins = static_cast<double>(n_subcarriers) * m_symbols;
    return -std::expm1(std::log1p(-p_frame) / bins);
}

/// Frame-level false-alarm probability from a per-bin one:
/// 1 - (1 - p_bin)^(NM), log-space evaluation.
inline double bin_to_frame(double p_bin, int n_subcarriers, int m_symbols) {
    if (!(p_bin >= 0.0 && p_bin <= 1.0)) {
        throw config_error("bin_to_frame: p_bin must lie in [0, 1], got " + std::to_string(p_bin));
    }
    if (n_subcarriers < 1 || m_symbols < 1) throw config_error("bin_to_frame: N and M must be positive");
    if (p_bin == 0.0) return 0.0;
    if (p_bin == 1.0) return 1.0;
    const double bins = static_cast<double>(n_subcarriers) * m_symbols;
    return -std::expm1(bins * std::log1p(-p_bin));
}

/// Resolve the full threshold chain for a frame false-alarm budget.
///
/// eta is the model's upper quantile at the per-bin probability;
/// eta_prime = eta * P_t * lambda_c^2 / (4 pi)^2 undoes the processing
/// normalization; the mean interference is the first cumulant of the
/// guarded field at radius r_c and t_r = eta / mean.
///
/// Under the stable (unguarded) model the mean diverges, so t_r does not
/// exist: with with_sir_threshold the call throws undefined_error, without
/// it the result simply leaves mean_interference and t_r empty.
inline CfarResult resolve_cfar(double p_frame, const NetworkParams& params, const InterferenceModel& model,
                               double r_c, bool with_sir_threshold = true, const InversionConfig& inv = {}) {
    ensure_valid(params);
    CfarResult out;
    out.p_frame = p_frame;
    out.p_bin = frame_to_bin(p_frame, params.num_subcarriers, params.num_symbols);
    out.eta = model_quantile(model, out.p_bin, inv);
    const double lc = params.wavelength();
    out.eta_prime = out.eta * params.p_t * lc * lc / (16.0 * kPi * kPi);
    if (std::holds_alternative<StableParams>(model)) {
        if (with_sir_threshold) {
            throw undefined_error(
                "resolve_cfar: the unguarded stable interference has no finite mean, so the SIR "
                "threshold t_r = eta/E{I} is undefined; use a guarded model (tsd, sia) or request "
                "the eta-only chain");
        }
        return out;
    }
    out.mean_interference = campbell_cumulant(1, params, r_c);
    out.t_r = out.eta / *out.mean_interference;
    return out;
}

}  // namespace isacsense
