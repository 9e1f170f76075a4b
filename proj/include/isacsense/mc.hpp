#pragma once

// Monte Carlo counterpart of every analytical expression in the library:
// guarded/unguarded shot-noise interference draws, empirical CCDFs and
// characteristic functions, false-alarm rates, strongest-term exceedance,
// and the end-to-end detection-density estimator.
//
// Determinism contract: trials are split into fixed-size chunks; chunk i is
// driven by Rng(seed, i) and produces a partial result; partials are merged
// in chunk order. Results are therefore bit-identical for any thread count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "isacsense/errors.hpp"
#include "isacsense/interference.hpp"
#include "isacsense/params.hpp"
#include "isacsense/point_field.hpp"
#include "isacsense/rng.hpp"

namespace isacsense {

/// Whether the cooperative guard radius is frozen at its mean or redrawn as
/// the (N_c+2)-th nearest distance in every trial. FixedMean matches the
/// analytical expressions, which use the expectation; PerRealization is the
/// physically exact network.
enum class GuardMode { FixedMean, PerRealization };

struct McConfig {
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 0;
    double window_factor = 1e3;  // outer radius = window_factor / sqrt(lambda_b)
    GuardMode guard_mode = GuardMode::FixedMean;
    double floor_factor = 1e-6;  // unguarded inner cutoff = floor_factor / sqrt(lambda_b)
    double split_factor = 0.0;   // exact-sampling radius factor; 0 picks a default
    std::uint64_t chunk = 8192;  // trials per deterministic chunk
    unsigned threads = 0;        // 0 = hardware concurrency
    double max_expected_exact = 1e7;
};

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

inline void ensure_valid(const McConfig& cfg) {
    if (cfg.trials < 1000) throw config_error("mc: trials must be at least 1000");
    if (!(cfg.window_factor >= 10.0)) throw config_error("mc: window_factor must be at least 10");
    if (!(cfg.floor_factor > 0.0)) throw config_error("mc: floor_factor must be positive");
    if (cfg.chunk < 1) throw config_error("mc: chunk must be positive");
}

namespace detail {

// Run chunk_fn(chunk_index, trials_in_chunk, rng) over all chunks and
// return the partials in chunk order. Threads claim chunks from an atomic
// counter; determinism comes from per-chunk seeding, not scheduling.
template <typename Partial, typename ChunkFn>
std::vector<Partial> run_chunks(const McConfig& cfg, const ChunkFn& chunk_fn) {
    const std::uint64_t chunk = cfg.chunk;
    const std::uint64_t n_chunks = (cfg.trials + chunk - 1) / chunk;
    std::vector<Partial> partials(static_cast<std::size_t>(n_chunks));
    const auto run_one = [&](std::uint64_t i) {
        const std::uint64_t lo = i * chunk;
        const std::uint64_t n = std::min(chunk, cfg.trials - lo);
        Rng rng(cfg.seed, i);
        partials[static_cast<std::size_t>(i)] = chunk_fn(i, n, rng);
    };
    unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    if (threads > n_chunks) threads = static_cast<unsigned>(n_chunks);
    if (threads <= 1) {
        for (std::uint64_t i = 0; i < n_chunks; ++i) run_one(i);
        return partials;
    }
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::uint64_t i = next.fetch_add(1);
                if (i >= n_chunks) return;
                run_one(i);
            }
        });
    }
    for (auto& th : pool) th.join();
    return partials;
}

// Mean (n=1) or variance (n=2) contribution of the shot noise restricted
// to the annulus [a, b].
inline double partial_cumulant(int n, double lambda, double alpha_c, double a, double b) {
    const double e = 2.0 - n * alpha_c;
    return 2.0 * kPi * lambda * gamma_fn(1.0 + n) * (std::pow(a, e) - std::pow(b, e)) / (n * alpha_c - 2.0);
}

// Radius separating exact point-by-point sampling from the Gaussian
// surrogate of the far field. Small windows are sampled fully exactly; the
// surrogate region keeps mean/sd ratios above ~20, so its truncation at
// zero is immaterial and only cumulants beyond the second are distorted,
// far below the tolerances used anywhere in this library.
inline double split_radius(double lambda, double alpha_c, double r_in, double r_out, double split_factor) {
    const double expected_total = lambda * kPi * (r_out * r_out - r_in * r_in);
    if (expected_total <= 5000.0) return r_out;
    const double c0 = split_factor > 0.0 ? split_factor : (alpha_c < 3.0 ? 15.0 : 10.0);
    const double split = std::max(c0 / std::sqrt(lambda), 4.0 * r_in);
    return std::min(split, r_out);
}

// One draw of sum_i w_i^(-alpha_c) g_i, g_i ~ Exp(1), over a Poisson field
// on [r_in, r_out]: exact points inside r_split, Gaussian beyond.
inline double draw_shot_noise(double lambda, double alpha_c, double r_in, double r_split, double r_out,
                              double max_expected_exact, Rng& rng) {
    double total = 0.0;
    const double split = std::min(r_split, r_out);
    if (split > r_in) {
        const double lo2 = r_in * r_in;
        const double span2 = split * split - lo2;
        const double mean_count = lambda * kPi * span2;
        if (mean_count > max_expected_exact) {
            throw numeric_error("draw_shot_noise: expected exact-region count " + std::to_string(mean_count) +
                                " exceeds the cap; lower split_factor or window_factor");
        }
        const std::uint64_t n = rng.poisson(mean_count);
        if (alpha_c == 4.0) {
            for (std::uint64_t i = 0; i < n; ++i) {
                const double w2 = lo2 + rng.u01() * span2;
                total += rng.exp1() / (w2 * w2);
            }
        } else {
            const double half_exp = -0.5 * alpha_c;
            for (std::uint64_t i = 0; i < n; ++i) {
                const double w2 = lo2 + rng.u01() * span2;
                total += rng.exp1() * std::pow(w2, half_exp);
            }
        }
    }
    if (r_out > split) {
        const double m = partial_cumulant(1, lambda, alpha_c, split, r_out);
        const double v = partial_cumulant(2, lambda, alpha_c, split, r_out);
        total += m + std::sqrt(v) * rng.normal();
    }
    return total;
}

struct GuardPlan {
    bool cooperative = false;
    GuardMode mode = GuardMode::FixedMean;
    int order = 0;          // N_c + 2 for cooperative fields
    double fixed = 0.0;     // FixedMean guard or unguarded floor, m
};

inline GuardPlan make_guard_plan(const NetworkParams& p, bool cooperative, const McConfig& cfg) {
    GuardPlan plan;
    plan.cooperative = cooperative;
    plan.mode = cfg.guard_mode;
    plan.order = p.n_c + 2;
    if (!cooperative) {
        plan.fixed = cfg.floor_factor / std::sqrt(p.lambda_b);
    } else if (cfg.guard_mode == GuardMode::FixedMean) {
        plan.fixed = expected_kth_distance(p.lambda_b, plan.order);
    }
    return plan;
}

inline double draw_guard(const GuardPlan& plan, double lambda, Rng& rng) {
    if (!plan.cooperative || plan.mode == GuardMode::FixedMean) return plan.fixed;
    return draw_kth_nearest(lambda, plan.order, rng);
}

}  // namespace detail

/// Draws of the aggregated interference: cooperative fields start at the
/// guard radius (mean or per-trial), unguarded ones at the tiny floor that
/// keeps w^(-alpha_c) finite. A non-negative guard_override pins the inner
/// radius explicitly (clamped up to the sampling floor so the integrand
/// stays finite). Chunk-deterministic; element order is trial order.
inline std::vector<double> sample_interference(const NetworkParams& p, bool cooperative, const McConfig& cfg,
                                               double guard_override = -1.0) {
    ensure_valid(p);
    ensure_valid(cfg);
    const double lambda = p.lambda_b;
    const double r_out = cfg.window_factor / std::sqrt(lambda);
    detail::GuardPlan plan = detail::make_guard_plan(p, cooperative, cfg);
    if (guard_override >= 0.0) {
        plan.cooperative = true;
        plan.mode = GuardMode::FixedMean;
        plan.fixed = std::max(guard_override, cfg.floor_factor / std::sqrt(lambda));
    }
    auto chunk_fn = [&](std::uint64_t, std::uint64_t n, Rng& rng) {
        std::vector<double> draws(static_cast<std::size_t>(n));
        for (auto& d : draws) {
            const double guard = detail::draw_guard(plan, lambda, rng);
            const double split = detail::split_radius(lambda, p.alpha_c, guard, r_out, cfg.split_factor);
            d = detail::draw_shot_noise(lambda, p.alpha_c, guard, split, r_out, cfg.max_expected_exact, rng);
        }
        return draws;
    };
    const auto partials = detail::run_chunks<std::vector<double>>(cfg, chunk_fn);
    std::vector<double> draws;
    draws.reserve(static_cast<std::size_t>(cfg.trials));
    for (const auto& part : partials) draws.insert(draws.end(), part.begin(), part.end());
    return draws;
}

/// Fraction of draws exceeding each grid point. The grid must be sorted
/// ascending; the result is a non-increasing curve in [0, 1].
inline std::vector<double> empirical_ccdf(const std::vector<double>& draws, const std::vector<double>& grid) {
    if (draws.empty()) throw std::domain_error("empirical_ccdf: no draws");
    if (!std::is_sorted(grid.begin(), grid.end())) throw std::domain_error("empirical_ccdf: grid must be ascending");
    std::vector<double> sorted(draws);
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> out(grid.size());
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto it = std::upper_bound(sorted.begin(), sorted.end(), grid[i]);
        out[i] = static_cast<double>(sorted.end() - it) / n;
    }
    return out;
}

/// Sup-norm gap between an empirical curve and a model CCDF on one grid.
template <typename ModelCcdf>
double ks_distance(const std::vector<double>& grid, const std::vector<double>& empirical, const ModelCcdf& model) {
    if (grid.size() != empirical.size()) throw std::domain_error("ks_distance: grid/curve size mismatch");
    if (grid.empty()) throw std::domain_error("ks_distance: empty grid");
    double sup = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        sup = std::max(sup, std::fabs(empirical[i] - model(grid[i])));
    }
    return sup;
}

/// Empirical false-alarm probability P{I > eta} under either field type.
inline McEstimate mc_false_alarm_rate(const NetworkParams& p, double eta, bool cooperative, const McConfig& cfg) {
    ensure_valid(p);
    ensure_valid(cfg);
    if (!(eta > 0.0)) throw std::domain_error("mc_false_alarm_rate: eta must be positive");
    const double lambda = p.lambda_b;
    const double r_out = cfg.window_factor / std::sqrt(lambda);
    const detail::GuardPlan plan = detail::make_guard_plan(p, cooperative, cfg);
    auto chunk_fn = [&](std::uint64_t, std::uint64_t n, Rng& rng) {
        std::uint64_t hits = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
            const double guard = detail::draw_guard(plan, lambda, rng);
            const double split = detail::split_radius(lambda, p.alpha_c, guard, r_out, cfg.split_factor);
            const double draw =
                detail::draw_shot_noise(lambda, p.alpha_c, guard, split, r_out, cfg.max_expected_exact, rng);
            if (draw > eta) ++hits;
        }
        return hits;
    };
    const auto partials = detail::run_chunks<std::uint64_t>(cfg, chunk_fn);
    std::uint64_t hits = 0;
    for (const auto h : partials) hits += h;
    const double n = static_cast<double>(cfg.trials);
    const double phat = static_cast<double>(hits) / n;
    return {phat, std::sqrt(phat * (1.0 - phat) / n), cfg.trials, cfg.seed};
}

/// Empirical P{max_i w_i^(-alpha_c) g_i > eta} over the field beyond r_c:
/// the oracle for the strongest-interferer model. Points that cannot beat
/// eta even with a once-in-e^42 gain are never materialized.
inline McEstimate mc_max_term_exceedance(const NetworkParams& p, double r_c, double eta, const McConfig& cfg) {
    ensure_valid(p);
    ensure_valid(cfg);
    if (!(eta > 0.0)) throw std::domain_error("mc_max_term_exceedance: eta must be positive");
    if (r_c < 0.0) throw std::domain_error("mc_max_term_exceedance: r_c must be non-negative");
    const double lambda = p.lambda_b;
    const double r_out = cfg.window_factor / std::sqrt(lambda);
    const double cap = std::min(r_out, std::pow(42.0 / eta, 1.0 / p.alpha_c));
    auto chunk_fn = [&](std::uint64_t, std::uint64_t n, Rng& rng) {
        std::uint64_t hits = 0;
        if (cap <= r_c) return hits;
        const double lo2 = r_c * r_c;
        const double span2 = cap * cap - lo2;
        const double mean_count = lambda * kPi * span2;
        for (std::uint64_t i = 0; i < n; ++i) {
            const std::uint64_t pts = rng.poisson(mean_count);
            for (std::uint64_t k = 0; k < pts; ++k) {
                const double w2 = lo2 + rng.u01() * span2;
                if (rng.exp1() > eta * std::pow(w2, 0.5 * p.alpha_c)) {
                    ++hits;
                    break;
                }
            }
        }
        return hits;
    };
    const auto partials = detail::run_chunks<std::uint64_t>(cfg, chunk_fn);
    std::uint64_t hits = 0;
    for (const auto h : partials) hits += h;
    const double n = static_cast<double>(cfg.trials);
    const double phat = static_cast<double>(hits) / n;
    return {phat, std::sqrt(phat * (1.0 - phat) / n), cfg.trials, cfg.seed};
}

/// End-to-end detection-density estimate lambda_b * K * P{detect}: each
/// trial draws the serving distance, the Exp(1) echo gain, and one guarded
/// interference realization, then tests
/// N M * sir_constant * d_1^(-2 alpha_r) * g > t_r * I  (multiplication
/// form, so an empty field cannot divide by zero). Under PerRealization
/// the serving and guard distances are drawn jointly from the cumulative
/// arrival construction, preserving their ordering.
inline McEstimate mc_ardcp(const NetworkParams& p, double t_r, const McConfig& cfg) {
    ensure_valid(p);
    ensure_valid(cfg);
    if (t_r < 0.0) throw std::domain_error("mc_ardcp: threshold must be non-negative");
    const double scale = p.lambda_b * p.k_factor;
    if (t_r == 0.0) return {scale, 0.0, cfg.trials, cfg.seed};  // every link clears a zero threshold
    const double lambda = p.lambda_b;
    const double r_out = cfg.window_factor / std::sqrt(lambda);
    const double rbar_guard = expected_kth_distance(lambda, p.n_c + 2);
    const double gain_const = p.processing_gain() * sir_constant(p);
    auto chunk_fn = [&](std::uint64_t, std::uint64_t n, Rng& rng) {
        std::uint64_t hits = 0;
        for (std::uint64_t i = 0; i < n; ++i) {
            double arrivals = rng.exp1();
            const double r_1 = std::sqrt(arrivals / (kPi * lambda));
            double guard = rbar_guard;
            if (cfg.guard_mode == GuardMode::PerRealization) {
                for (int k = 0; k < p.n_c + 1; ++k) arrivals += rng.exp1();
                guard = std::sqrt(arrivals / (kPi * lambda));
            }
            const double d_1 = link_distance(r_1, p);
            const double echo = gain_const * std::pow(d_1, -2.0 * p.alpha_r) * rng.exp1();
            const double split = detail::split_radius(lambda, p.alpha_c, guard, r_out, cfg.split_factor);
            const double interference =
                detail::draw_shot_noise(lambda, p.alpha_c, guard, split, r_out, cfg.max_expected_exact, rng);
            if (echo > t_r * interference) ++hits;
        }
        return hits;
    };
    const auto partials = detail::run_chunks<std::uint64_t>(cfg, chunk_fn);
    std::uint64_t hits = 0;
    for (const auto h : partials) hits += h;
    const double n = static_cast<double>(cfg.trials);
    const double phat = static_cast<double>(hits) / n;
    return {scale * phat, scale * std::sqrt(phat * (1.0 - phat) / n), cfg.trials, cfg.seed};
}

/// Empirical characteristic function of unguarded interference on a chain
/// of nested windows, compared against a reference CF on a fixed grid.
struct CfWindowGap {
    double window_factor = 0.0;
    double sup_gap = 0.0;                      // sup_w |empirical - reference|
    std::vector<std::complex<double>> empirical;  // per grid point
};

/// For each window factor (ascending), accumulate the empirical CF of the
/// same trials truncated at that window, sharing the exact inner draw and
/// the far-field Gaussian increments across windows (common random
/// numbers), so the gaps are directly comparable across windows.
template <typename RefCf>
std::vector<CfWindowGap> mc_cf_window_study(const NetworkParams& p, const std::vector<double>& window_factors,
                                            const std::vector<double>& omega_grid, const RefCf& reference,
                                            const McConfig& cfg) {
    ensure_valid(p);
    ensure_valid(cfg);
    if (window_factors.empty() || omega_grid.empty()) {
        throw std::domain_error("mc_cf_window_study: empty window or omega grid");
    }
    if (!std::is_sorted(window_factors.begin(), window_factors.end())) {
        throw std::domain_error("mc_cf_window_study: window factors must be ascending");
    }
    const double lambda = p.lambda_b;
    const double sqrt_lambda = std::sqrt(lambda);
    const double floor = cfg.floor_factor / sqrt_lambda;
    const std::size_t n_win = window_factors.size();
    const std::size_t n_om = omega_grid.size();
    std::vector<double> bounds(n_win);
    for (std::size_t i = 0; i < n_win; ++i) bounds[i] = window_factors[i] / sqrt_lambda;
    const double split = detail::split_radius(lambda, p.alpha_c, floor, bounds[0], cfg.split_factor);

    // Partial: interleaved cos/sin sums, [window][omega][2].
    auto chunk_fn = [&](std::uint64_t, std::uint64_t n, Rng& rng) {
        std::vector<double> acc(n_win * n_om * 2, 0.0);
        for (std::uint64_t t = 0; t < n; ++t) {
            double value = detail::draw_shot_noise(lambda, p.alpha_c, floor, split, split, cfg.max_expected_exact,
                                                   rng);
            double prev = split;
            for (std::size_t w = 0; w < n_win; ++w) {
                if (bounds[w] > prev) {
                    const double m = detail::partial_cumulant(1, lambda, p.alpha_c, prev, bounds[w]);
                    const double v = detail::partial_cumulant(2, lambda, p.alpha_c, prev, bounds[w]);
                    value += m + std::sqrt(v) * rng.normal();
                    prev = bounds[w];
                }
                double* slot = acc.data() + (w * n_om) * 2;
                for (std::size_t o = 0; o < n_om; ++o) {
                    slot[2 * o] += std::cos(omega_grid[o] * value);
                    slot[2 * o + 1] += std::sin(omega_grid[o] * value);
                }
            }
        }
        return acc;
    };
    const auto partials = detail::run_chunks<std::vector<double>>(cfg, chunk_fn);
    std::vector<double> total(n_win * n_om * 2, 0.0);
    for (const auto& part : partials) {
        for (std::size_t i = 0; i < total.size(); ++i) total[i] += part[i];
    }
    const double n = static_cast<double>(cfg.trials);
    std::vector<CfWindowGap> out(n_win);
    for (std::size_t w = 0; w < n_win; ++w) {
        out[w].window_factor = window_factors[w];
        out[w].empirical.resize(n_om);
        double sup = 0.0;
        for (std::size_t o = 0; o < n_om; ++o) {
            const std::complex<double> emp(total[(w * n_om + o) * 2] / n, total[(w * n_om + o) * 2 + 1] / n);
            out[w].empirical[o] = emp;
            sup = std::max(sup, std::abs(emp - reference(omega_grid[o])));
        }
        out[w].sup_gap = sup;
    }
    return out;
}

/// Two-pass sample mean and (unbiased) variance.
inline void mean_variance(const std::vector<double>& draws, double& mean, double& variance) {
    if (draws.size() < 2) throw std::domain_error("mean_variance: need at least two draws");
    double sum = 0.0;
    for (const double d : draws) sum += d;
    mean = sum / static_cast<double>(draws.size());
    double ss = 0.0;
    for (const double d : draws) ss += (d - mean) * (d - mean);
    variance = ss / static_cast<double>(draws.size() - 1);
}

}  // namespace isacsense
