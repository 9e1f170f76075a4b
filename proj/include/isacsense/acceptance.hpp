#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "isacsense/ardcp.hpp"
#include "isacsense/cf_inversion.hpp"
#include "isacsense/cfar.hpp"
#include "isacsense/config_file.hpp"
#include "isacsense/interference.hpp"
#include "isacsense/mc.hpp"
#include "isacsense/params.hpp"
#include "isacsense/point_field.hpp"
#include "isacsense/quadrature.hpp"
#include "isacsense/specials.hpp"

namespace isacsense {

/// Fast keeps every check but cuts Monte Carlo budgets 10x; tolerances
/// stay identical because they were sized for the full budgets and hold
/// with margin at the reduced ones.
enum class Level { Fast, Full };

struct CriterionResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

namespace detail {

inline std::string short_g(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

inline std::size_t scaled_trials(Level level, std::size_t full) {
    return level == Level::Fast ? std::max<std::size_t>(full / 10, 1000) : full;
}

inline void check(bool ok, const std::string& msg, bool& passed, std::string& detail) {
    if (!ok) passed = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED: ") + msg;
}

inline std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, i / double(n - 1));
    return g;
}

/// Grid of empirical quantiles at log-spaced tail levels, strictly
/// ascending after deduplication.
inline std::vector<double> quantile_grid(std::vector<double> draws, int n_levels) {
    std::sort(draws.begin(), draws.end());
    std::vector<double> grid;
    grid.reserve(n_levels);
    const double lo = 1e-3;
    const double hi = 0.999;
    for (int i = n_levels - 1; i >= 0; --i) {
        const double level = lo * std::pow(hi / lo, i / double(n_levels - 1));  // ccdf level
        const double rank = (1.0 - level) * static_cast<double>(draws.size() - 1);
        const double x = draws[static_cast<std::size_t>(rank)];
        if (grid.empty() || x > grid.back()) grid.push_back(x);
    }
    return grid;
}

}  // namespace detail

/// Sample moments of the guarded field against the annulus cumulants.
inline CriterionResult criterion_guarded_moments(Level level) {
    CriterionResult res{"guarded_moments_match_campbell", true, ""};
    constexpr double kMeanTol = 0.02;
    constexpr double kVarTol = 0.05;

    NetworkParams p;
    p.lambda_b = 1e-4;
    McConfig cfg;
    cfg.trials = detail::scaled_trials(level, 1000000);
    cfg.seed = 12001;

    const double r_c = expected_kth_distance(p.lambda_b, p.n_c + 2);
    const std::vector<double> draws = sample_interference(p, true, cfg);
    double mean = 0.0;
    double var = 0.0;
    mean_variance(draws, mean, var);

    const double k1 = campbell_cumulant(1, p, r_c);
    const double k2 = campbell_cumulant(2, p, r_c);
    const double e1 = std::abs(mean - k1) / k1;
    const double e2 = std::abs(var - k2) / k2;
    detail::check(e1 < kMeanTol, "mean rel err " + detail::short_g(e1) + " (tol " + detail::short_g(kMeanTol) + ")",
                  res.passed, res.detail);
    detail::check(e2 < kVarTol, "variance rel err " + detail::short_g(e2) + " (tol " + detail::short_g(kVarTol) + ")",
                  res.passed, res.detail);
    return res;
}

/// The tempered fit must return the cumulants it was matched to.
inline CriterionResult criterion_tsd_roundtrip(Level) {
    CriterionResult res{"tsd_matches_guarded_cumulants", true, ""};
    constexpr double kTol = 1e-10;

    struct Point {
        double lambda, alpha_c, r_c;
    };
    const Point points[] = {
        {1.0 / (2.0 * kPi), 4.0, 1.0},
        {1e-4, 4.0, expected_kth_distance(1e-4, 5)},
        {1e-3, 3.0, 20.0},
    };
    double worst = 0.0;
    for (const Point& pt : points) {
        NetworkParams p;
        p.lambda_b = pt.lambda;
        p.alpha_c = pt.alpha_c;
        const TsdParams tp = tsd_params_coop(p, pt.r_c);
        for (int n = 1; n <= 2; ++n) {
            const double want = campbell_cumulant(n, p, pt.r_c);
            const double got = tsd_cumulant(tp, n);
            worst = std::max(worst, std::abs(got - want) / std::abs(want));
        }
    }
    detail::check(worst < kTol, "max cumulant rel err " + detail::short_g(worst) + " (tol 1e-10)", res.passed,
                  res.detail);
    return res;
}

/// Empirical CF of the unguarded field vs the heavy-tail limit law as the
/// observation window grows.
inline CriterionResult criterion_cf_window(Level level) {
    CriterionResult res{"noncoop_cf_window_convergence", true, ""};
    constexpr double kSupTol = 0.02;

    NetworkParams p;
    p.lambda_b = 1.0;
    p.alpha_c = 2.6;
    McConfig cfg;
    cfg.trials = detail::scaled_trials(level, 1000000);
    cfg.seed = 12003;

    const StableParams sp = stable_params_noncoop(p);
    const std::vector<double> windows = {100.0, 1000.0};
    const std::vector<double> omega = detail::log_grid(0.01, 10.0, 33);
    const auto gaps =
        mc_cf_window_study(p, windows, omega, [&sp](double w) { return stable_cf(sp, w); }, cfg);

    detail::check(gaps[1].sup_gap < gaps[0].sup_gap,
                  "gap shrinks with the window: " + detail::short_g(gaps[0].sup_gap) + " -> " +
                      detail::short_g(gaps[1].sup_gap),
                  res.passed, res.detail);
    detail::check(gaps[1].sup_gap < kSupTol,
                  "largest-window sup gap " + detail::short_g(gaps[1].sup_gap) + " (tol 0.02)", res.passed,
                  res.detail);
    return res;
}

/// Shrinking the guard radius sends the tempered CF to the stable CF.
inline CriterionResult criterion_small_guard_limit(Level) {
    CriterionResult res{"tsd_cf_approaches_stable_small_guard", true, ""};
    constexpr double kSupTol = 0.05;

    NetworkParams p;
    p.lambda_b = 1e-4;
    p.alpha_c = 4.0;
    const double r_c = 1e-3 / std::sqrt(p.lambda_b);
    const StableParams sp = stable_params_noncoop(p);
    const TsdParams tp = tsd_params_coop(p, r_c);
    double sup = 0.0;
    for (double w : detail::log_grid(0.01, 10.0, 33)) {
        sup = std::max(sup, std::abs(tsd_cf(tp, w) - stable_cf(sp, w)));
    }
    detail::check(sup < kSupTol, "sup CF gap " + detail::short_g(sup) + " at r_c=" + detail::short_g(r_c) +
                                     " (tol 0.05)",
                  res.passed, res.detail);
    return res;
}

/// Which closed-form family tracks the guarded field, dense vs sparse.
inline CriterionResult criterion_regimes(Level level) {
    CriterionResult res{"distribution_regimes_ks", true, ""};
    constexpr double kDenseTol = 0.02;
    constexpr int kLevels = 60;

    struct Leg {
        double lambda;
        std::uint64_t seed;
    };
    const Leg legs[] = {{1e-4, 12005}, {1e-6, 12006}};
    double ks_tsd[2] = {0.0, 0.0};
    double ks_sia[2] = {0.0, 0.0};

    for (int i = 0; i < 2; ++i) {
        NetworkParams p;
        p.lambda_b = legs[i].lambda;
        McConfig cfg;
        cfg.trials = detail::scaled_trials(level, 1000000);
        cfg.seed = legs[i].seed;
        const double r_c = expected_kth_distance(p.lambda_b, p.n_c + 2);

        const std::vector<double> draws = sample_interference(p, true, cfg);
        const std::vector<double> grid = detail::quantile_grid(draws, kLevels);
        const std::vector<double> emp = empirical_ccdf(draws, grid);

        const InterferenceModel tsd = tsd_params_coop(p, r_c);
        const InterferenceModel sia = SiaParams{p.lambda_b, p.alpha_c, r_c};
        ks_tsd[i] = ks_distance(grid, emp, [&](double x) { return model_ccdf(tsd, x); });
        ks_sia[i] = ks_distance(grid, emp, [&](double x) { return model_ccdf(sia, x); });
    }

    detail::check(ks_tsd[0] < ks_sia[0],
                  "dense: KS(tempered)=" + detail::short_g(ks_tsd[0]) + " < KS(strongest-term)=" +
                      detail::short_g(ks_sia[0]),
                  res.passed, res.detail);
    detail::check(ks_tsd[0] < kDenseTol, "dense: KS(tempered) " + detail::short_g(ks_tsd[0]) + " (tol 0.02)",
                  res.passed, res.detail);
    detail::check(ks_sia[1] < ks_tsd[1],
                  "sparse: KS(strongest-term)=" + detail::short_g(ks_sia[1]) + " < KS(tempered)=" +
                      detail::short_g(ks_tsd[1]),
                  res.passed, res.detail);
    return res;
}

/// Inversion against a law with a closed-form distribution.
inline CriterionResult criterion_inversion_oracles(Level) {
    CriterionResult res{"inversion_oracles", true, ""};
    constexpr double kCcdfTol = 1e-6;
    constexpr double kQuantileTol = 1e-6;

    const auto cf = [](double w) { return 1.0 / (1.0 - std::complex<double>(0.0, 1.0) * w); };
    const double ccdf1 = ccdf_from_cf(cf, 1.0);
    const double e1 = std::abs(ccdf1 - std::exp(-1.0));
    detail::check(e1 < kCcdfTol, "exponential ccdf(1) abs err " + detail::short_g(e1) + " (tol 1e-6)", res.passed,
                  res.detail);

    const auto ccdf = [&cf](double x) { return ccdf_from_cf(cf, x); };
    const double q = invert_ccdf(ccdf, 0.1);
    const double e2 = std::abs(q - std::log(10.0)) / std::log(10.0);
    detail::check(e2 < kQuantileTol, "exponential quantile(0.1) rel err " + detail::short_g(e2) + " (tol 1e-6)",
                  res.passed, res.detail);
    return res;
}

/// Threshold from the analytic chain must reproduce its false alarm rate
/// on simulated interference.
inline CriterionResult criterion_cfar_chain(Level level) {
    CriterionResult res{"cfar_chain_consistency", true, ""};
    constexpr double kRoundtripTol = 1e-12;
    constexpr double kPBin = 1e-2;

    NetworkParams p;
    p.lambda_b = 1e-4;

    double worst_rt = 0.0;
    for (double pf : {1e-3, 0.05, 0.5}) {
        const double back = bin_to_frame(frame_to_bin(pf, p.num_subcarriers, p.num_symbols), p.num_subcarriers,
                                         p.num_symbols);
        worst_rt = std::max(worst_rt, std::abs(back - pf) / pf);
    }
    detail::check(worst_rt < kRoundtripTol, "frame/bin roundtrip rel err " + detail::short_g(worst_rt) +
                                                " (tol 1e-12)",
                  res.passed, res.detail);

    // eta-only chain under the unguarded heavy-tail model at p_bin = 1e-2
    const double p_frame = bin_to_frame(kPBin, p.num_subcarriers, p.num_symbols);
    const InterferenceModel model = stable_params_noncoop(p);
    const CfarResult chain = resolve_cfar(p_frame, p, model, 1.0, false);
    detail::check(std::abs(chain.p_bin - kPBin) < 1e-14, "chain recovers p_bin = 1e-2", res.passed, res.detail);

    McConfig cfg;
    cfg.trials = detail::scaled_trials(level, 1000000);
    cfg.seed = 12007;
    const McEstimate est = mc_false_alarm_rate(p, chain.eta, false, cfg);
    const double sigma = std::sqrt(kPBin * (1.0 - kPBin) / static_cast<double>(cfg.trials));
    const double dev = std::abs(est.value - kPBin);
    detail::check(dev <= 3.0 * sigma, "false alarm rate " + detail::short_g(est.value) + " within 3 sigma (" +
                                          detail::short_g(3.0 * sigma) + ") of 1e-2",
                  res.passed, res.detail);
    return res;
}

/// Analytic coverage density vs simulation at the reference point and
/// across a threshold sweep.
inline CriterionResult criterion_coverage_vs_mc(Level level) {
    CriterionResult res{"coverage_density_matches_mc", true, ""};
    constexpr double kRelTol = 0.05;

    NetworkParams p;
    p.lambda_b = 1e-5;
    const double sweep[] = {1.0, 10.0, 100.0, 1e3, 1e4};
    for (int i = 0; i < 5; ++i) {
        const double t_r = sweep[i];
        const double analytic = ardcp(t_r, p);
        McConfig cfg;
        cfg.trials = detail::scaled_trials(level, 1000000);
        cfg.seed = 12008 + static_cast<std::uint64_t>(i);
        const McEstimate mc = mc_ardcp(p, t_r, cfg);
        const double rel = std::abs(analytic - mc.value) / analytic;
        detail::check(rel < kRelTol, "t_r=" + detail::short_g(t_r) + " rel gap " + detail::short_g(rel) +
                                         " (tol 0.05)",
                      res.passed, res.detail);
    }
    return res;
}

/// Directional effects: raising the ground tier helps at sparse density,
/// larger cooperating clusters help at dense density, in both the analytic
/// and the simulated coverage density.
inline CriterionResult criterion_trends(Level level) {
    CriterionResult res{"coverage_density_trends", true, ""};
    constexpr double kTr = 10.0;

    // station height sweep, common random numbers so the simulated event
    // sets are nested and the comparison is exact
    {
        const double heights[] = {10.0, 30.0, 50.0};
        double analytic[3];
        double simulated[3];
        for (int i = 0; i < 3; ++i) {
            NetworkParams p;
            p.lambda_b = 1e-6;
            p.h_b = heights[i];
            analytic[i] = ardcp(kTr, p);
            McConfig cfg;
            cfg.trials = level == Level::Fast ? 300000 : 1000000;
            cfg.seed = 12009;
            simulated[i] = mc_ardcp(p, kTr, cfg).value;
        }
        detail::check(analytic[0] < analytic[1] && analytic[1] < analytic[2],
                      "analytic coverage rises with station height (" + detail::short_g(analytic[0]) + ", " +
                          detail::short_g(analytic[1]) + ", " + detail::short_g(analytic[2]) + ")",
                      res.passed, res.detail);
        detail::check(simulated[0] < simulated[1] && simulated[1] < simulated[2],
                      "simulated coverage rises with station height (" + detail::short_g(simulated[0]) + ", " +
                          detail::short_g(simulated[1]) + ", " + detail::short_g(simulated[2]) + ")",
                      res.passed, res.detail);
    }

    // cluster size sweep, independent seeds; the analytic gap dwarfs the
    // simulation noise at these budgets
    {
        const int clusters[] = {1, 7};
        double analytic[2];
        double simulated[2];
        for (int i = 0; i < 2; ++i) {
            NetworkParams p;
            p.lambda_b = 1e-4;
            p.n_c = clusters[i];
            analytic[i] = ardcp(kTr, p);
            McConfig cfg;
            cfg.trials = detail::scaled_trials(level, 1000000);
            cfg.seed = 12010 + static_cast<std::uint64_t>(i);
            simulated[i] = mc_ardcp(p, kTr, cfg).value;
        }
        detail::check(analytic[0] < analytic[1],
                      "analytic coverage rises with cluster size (" + detail::short_g(analytic[0]) + " -> " +
                          detail::short_g(analytic[1]) + ")",
                      res.passed, res.detail);
        detail::check(simulated[0] < simulated[1],
                      "simulated coverage rises with cluster size (" + detail::short_g(simulated[0]) + " -> " +
                          detail::short_g(simulated[1]) + ")",
                      res.passed, res.detail);
    }
    return res;
}

/// Hypergeometric evaluations against direct quadrature of the Euler
/// integral, plus the gamma recurrence.
inline CriterionResult criterion_special_functions(Level) {
    CriterionResult res{"special_function_oracles", true, ""};
    constexpr double kHypTol = 1e-7;
    constexpr double kGammaTol = 1e-10;

    double worst_gamma = 0.0;
    for (double x = 0.1; x <= 30.0; x += 0.1) {
        const double lhs = gamma_fn(x + 1.0);
        const double rhs = x * gamma_fn(x);
        worst_gamma = std::max(worst_gamma, std::abs(lhs - rhs) / lhs);
    }
    detail::check(worst_gamma < kGammaTol, "gamma recurrence rel err " + detail::short_g(worst_gamma) +
                                               " (tol 1e-10)",
                  res.passed, res.detail);

    double worst_hyp = 0.0;
    for (double alpha_c : {2.6, 3.0, 3.5, 4.0, 5.0}) {
        const double s = 2.0 / alpha_c;
        const double a = 1.0;
        const double b = 1.0 - s;
        const double c = 2.0 - s;
        for (double z : {-1e-3, -0.1, -0.5, -1.0, -5.0, -100.0, -1e3}) {
            // with c = b + 1 the Euler integral b int_0^1 t^(b-1) (1-zt)^(-a) dt
            // becomes int_0^1 (1 - z u^(1/b))^(-a) du after t = u^(1/b)
            const double oracle =
                integrate([&](double u) { return std::pow(1.0 - z * std::pow(u, 1.0 / b), -a); }, 0.0, 1.0,
                          1e-12)
                    .value;
            const double got = gauss_2f1(a, b, c, z);
            worst_hyp = std::max(worst_hyp, std::abs(got - oracle) / std::max(1.0, std::abs(oracle)));
        }
    }
    detail::check(worst_hyp < kHypTol, "hypergeometric vs quadrature err " + detail::short_g(worst_hyp) +
                                           " (tol 1e-7, includes z=-100 path)",
                  res.passed, res.detail);
    return res;
}

inline std::vector<std::string> all_criterion_names() {
    return {"guarded_moments_match_campbell",
            "tsd_matches_guarded_cumulants",
            "noncoop_cf_window_convergence",
            "tsd_cf_approaches_stable_small_guard",
            "distribution_regimes_ks",
            "inversion_oracles",
            "cfar_chain_consistency",
            "coverage_density_matches_mc",
            "coverage_density_trends",
            "special_function_oracles"};
}

inline CriterionResult run_criterion(const std::string& name, Level level) {
    if (name == "guarded_moments_match_campbell") return criterion_guarded_moments(level);
    if (name == "tsd_matches_guarded_cumulants") return criterion_tsd_roundtrip(level);
    if (name == "noncoop_cf_window_convergence") return criterion_cf_window(level);
    if (name == "tsd_cf_approaches_stable_small_guard") return criterion_small_guard_limit(level);
    if (name == "distribution_regimes_ks") return criterion_regimes(level);
    if (name == "inversion_oracles") return criterion_inversion_oracles(level);
    if (name == "cfar_chain_consistency") return criterion_cfar_chain(level);
    if (name == "coverage_density_matches_mc") return criterion_coverage_vs_mc(level);
    if (name == "coverage_density_trends") return criterion_trends(level);
    if (name == "special_function_oracles") return criterion_special_functions(level);
    throw config_error("unknown acceptance criterion '" + name + "'");
}

inline std::vector<CriterionResult> run_all_criteria(Level level) {
    std::vector<CriterionResult> out;
    for (const std::string& name : all_criterion_names()) out.push_back(run_criterion(name, level));
    return out;
}

}  // namespace isacsense
