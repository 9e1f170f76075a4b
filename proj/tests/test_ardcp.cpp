#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "isacsense/ardcp.hpp"
#include "isacsense/params.hpp"

using namespace isacsense;

namespace {

NetworkParams sparse_params() {
    NetworkParams p;
    p.lambda_b = 1e-5;
    return p;
}

}  // namespace

TEST_CASE("q factor anchors") {
    NetworkParams p;
    p.n_r = 16;
    p.xi = 1.0;
    p.num_subcarriers = 64;
    p.num_symbols = 16;
    p.alpha_r = 2.0;
    // q = 4 pi T_r d1^(2 alpha_r) / (N M N_r xi)
    CHECK(q_factor(1.0, 1.0, p) == Catch::Approx(4.0 * kPi / (1024.0 * 16.0)).epsilon(1e-15));
    // quartic growth in the link distance at alpha_r = 2
    CHECK(q_factor(1.0, 3.0, p) == Catch::Approx(81.0 * q_factor(1.0, 1.0, p)).epsilon(1e-12));
    // linear in the threshold
    CHECK(q_factor(7.0, 2.0, p) == Catch::Approx(7.0 * q_factor(1.0, 2.0, p)).epsilon(1e-12));
    CHECK(q_factor(0.0, 2.0, p) == 0.0);
}

TEST_CASE("zero threshold gives certain coverage") {
    const NetworkParams p = sparse_params();
    CHECK(conditional_coverage(0.0, 50.0, p) == 1.0);
    CHECK(ardcp(0.0, p) == Catch::Approx(p.lambda_b * p.k_factor).epsilon(1e-15));

    // the bare kernel is not a probability: at zero threshold it collapses
    // to pi * rbar^(-2) rather than 1 (alpha_c = 4)
    const double rbar = expected_kth_distance(p.lambda_b, p.n_c + 2);
    CHECK(conditional_coverage(0.0, 50.0, p, CoverageMode::KernelOnly) ==
          Catch::Approx(kPi / (rbar * rbar)).epsilon(1e-12));
}

TEST_CASE("conditional coverage decreases with the threshold") {
    const NetworkParams p = sparse_params();
    double prev = 1.0;
    for (double t : {0.1, 1.0, 10.0, 100.0, 1e3, 1e4}) {
        const double cov = conditional_coverage(t, 100.0, p);
        CHECK(cov > 0.0);
        CHECK(cov <= prev);
        prev = cov;
    }
    CHECK(prev < 0.9);
}

TEST_CASE("area coverage density decreases with the threshold") {
    const NetworkParams p = sparse_params();
    double prev = p.lambda_b * p.k_factor + 1e-18;
    for (double t : {1.0, 10.0, 100.0, 1e3, 1e4}) {
        const double v = ardcp(t, p);
        CHECK(v > 0.0);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("more cooperating stations improve coverage") {
    NetworkParams p;
    p.lambda_b = 1e-4;
    double prev = 0.0;
    for (int n_c : {0, 1, 3, 7}) {
        p.n_c = n_c;
        const double v = ardcp(10.0, p);
        CHECK(v > prev);
        prev = v;
    }
    CHECK(prev < p.lambda_b * p.k_factor);
}

TEST_CASE("shrinking the height gap raises coverage") {
    NetworkParams lo = sparse_params();
    NetworkParams hi = sparse_params();
    lo.h_b = 10.0;
    hi.h_b = 50.0;
    // larger h_b means a smaller gap to the aerial tier at h_t = 100
    CHECK(hi.delta_h() < lo.delta_h());
    CHECK(ardcp(10.0, hi) > ardcp(10.0, lo));
}

TEST_CASE("kernel-only mode clamps and reports the raw value") {
    // in a dense field the guard distance shrinks and the kernel form
    // exceeds one; the clamp must bind while the raw diagnostic exposes
    // the excursion
    NetworkParams p;
    p.lambda_b = 1.0;
    double raw = 0.0;
    const double cov = conditional_coverage(0.0, 50.0, p, CoverageMode::KernelOnly, &raw);
    const double rbar = expected_kth_distance(p.lambda_b, p.n_c + 2);
    CHECK(cov == 1.0);
    CHECK(raw == Catch::Approx(kPi / (rbar * rbar)).epsilon(1e-12));
    CHECK(raw > 1.0);

    // when the kernel stays inside the unit interval the raw value and the
    // reported value coincide
    NetworkParams sparse;
    sparse.lambda_b = 1e-4;
    double raw2 = 0.0;
    const double cov2 = conditional_coverage(1.0, 50.0, sparse, CoverageMode::KernelOnly, &raw2);
    CHECK(cov2 >= 0.0);
    CHECK(cov2 <= 1.0);
    CHECK(raw2 == cov2);
}

TEST_CASE("laplace-functional coverage stays in the unit interval") {
    NetworkParams p;
    p.lambda_b = 1e-3;
    for (double t : {1.0, 100.0, 1e6}) {
        for (double r1 : {5.0, 50.0, 500.0}) {
            const double cov = conditional_coverage(t, r1, p);
            CHECK(cov >= 0.0);
            CHECK(cov <= 1.0);
        }
    }
}

TEST_CASE("coverage density rejects invalid parameters") {
    NetworkParams p = sparse_params();
    p.alpha_c = 1.5;
    CHECK_THROWS_AS(ardcp(10.0, p), config_error);
    NetworkParams q = sparse_params();
    CHECK_THROWS_AS(ardcp(-1.0, q), std::domain_error);
}
