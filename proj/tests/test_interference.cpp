#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "isacsense/interference.hpp"
#include "isacsense/point_field.hpp"

using namespace isacsense;

namespace {

NetworkParams reference_params() {
    NetworkParams p;
    p.lambda_b = 1.0 / (2.0 * kPi);
    p.alpha_c = 4.0;
    return p;
}

}  // namespace

TEST_CASE("guarded-field cumulants: hand values and scaling") {
    const NetworkParams p = reference_params();
    CHECK(campbell_cumulant(1, p, 1.0) == Catch::Approx(0.5).epsilon(1e-12));
    CHECK(campbell_cumulant(2, p, 1.0) == Catch::Approx(1.0 / 3.0).epsilon(1e-12));
    // kappa(n) ~ r_c^(2 - n alpha_c)
    CHECK(campbell_cumulant(1, p, 2.0) == Catch::Approx(0.5 / 4.0).epsilon(1e-12));
    CHECK(campbell_cumulant(1, p, 1e9) == Catch::Approx(0.5 * 1e-18).epsilon(1e-9));
    CHECK_THROWS_AS(campbell_cumulant(1, [] { NetworkParams q; q.alpha_c = 2.0; return q; }(), 1.0),
                    std::domain_error);
    CHECK_THROWS_AS(campbell_cumulant(1, p, 0.0), std::domain_error);
}

TEST_CASE("unguarded stable parameters") {
    NetworkParams p;
    p.lambda_b = 1.0 / kPi;
    p.alpha_c = 4.0;
    const StableParams sp = stable_params_noncoop(p);
    CHECK(sp.alpha == Catch::Approx(0.5).epsilon(1e-15));
    CHECK(sp.beta == 1.0);
    CHECK(sp.mu == 0.0);
    CHECK(sp.c == Catch::Approx(1.0 / sinc_n(0.25)).epsilon(1e-12));
    CHECK(sp.c == Catch::Approx(1.1107207345395913).epsilon(1e-12));
    p.alpha_c = 3.0;
    CHECK(stable_params_noncoop(p).alpha == Catch::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("stable characteristic function") {
    StableParams sp{0.5, 1.0, 1.0, 0.0};
    CHECK(stable_cf(sp, 0.0) == std::complex<double>(1.0, 0.0));
    const std::complex<double> v = stable_cf(sp, 1.0);
    CHECK(v.real() == Catch::Approx(std::exp(-1.0) * std::cos(1.0)).epsilon(1e-12));
    CHECK(v.imag() == Catch::Approx(std::exp(-1.0) * std::sin(1.0)).epsilon(1e-12));
    for (const double w : {0.1, 1.0, 10.0}) {
        const auto plus = stable_cf(sp, w);
        const auto minus = stable_cf(sp, -w);
        REQUIRE(minus.real() == Catch::Approx(plus.real()).epsilon(1e-14));
        REQUIRE(minus.imag() == Catch::Approx(-plus.imag()).epsilon(1e-14));
        REQUIRE(std::abs(plus) <= 1.0 + 1e-14);
    }
    // alpha = 1 phase branch stays a valid CF
    StableParams cauchy_like{1.0, 0.5, 0.7, 0.0};
    for (const double w : {0.3, 2.0}) REQUIRE(std::abs(stable_cf(cauchy_like, w)) <= 1.0 + 1e-14);
}

TEST_CASE("tempered-law fit reproduces the matched cumulants") {
    const NetworkParams p = reference_params();
    const TsdParams tp = tsd_params_coop(p, 1.0);
    CHECK(tp.alpha == Catch::Approx(0.5).epsilon(1e-15));
    CHECK(tp.g == Catch::Approx(0.75).epsilon(1e-12));
    CHECK(tp.c == Catch::Approx(0.24430125595146).epsilon(1e-10));
    CHECK(tsd_cumulant(tp, 1) == Catch::Approx(campbell_cumulant(1, p, 1.0)).epsilon(1e-10));
    CHECK(tsd_cumulant(tp, 2) == Catch::Approx(campbell_cumulant(2, p, 1.0)).epsilon(1e-10));

    // the fit holds at deployment-scale parameters too
    NetworkParams q;
    q.lambda_b = 1e-4;
    q.alpha_c = 4.0;
    const double r_c = expected_kth_distance(q.lambda_b, q.n_c + 2);  // 123.046875 m
    const TsdParams tq = tsd_params_coop(q, r_c);
    CHECK(tsd_cumulant(tq, 1) == Catch::Approx(campbell_cumulant(1, q, r_c)).epsilon(1e-10));
    CHECK(tsd_cumulant(tq, 2) == Catch::Approx(campbell_cumulant(2, q, r_c)).epsilon(1e-10));
}

TEST_CASE("tempered-law third cumulant: closed form vs finite differences") {
    // For the reference fit the closed form is exactly 2/3: the matching
    // makes c Gamma(-1/2) = -sqrt(3)/2, so kappa(3) = (sqrt(3)/2) *
    // (4/3)^(5/2) * (3/8) = 2/3.
    const NetworkParams p = reference_params();
    const TsdParams tp = tsd_params_coop(p, 1.0);
    const double k3 = tsd_cumulant(tp, 3);
    CHECK(k3 == Catch::Approx(2.0 / 3.0).epsilon(1e-10));

    // independent oracle: third derivative of log cf at 0 by central
    // differences; kappa(3) = j^(-3) d3 = -Im(d3) with Re(d3) vanishing
    const double h = 5e-3;
    const auto log_cf = [&tp](double w) { return std::log(tsd_cf(tp, w)); };
    const std::complex<double> d3 =
        (log_cf(2.0 * h) - 2.0 * log_cf(h) + 2.0 * log_cf(-h) - log_cf(-2.0 * h)) / (2.0 * h * h * h);
    CHECK(d3.real() == Catch::Approx(0.0).margin(1e-8));
    CHECK(-d3.imag() == Catch::Approx(k3).epsilon(1e-3));
}

TEST_CASE("tempered characteristic function: normalization, modulus, low-order cumulants") {
    const NetworkParams p = reference_params();
    const TsdParams tp = tsd_params_coop(p, 1.0);
    CHECK(tsd_cf(tp, 0.0) == std::complex<double>(1.0, 0.0));
    for (const double w : {0.1, 1.0, 10.0, 100.0}) {
        REQUIRE(std::abs(tsd_cf(tp, w)) <= 1.0 + 1e-14);
        const auto plus = tsd_cf(tp, w);
        const auto minus = tsd_cf(tp, -w);
        REQUIRE(minus.real() == Catch::Approx(plus.real()).epsilon(1e-13));
        REQUIRE(minus.imag() == Catch::Approx(-plus.imag()).epsilon(1e-13));
    }
    // numerically differentiating log cf at 0 recovers j kappa(1), -kappa(2)
    const double h = 1e-3;
    const auto log_cf = [&tp](double w) { return std::log(tsd_cf(tp, w)); };
    const std::complex<double> d1 = (log_cf(h) - log_cf(-h)) / (2.0 * h);
    const std::complex<double> d2 = (log_cf(h) - 2.0 * log_cf(0.0) + log_cf(-h)) / (h * h);
    CHECK(d1.imag() == Catch::Approx(tsd_cumulant(tp, 1)).epsilon(1e-6));
    CHECK(-d2.real() == Catch::Approx(tsd_cumulant(tp, 2)).epsilon(1e-6));
}

TEST_CASE("strongest-term model: limits and hand value") {
    const SiaParams sia{1e-4, 4.0, 10.0};
    // eta -> infinity kills the probability; guardless eta -> 0 saturates it
    CHECK(sia_ccdf(1e12, sia) < 1e-12);
    CHECK(sia_ccdf(1e-30, SiaParams{1e-4, 4.0, 0.0}) == Catch::Approx(1.0).epsilon(1e-9));
    // hand evaluation at the worked point
    const double s = 0.5;
    const double lam = (2.0 * kPi * 1e-4 / 4.0) * std::pow(1e-4, -s) * upper_incomplete_gamma(s, 1e-4 * 1e4);
    CHECK(sia_ccdf(1e-4, sia) == Catch::Approx(-std::expm1(-lam)).epsilon(1e-12));
    CHECK(sia_ccdf(1e-4, sia) == Catch::Approx(4.3697e-3).epsilon(1e-3));
    // monotone non-increasing in eta
    double prev = 1.0;
    for (double eta = 1e-6; eta < 1.0; eta *= 4.0) {
        const double v = sia_ccdf(eta, sia);
        REQUIRE(v <= prev + 1e-15);
        REQUIRE(v >= 0.0);
        REQUIRE(v <= 1.0);
        prev = v;
    }
}

TEST_CASE("model names") {
    CHECK(std::string(model_name(InterferenceModel{StableParams{}})) == "stable");
    CHECK(std::string(model_name(InterferenceModel{TsdParams{}})) == "tsd");
    CHECK(std::string(model_name(InterferenceModel{SiaParams{}})) == "sia");
}
