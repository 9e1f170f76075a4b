#pragma once

// Planar Poisson field sampling and nearest-neighbor order statistics.
// Positions are relative to a receiver at the origin; heights live in
// NetworkParams, so the field itself is purely 2D.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "isacsense/errors.hpp"
#include "isacsense/rng.hpp"
#include "isacsense/specials.hpp"

namespace isacsense {

struct PlanarPoint {
    double x = 0.0;
    double y = 0.0;
    double radius() const { return std::hypot(x, y); }
};

/// One realization of a Poisson field on an annulus around the origin.
struct FieldSample {
    std::vector<PlanarPoint> points;
    double window_inner = 0.0;  // m
    double window_outer = 0.0;  // m
    double density = 0.0;       // m^-2
    std::uint64_t seed = 0;
};

/// Draw a homogeneous Poisson field on the annulus [r_in, r_out].
///
/// Count is Poisson with mean density*pi*(r_out^2 - r_in^2); radii follow
/// the triangular-in-w density via inverse CDF (sqrt of a uniform on
/// [r_in^2, r_out^2]), angles are uniform. Throws when the expected count
/// exceeds max_expected_points.
inline FieldSample sample_annulus(double density, double r_in, double r_out, Rng& rng,
                                  double max_expected_points = 1e7) {
    if (!(density > 0.0)) throw std::domain_error("sample_annulus: density must be positive");
    if (!(r_in >= 0.0) || !(r_out > r_in)) {
        throw std::domain_error("sample_annulus: need 0 <= r_in < r_out, got [" + std::to_string(r_in) + ", " +
                                std::to_string(r_out) + ")");
    }
    const double mean = density * kPi * (r_out * r_out - r_in * r_in);
    if (mean > max_expected_points) {
        throw numeric_error("sample_annulus: expected point count " + std::to_string(mean) +
                            " exceeds the cap of " + std::to_string(max_expected_points) +
                            "; shrink the window or raise the cap");
    }
    FieldSample out;
    out.window_inner = r_in;
    out.window_outer = r_out;
    out.density = density;
    const std::uint64_t count = rng.poisson(mean);
    out.points.reserve(static_cast<std::size_t>(count));
    const double lo2 = r_in * r_in;
    const double span2 = r_out * r_out - lo2;
    for (std::uint64_t i = 0; i < count; ++i) {
        const double w = std::sqrt(lo2 + rng.u01() * span2);
        const double theta = 2.0 * kPi * rng.u01();
        out.points.push_back({w * std::cos(theta), w * std::sin(theta)});
    }
    return out;
}

/// Convenience overload owning its generator; records the seed in the sample.
inline FieldSample sample_annulus(double density, double r_in, double r_out, std::uint64_t seed,
                                  double max_expected_points = 1e7) {
    Rng rng(seed);
    FieldSample out = sample_annulus(density, r_in, r_out, rng, max_expected_points);
    out.seed = seed;
    return out;
}

/// Distance from the origin to the k-th nearest point of an existing sample.
inline double kth_nearest_distance(const FieldSample& sample, int k) {
    if (k < 1) throw std::domain_error("kth_nearest_distance: k must be positive");
    if (static_cast<std::size_t>(k) > sample.points.size()) {
        throw std::domain_error("kth_nearest_distance: sample holds only " + std::to_string(sample.points.size()) +
                                " points, need " + std::to_string(k));
    }
    std::vector<double> r2(sample.points.size());
    for (std::size_t i = 0; i < r2.size(); ++i) {
        const auto& p = sample.points[i];
        r2[i] = p.x * p.x + p.y * p.y;
    }
    std::nth_element(r2.begin(), r2.begin() + (k - 1), r2.end());
    return std::sqrt(r2[k - 1]);
}

/// Draw the k-th nearest distance of an unbounded field directly.
///
/// Mapping the field through w -> pi*density*w^2 turns squared distances
/// into a unit-rate process on the half line, whose k-th arrival is a sum
/// of k standard exponentials. This is the exact limit of growing-window
/// sampling, with no truncation failure mass at all.
inline double draw_kth_nearest(double density, int k, Rng& rng) {
    if (!(density > 0.0)) throw std::domain_error("draw_kth_nearest: density must be positive");
    if (k < 1) throw std::domain_error("draw_kth_nearest: k must be positive");
    double arrival = 0.0;
    for (int i = 0; i < k; ++i) arrival += rng.exp1();
    return std::sqrt(arrival / (kPi * density));
}

/// Closed-form mean of the k-th nearest distance:
/// E[r_k] = Gamma(k + 1/2) / (Gamma(k) * sqrt(pi * density)).
inline double expected_kth_distance(double density, int k) {
    if (!(density > 0.0)) throw std::domain_error("expected_kth_distance: density must be positive");
    if (k < 1) throw std::domain_error("expected_kth_distance: k must be positive");
    const double log_ratio = log_gamma(k + 0.5) - log_gamma(static_cast<double>(k));
    return std::exp(log_ratio) / std::sqrt(kPi * density);
}

/// Density of the nearest-point distance: 2 pi lambda r exp(-pi lambda r^2).
inline double nearest_distance_pdf(double r, double density) {
    if (r < 0.0) throw std::domain_error("nearest_distance_pdf: r must be non-negative");
    const double a = kPi * density * r * r;
    return 2.0 * kPi * density * r * std::exp(-a);
}

}  // namespace isacsense
