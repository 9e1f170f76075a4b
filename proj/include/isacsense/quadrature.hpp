#pragma once

// Adaptive Gauss-Kronrod (7, 15) quadrature over finite intervals. The
// 15-point Kronrod value is the estimate; the embedded 7-point Gauss value
// drives the scaled error heuristic from QUADPACK. Subdivision is managed on
// an explicit worst-first heap so the budget is a hard cap.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "isacsense/errors.hpp"

namespace isacsense {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;       // estimated absolute error
    int subdivisions = 0;     // panels examined
};

namespace detail {

// Nodes and weights for the (7, 15) pair; positive abscissae only, the rule
// is symmetric. Odd indices of kKronrodX are the embedded Gauss-7 nodes.
inline constexpr double kKronrodX[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0,
};
inline constexpr double kKronrodW[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
};
inline constexpr double kGaussW[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <typename F>
Panel gk15(const F& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f_mid = f(mid);
    double kronrod = kKronrodW[7] * f_mid;
    double gauss = kGaussW[3] * f_mid;
    double abs_int = kKronrodW[7] * std::fabs(f_mid);
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kKronrodX[i];
        const double f_lo = f(mid - dx);
        const double f_hi = f(mid + dx);
        kronrod += kKronrodW[i] * (f_lo + f_hi);
        abs_int += kKronrodW[i] * (std::fabs(f_lo) + std::fabs(f_hi));
        if (i % 2 == 1) gauss += kGaussW[i / 2] * (f_lo + f_hi);
    }
    kronrod *= half;
    gauss *= half;
    abs_int *= std::fabs(half);

    // QUADPACK-style error: sharpen the raw |K15 - G7| gap, but never claim
    // more than machine precision relative to the absolute integral.
    double err = std::fabs(kronrod - gauss);
    if (abs_int > 0.0 && err > 0.0) {
        const double scaled = 200.0 * err / abs_int;
        err = abs_int * std::min(1.0, scaled * std::sqrt(scaled));
    }
    err = std::max(err, 5e-16 * abs_int);
    return Panel{a, b, kronrod, err};
}

}  // namespace detail

/// Integrate f over [a, b] to the requested tolerances. The returned error
/// is an estimate of the achieved absolute error. Throws numeric_error with
/// a pointer at max_subdivisions when the budget runs out.
template <typename F>
QuadResult integrate(const F& f, double a, double b, double rel_tol = 1e-10, double abs_tol = 0.0,
                     int max_subdivisions = 2000) {
    if (a == b) return {0.0, 0.0, 0};
    std::vector<detail::Panel> heap;
    heap.push_back(detail::gk15(f, a, b));
    double total = heap[0].value;
    double total_err = heap[0].error;
    int used = 1;
    while (total_err > std::max(abs_tol, rel_tol * std::fabs(total))) {
        if (used >= max_subdivisions) {
            throw numeric_error("integrate: error " + std::to_string(total_err) + " still above tolerance after " +
                                std::to_string(max_subdivisions) +
                                " subdivisions; raise max_subdivisions or loosen the tolerance");
        }
        std::pop_heap(heap.begin(), heap.end());
        const detail::Panel worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval no longer splittable in double precision; decay its
            // claimed error so the loop can terminate on what is achievable.
            detail::Panel degenerate = worst;
            degenerate.error *= 0.5;
            total_err -= worst.error - degenerate.error;
            heap.push_back(degenerate);
            std::push_heap(heap.begin(), heap.end());
            continue;
        }
        const detail::Panel left = detail::gk15(f, worst.a, mid);
        const detail::Panel right = detail::gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end());
        ++used;
    }
    // Re-sum for accuracy: the incremental updates accumulate rounding.
    double value = 0.0, error = 0.0;
    for (const auto& p : heap) {
        value += p.value;
        error += p.error;
    }
    return {value, error, used};
}

}  // namespace isacsense
