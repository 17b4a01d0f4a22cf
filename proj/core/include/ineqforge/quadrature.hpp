#pragma once

#include <functional>
#include <limits>

namespace ineqforge::radial {

class MeasureSpec;

// Closed interval in r; hi may be +infinity.
struct Interval {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();

    bool half_line() const { return hi == std::numeric_limits<double>::infinity(); }
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    int subintervals = 0;
    // Certified bound on the neglected half-line tail (0 on bounded intervals).
    double tail_bound = 0.0;
};

struct QuadratureOptions {
    double abs_tol = 1e-12;
    double rel_tol = 0.0;
    int max_subintervals = 20000;
};

using Integrand = std::function<double(double)>;

// Adaptive G7/K15 on a bounded interval with global bisection of the worst panel.
// Intervals spanning many decades (lo > 0) are pre-split geometrically.
QuadratureResult integrate_interval(const Integrand& f, double a, double b,
                                    const QuadratureOptions& opts);

// Integral of f against the radial density of the measure over the interval.
QuadratureResult integrate(const Integrand& f, const MeasureSpec& measure, Interval interval,
                           const QuadratureOptions& opts);

inline QuadratureResult integrate(const Integrand& f, const MeasureSpec& measure,
                                  Interval interval, double tol) {
    return integrate(f, measure, interval, QuadratureOptions{tol, 0.0, 20000});
}

// One fixed K15 panel; used by assembly and tabulation for smooth sub-intervals.
double kronrod15(const Integrand& f, double a, double b);

}  // namespace ineqforge::radial
