#include "ineqforge/special.hpp"

#include <cmath>
#include <numbers>

#include "ineqforge/errors.hpp"
#include "ineqforge/quadrature.hpp"

namespace ineqforge::chains {

double nu3(double s) {
    if (s < 0.0) throw DomainError("nu_3 needs s >= 0");
    if (s == 0.0) return 0.0;
    const double x = std::sqrt(2.0 * s);
    const double at = std::atan(1.0 + x) - std::atan(1.0 - x);
    const double lg = std::log1p(2.0 * x / (1.0 - x + s));
    return (at + 0.5 * lg) / std::numbers::sqrt2;
}

double nu(int d, double s) {
    if (d < 3) throw ParameterError("nu_d needs d >= 3");
    if (s < 0.0) throw DomainError("nu_d needs s >= 0");
    if (d == 3) return nu3(s);
    if (s == 0.0) return 0.0;
    const double q = 2.0 / (d - 2);
    auto f = [q](double x) { return 1.0 / (1.0 + std::pow(x, q)); };
    return radial::integrate_interval(f, 0.0, s, {1e-14, 1e-15, 20000}).value;
}

double nu_prime(int d, double s) {
    if (s < 0.0) throw DomainError("nu_d needs s >= 0");
    if (d == 3) return 1.0 / (std::sqrt(s) * (1.0 + s * s));
    return 1.0 / (1.0 + std::pow(s, 2.0 / (d - 2)));
}

double bisect_root(const std::function<double(double)>& g, double lo, double hi) {
    double glo = g(lo);
    double ghi = g(hi);
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if ((glo > 0.0) == (ghi > 0.0)) throw ParameterError("root bracket has no sign change");
    for (int it = 0; it < 2000; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double gm = g(mid);
        if (gm == 0.0) return mid;
        if ((gm > 0.0) == (glo > 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return std::abs(g(lo)) <= std::abs(g(hi)) ? lo : hi;
}

double fixed_point_tstar(double a) {
    if (!(a >= 1.0)) throw ParameterError("fixed point t* needs a >= 1");
    if (a == 1.0) return 1.0;
    auto g = [a](double t) { return t * (a - std::log(t)) - 1.0; };
    return bisect_root(g, std::exp(a - 1.0), std::exp(a));
}

double fixed_point_small(double a) {
    if (!(a >= 1.0)) throw ParameterError("Hardy chain needs a >= 1");
    if (a == 1.0) return 1.0;
    auto g = [a](double t) { return t * (a - std::log(t)) - 1.0; };
    // g < 0 near 0 and g(e^{a-1}) = e^{a-1} - 1 > 0.
    return bisect_root(g, 1e-300, std::exp(a - 1.0));
}

double hardy_parameter_for_radius(double delta_omega) {
    if (!(delta_omega > 0.0)) throw ParameterError("domain radius must be positive");
    return std::log(delta_omega) + 1.0 / delta_omega;
}

double hp_zeta(int d) {
    if (d < 5) throw ParameterError("zeta_d needs d >= 5");
    return std::pow(8.0 / (d - 2), double(d - 2) / (d - 4));
}

}  // namespace ineqforge::chains
