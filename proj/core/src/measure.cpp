#include "ineqforge/measure.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "ineqforge/errors.hpp"

namespace ineqforge::radial {

double sphere_area(int d) {
    if (d < 1) throw ParameterError("dimension must satisfy d >= 1");
    return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

MeasureSpec::MeasureSpec(MeasureKind kind, int d, double alpha)
    : kind_(kind), d_(d), alpha_(alpha), sigma_(radial::sphere_area(d)) {}

MeasureSpec MeasureSpec::lebesgue(int d) { return MeasureSpec(MeasureKind::Lebesgue, d, 0.0); }

MeasureSpec MeasureSpec::gaussian(int d) { return MeasureSpec(MeasureKind::Gaussian, d, 0.0); }

MeasureSpec MeasureSpec::power_law(int d, double alpha) {
    return MeasureSpec(MeasureKind::PowerLaw, d, alpha);
}

MeasureSpec MeasureSpec::power_law_kelvin(int d, double alpha) {
    return MeasureSpec(MeasureKind::PowerLawKelvin, d, alpha);
}

double MeasureSpec::density(double r) const {
    const double base = sigma_ * std::pow(r, d_ - 1);
    switch (kind_) {
        case MeasureKind::Lebesgue:
            return base;
        case MeasureKind::Gaussian:
            return base * std::exp(-0.5 * r * r - 0.5 * d_ * std::log(2.0 * std::numbers::pi));
        case MeasureKind::PowerLaw:
            return base * std::pow(1.0 + r * r, alpha_);
        case MeasureKind::PowerLawKelvin:
            return base * std::pow(r, -2.0 * alpha_) * std::pow(1.0 + r * r, alpha_);
    }
    return base;
}

double MeasureSpec::tail_bound(double R) const {
    const double inf = std::numeric_limits<double>::infinity();
    switch (kind_) {
        case MeasureKind::Gaussian: {
            // r^{d-1} e^{-r^2/2} <= R^{d-1} e^{-R^2/2} e^{-(R-(d-1)/R) s} for r = R + s.
            const double rate = R - (d_ - 1) / R;
            return rate > 0.0 ? density(R) / rate : inf;
        }
        case MeasureKind::PowerLaw: {
            const double p = d_ + 2.0 * alpha_;
            if (p >= 0.0 || R <= 0.0) return inf;
            return sigma_ * std::pow(R, p) / (-p);
        }
        default:
            return inf;
    }
}

}  // namespace ineqforge::radial
