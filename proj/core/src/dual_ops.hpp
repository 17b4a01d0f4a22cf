#pragma once

#include <cmath>

#include "ineqforge/weight_chain.hpp"

namespace ineqforge::chains {

inline Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
inline Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
inline Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
inline Dual operator/(Dual a, Dual b) {
    return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}
inline Dual operator+(Dual a, double c) { return {a.v + c, a.d}; }
inline Dual operator+(double c, Dual a) { return {a.v + c, a.d}; }
inline Dual operator-(Dual a, double c) { return {a.v - c, a.d}; }
inline Dual operator-(double c, Dual a) { return {c - a.v, -a.d}; }
inline Dual operator*(double c, Dual a) { return {c * a.v, c * a.d}; }
inline Dual operator*(Dual a, double c) { return {c * a.v, c * a.d}; }
inline Dual operator/(Dual a, double c) { return {a.v / c, a.d / c}; }
inline Dual operator/(double c, Dual a) { return {c / a.v, -c * a.d / (a.v * a.v)}; }

inline Dual dexp(Dual a) {
    const double e = std::exp(a.v);
    return {e, e * a.d};
}
inline Dual dlog(Dual a) { return {std::log(a.v), a.d / a.v}; }
inline Dual dlog1p(Dual a) { return {std::log1p(a.v), a.d / (1.0 + a.v)}; }
inline Dual dsqrt(Dual a) {
    const double s = std::sqrt(a.v);
    return {s, 0.5 * a.d / s};
}
inline Dual dpow(Dual a, double q) {
    const double p = std::pow(a.v, q);
    return {p, q * p / a.v * a.d};
}
inline Dual var(double t) { return {t, 1.0}; }

}  // namespace ineqforge::chains
