#include "ineqforge/profile.hpp"

#include <cmath>
#include <memory>

#include "ineqforge/errors.hpp"

namespace ineqforge::radial {
namespace {

// C^1 smoothstep ramp: 0 below 0, 1 above 1.
double ramp(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return x * x * (3.0 - 2.0 * x);
}

double dramp(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    return 6.0 * x * (1.0 - x);
}

RadialProfile bump(const ProfileParams& p) {
    if (!(p.r1 > p.r0) || p.r0 < 0.0) throw ParameterError("bump needs 0 <= r0 < r1");
    const double r0 = p.r0;
    const double r1 = p.r1;
    const double half = 0.5 * (r1 - r0);
    const auto c = std::make_shared<std::vector<double>>(p.coeffs);
    // 1 + x q(x) with q(x) = c0 + c1 x + ...
    auto poly = [c](double x, double& dp) {
        double q = 0.0;
        double dq = 0.0;
        for (std::size_t i = c->size(); i-- > 0;) {
            dq = dq * x + q;
            q = q * x + (*c)[i];
        }
        dp = q + x * dq;
        return 1.0 + x * q;
    };
    RadialProfile out;
    out.r0 = r0;
    out.r1 = r1;
    out.ell = p.ell;
    out.name = "bump";
    out.f = [=](double r) {
        const double s = (r - r0) * (r1 - r) / (half * half);
        double dp = 0.0;
        return s * s * poly((r - r0) / (r1 - r0), dp);
    };
    out.df = [=](double r) {
        const double s = (r - r0) * (r1 - r) / (half * half);
        const double ds = (r1 + r0 - 2.0 * r) / (half * half);
        double dp = 0.0;
        const double pv = poly((r - r0) / (r1 - r0), dp);
        return 2.0 * s * ds * pv + s * s * dp / (r1 - r0);
    };
    return out;
}

RadialProfile gaussian(const ProfileParams& p, double sign) {
    if (!(p.eps > 0.0 && p.eps < 1.0)) throw ParameterError("gaussian trial needs eps in (0,1)");
    const double c = sign * (1.0 - p.eps) / 4.0;
    RadialProfile out;
    out.r0 = 0.0;
    out.ell = p.ell;
    out.name = sign < 0 ? "gaussian" : "gaussian_growing";
    out.f = [c](double r) { return std::exp(c * r * r); };
    out.df = [c](double r) { return 2.0 * c * r * std::exp(c * r * r); };
    return out;
}

RadialProfile hardy(const ProfileParams& p) {
    if (!(p.r1 > p.r0) || !(p.r0 > 0.0)) throw ParameterError("hardy trial needs 0 < r0 < r1");
    if (p.d < 3) throw ParameterError("hardy trial needs d >= 3");
    const double e = 0.5 * (p.d - 2);
    const double l0 = std::log(p.r0);
    const double l1 = std::log(p.r1);
    const double w = 0.25 * (l1 - l0);
    RadialProfile out;
    out.r0 = p.r0;
    out.r1 = p.r1;
    out.ell = p.ell;
    out.name = "hardy";
    out.f = [=](double r) {
        const double x = std::log(r);
        return std::pow(r, -e) * ramp((x - l0) / w) * ramp((l1 - x) / w);
    };
    out.df = [=](double r) {
        const double x = std::log(r);
        const double a = ramp((x - l0) / w);
        const double b = ramp((l1 - x) / w);
        const double ds = (dramp((x - l0) / w) * b - a * dramp((l1 - x) / w)) / (w * r);
        return std::pow(r, -e) * (ds - e * a * b / r);
    };
    return out;
}

RadialProfile coordinate(const ProfileParams& p) {
    RadialProfile out;
    out.r0 = 0.0;
    out.ell = p.ell > 0 ? p.ell : 1;
    out.name = "coordinate";
    if (std::isinf(p.cutoff)) {
        out.f = [](double r) { return r; };
        out.df = [](double) { return 1.0; };
    } else {
        if (!(p.cutoff > 0.0)) throw ParameterError("coordinate trial needs cutoff > 0");
        const double k = 0.5 / (p.cutoff * p.cutoff);
        out.f = [k](double r) { return r * std::exp(-k * r * r); };
        out.df = [k](double r) { return (1.0 - 2.0 * k * r * r) * std::exp(-k * r * r); };
    }
    return out;
}

}  // namespace

RadialProfile trial_profile(std::string_view tag, const ProfileParams& params) {
    if (tag == "bump") return bump(params);
    if (tag == "gaussian") return gaussian(params, -1.0);
    if (tag == "gaussian_growing") return gaussian(params, 1.0);
    if (tag == "hardy") return hardy(params);
    if (tag == "coordinate") return coordinate(params);
    if (tag == "zero") {
        RadialProfile out;
        out.r0 = params.r0;
        out.r1 = params.r1;
        out.ell = params.ell;
        out.name = "zero";
        out.f = [](double) { return 0.0; };
        out.df = [](double) { return 0.0; };
        return out;
    }
    throw ParameterError("unknown trial profile '" + std::string(tag) +
                         "' (expected zero, bump, gaussian, gaussian_growing, hardy, coordinate)");
}

RadialProfile kelvin_transform(const RadialProfile& u, int d) {
    if (!(u.r0 > 0.0)) throw DomainError("Kelvin transform needs support away from the origin");
    RadialProfile v;
    v.r0 = 1.0 / u.r1;
    v.r1 = 1.0 / u.r0;
    v.ell = u.ell;
    v.name = "kelvin(" + u.name + ")";
    auto f = u.f;
    auto df = u.df;
    v.f = [=](double p) { return std::pow(p, 2 - d) * f(1.0 / p); };
    v.df = [=](double p) {
        return (2 - d) * std::pow(p, 1 - d) * f(1.0 / p) - std::pow(p, -d) * df(1.0 / p);
    };
    return v;
}

RadialProfile affine(const RadialProfile& u, double scale, double shift) {
    RadialProfile v = u;
    auto f = u.f;
    auto df = u.df;
    v.f = [=](double r) { return scale * f(r) + shift; };
    v.df = [=](double r) { return scale * df(r); };
    return v;
}

}  // namespace ineqforge::radial
