#pragma once

#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace ineqforge::radial {

// Separable trial function f(r) Y_l with analytic radial derivative.
struct RadialProfile {
    std::function<double(double)> f;
    std::function<double(double)> df;
    double r0 = 0.0;
    double r1 = std::numeric_limits<double>::infinity();
    int ell = 0;
    std::string name;

    bool in_support(double r) const { return r >= r0 && r <= r1; }
    double u(double r) const { return in_support(r) ? f(r) : 0.0; }
    double du(double r) const { return in_support(r) ? df(r) : 0.0; }
};

struct ProfileParams {
    double r0 = 1.0;
    double r1 = 2.0;
    double eps = 0.5;
    double cutoff = std::numeric_limits<double>::infinity();
    int d = 3;
    int ell = 0;
    // Polynomial modulation 1 + c1 x + c2 x^2 + ... of the bump, x in [0,1].
    std::vector<double> coeffs;
};

// Tags: zero, bump, gaussian, gaussian_growing, hardy, coordinate.
RadialProfile trial_profile(std::string_view tag, const ProfileParams& params = {});

// v(rho) = rho^{2-d} u(1/rho), supported on [1/r1, 1/r0].
RadialProfile kelvin_transform(const RadialProfile& u, int d);

// Profile times a constant, plus a constant shift on its support.
RadialProfile affine(const RadialProfile& u, double scale, double shift);

}  // namespace ineqforge::radial
