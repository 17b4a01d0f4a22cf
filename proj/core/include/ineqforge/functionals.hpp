#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>

#include "ineqforge/profile.hpp"
#include "ineqforge/weight_chain.hpp"

namespace ineqforge::functionals {

using radial::RadialProfile;

struct FunctionalValue {
    double dirichlet = 0.0;
    // Signed contributions; total = dirichlet + sum of potentials.
    std::map<std::string, double> potentials;
    double total = 0.0;
    // Independent representation of the same number: expansion of the square for H, G, I and
    // the Kelvin dual I[Kelvin u] for J.
    std::optional<double> cross_check;
    std::optional<double> rhs;

    double scale() const;
    // 1e-8 of the term magnitudes.
    double tolerance() const { return 1e-8 * scale(); }
};

FunctionalValue hardy_functional(const RadialProfile& u, int d);
FunctionalValue gaussian_functional(const RadialProfile& u, int d);
FunctionalValue hp_functional(const RadialProfile& u, int d, double alpha);
// Requires the support inside B_{1/R}, R = zeta^{-1/(d-2)}.
FunctionalValue hp_exterior_functional(const RadialProfile& u, int d, double alpha);

// Expansion of the square for I with a trial h(r):
//   I[u] = int |grad u + g u x|^2 dmu_alpha + int f_h u^2 dmu_{alpha-2},  g = (h+alpha)/(1+r^2),
//   f_h = (1+r^2) r h' + ((d-2) r^2 + d) h - r^2 h^2.
struct SquareForm {
    double square = 0.0;
    double weighted = 0.0;
};
SquareForm hp_square_form(const RadialProfile& u, int d, double alpha,
                          const std::function<chains::Dual(double)>& h);

// Truncated weighted term of the family's improved inequality, prefactor included.
double weighted_rhs(const RadialProfile& u, const chains::WeightChain& chain, int N,
                    chains::RhsConvention conv = chains::RhsConvention::Remainder,
                    double inflation = 0.0);

// The functional the family's improved inequality is stated for (H, G, I or J).
FunctionalValue family_functional(const RadialProfile& u, const chains::WeightChain& chain);

struct LambdaConstant {
    double value = 0.0;
    bool fails = false;  // alpha = -(d-2)/2: the inequality fails
    int regime = 0;      // 1: alpha <= -d, 2: -d < alpha <= -(d+2)/2, 3: above
};
// Boundary points belong to the left regime; both formulas agree there.
LambdaConstant lambda_constant(double alpha, int d);

enum class MeanZero { Require, Subtract };

// Gaussian mean of an l = 0 profile.
double gaussian_mean(const RadialProfile& u, int d);

// int |x|^2 u^2 dmu / int |grad u|^2 dmu.
double mouhot_ratio(const RadialProfile& u, int d, MeanZero mode = MeanZero::Require);

}  // namespace ineqforge::functionals
