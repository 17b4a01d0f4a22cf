#pragma once

#include <functional>

namespace ineqforge::chains {

// nu_3(s) = int_0^s dσ / (√σ (1+σ²)), closed form.
double nu3(double s);

// nu_d(s) = int_0^s dσ / (1 + σ^{2/(d-2)}) for d >= 4, adaptive quadrature; d = 3 returns nu3.
double nu(int d, double s);

// Derivative of nu_d.
double nu_prime(int d, double s);

// Largest root of t (a - log t) = 1; a = 1 gives 1.
double fixed_point_tstar(double a);

// Smallest positive root of t (a - log t) = 1 for a >= 1.
double fixed_point_small(double a);

// a_Ω = log δ + 1/δ.
double hardy_parameter_for_radius(double delta_omega);

// zeta_d = (8/(d-2))^{(d-2)/(d-4)}, the positive zero of gamma_d for d >= 5.
double hp_zeta(int d);

// Bisection on a sign change, polished to the floating-point resolution of the bracket.
double bisect_root(const std::function<double(double)>& g, double lo, double hi);

}  // namespace ineqforge::chains
