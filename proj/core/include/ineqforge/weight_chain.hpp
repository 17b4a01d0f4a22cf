#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "ineqforge/family.hpp"
#include "ineqforge/interp.hpp"

namespace ineqforge::chains {

struct WeightChainSpec {
    FamilyTag family;
    int N = 0;
    // Validity interval in t; t_hi <= 0 selects the family default.
    double t_lo = 0.0;
    double t_hi = 0.0;
    // Geometric tabulation nodes per decade of t for integral-defined maps.
    int nodes_per_decade = 240;
};

// Chain values at one point. For Hardy chains the sample is indexed from the chain variable,
// so x[k] is X_{k+1}(r) in the radial indexing X_1(r) = t.
struct WeightSequenceSample {
    double t = 0.0;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> z;
    std::vector<double> w;
    double partial_sum = 0.0;
    double tail_estimate = 0.0;
    bool tail_converged = false;
    bool underflow = false;
};

// Right-hand side weight at truncation N.
//   Remainder: product-remainder families use sum_{k=1}^N W_k + (1+eps) prod_{j<=N} Y_j.
//   LiteralSum: sum_{k=0}^N W_k with W_N scaled by (1+eps).
// The two agree for Hardy and d = 2 chains.
enum class RhsConvention { Remainder, LiteralSum };

struct Dual {
    double v = 0.0;
    double d = 0.0;
};

// Seed at the deepest recursion level: returns h and h' at s.
using Seed = std::function<Dual(double s)>;

struct RecursionResidual {
    double identity = 0.0;   // |LHS - RHS| of the family's recursion identity
    double compat_a = 0.0;   // |A - delta^2|
    double compat_b = 0.0;   // |B - delta^2|
    bool identity_applies = true;

    double value() const;
};

class WeightChain {
public:
    explicit WeightChain(WeightChainSpec spec);

    const WeightChainSpec& spec() const { return spec_; }
    const FamilyTag& family() const { return spec_.family; }
    double t_lo() const { return spec_.t_lo; }
    double t_hi() const { return spec_.t_hi; }
    bool in_validity(double t) const;

    double chain_variable(double r) const;
    // Inverse of chain_variable on the radial domain.
    double radius(double t) const;
    // Radial domain [r_lo, r_hi] covered by the validity interval.
    double r_min() const;
    double r_max() const;

    double x_map(double t) const;
    double delta(double t) const;
    double gamma(double t) const;
    Dual x_dual(double t) const;
    Dual delta_dual(double t) const;
    Dual gamma_dual(double t) const;

    // Prefactor of the weighted term: 1 (Hardy), (d-2)^2/4, 1/4 (gaussian plane), beta (HPPlane).
    double prefactor() const;
    double z0() const;

    WeightSequenceSample weight_sequence(double t, int N) const;
    WeightSequenceSample weight_sequence(double t) const { return weight_sequence(t, spec_.N); }

    // Truncated weight in the given convention (without the prefactor).
    double rhs_weight(double t, int N, RhsConvention conv, double inflation = 0.0) const;

    // Sum_{k<=N} W_k(1/r).
    double kelvin_reflect(double r) const;

    // The recursion identity at order k with the given deepest seed (default: the extremal one).
    RecursionResidual recursion_residual(double t, int k) const;
    RecursionResidual recursion_residual(double t, int k, const Seed& seed) const;

    // F(t, h_0, h_0') evaluated by composing the recursion k levels deep from a seed;
    // with the extremal seed this is the optimal remainder-level weight.
    double composed_form(double t, int k, const Seed& seed) const;
    Seed extremal_seed() const;

    // Interpolation oracle: X evaluated by direct adaptive quadrature (HP families).
    double x_map_direct(double t) const;

private:
    Dual profile_term(Dual t) const;
    Dual form(Dual t, Dual h) const;
    Dual compose(Dual t, int k, const Seed& seed) const;
    double hardy_top_form(double t, int k, const Seed& seed) const;
    Dual nu_dual(double t) const;
    Dual phi_dual(double t) const;

    void build_hp_tables();
    void build_plane_tables();
    void check_stability() const;

    WeightChainSpec spec_;
    double q_ = 0.0;
    double cd_ = 0.0;
    double t_min_ = 1e-12;
    HermiteTable x_table_;
    HermiteTable nu_table_;
    // HPPlane
    HermiteTable psi_table_;
    HermiteTable phi_table_;
    double t_small_ = 0.02;
    double c0_ = 0.0;
    double e_small_ = 1.0;
    double phi_small_ = 0.0;
};

}  // namespace ineqforge::chains
