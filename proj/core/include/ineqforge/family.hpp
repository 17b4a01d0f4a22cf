#pragma once

#include <string>

namespace ineqforge::chains {

enum class FamilyKind {
    HardyInterior,
    HardyExterior,
    GaussianHighDim,
    GaussianPlane,
    HPPlane,
    HPLowDim,
    HPExterior,
};

// Parameters of one inequality family. Use the factories: they check every invariant and
// derive the fixed points the validity interval depends on.
struct FamilyTag {
    FamilyKind kind = FamilyKind::GaussianHighDim;
    int d = 3;
    double a = 1.0;       // Hardy and gaussian plane chain parameter
    double alpha = -1.0;  // Hardy-Poincaré weight exponent
    double beta = 0.75;   // HPPlane prefactor
    double tstar = 2.0;   // fixed point closing the validity interval (d = 2 families)
    double delta_omega = 1.0;  // Hardy fixed point, X(delta) = delta

    static FamilyTag hardy_interior(int d, double a);
    static FamilyTag hardy_interior_radius(int d, double delta_omega);
    static FamilyTag hardy_exterior(int d, double a);
    static FamilyTag gaussian_high_dim(int d);
    static FamilyTag gaussian_plane(double a);
    static FamilyTag hp_plane(double alpha, double beta, double tstar = 2.0);
    static FamilyTag hp_low_dim(int d, double alpha);
    static FamilyTag hp_exterior(int d, double alpha);

    // Throws ParameterError naming the violated constraint.
    void validate() const;

    bool is_hardy() const {
        return kind == FamilyKind::HardyInterior || kind == FamilyKind::HardyExterior;
    }
    bool is_gaussian() const {
        return kind == FamilyKind::GaussianHighDim || kind == FamilyKind::GaussianPlane;
    }
    bool is_hp() const {
        return kind == FamilyKind::HPPlane || kind == FamilyKind::HPLowDim ||
               kind == FamilyKind::HPExterior;
    }
    // Families whose level-N remainder is the product of the Y_j (W_0 = 1 at the base).
    bool product_remainder() const {
        return kind == FamilyKind::GaussianHighDim || kind == FamilyKind::HPLowDim ||
               kind == FamilyKind::HPExterior;
    }
    // Chains defined through integrals, usable only through a tabulated WeightChain.
    bool tabulated() const { return is_hp(); }

    std::string name() const;
    std::string describe() const;
    bool operator==(const FamilyTag&) const = default;
};

std::string to_string(FamilyKind kind);
FamilyKind family_kind_from_string(const std::string& s);

// Closed-form maps; tabulated families throw InitializationError (use WeightChain).
double chain_variable(const FamilyTag& family, double r);
double x_map(const FamilyTag& family, double t);

}  // namespace ineqforge::chains
