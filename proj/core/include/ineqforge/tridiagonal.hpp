#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace ineqforge::spectral {

enum class Coordinate { Linear, LogRadius };

// Symmetric tridiagonal M^{-1/2} (K + S) M^{-1/2} on the interior nodes of a grid with
// Dirichlet ends. K is the gradient part, S the (signed) potential part, M the lumped mass.
struct TridiagonalSystem {
    std::vector<double> diag;
    std::vector<double> off;
    std::vector<double> grid;  // all nodes, ends included, in the coordinate
    Coordinate coordinate = Coordinate::Linear;
    std::vector<double> mass;  // interior nodes
    std::vector<double> k_diag;
    std::vector<double> k_off;
    std::vector<double> p_diag;
    std::vector<double> p_off;

    // Unit mass and no potential split: the matrix itself is the gradient part.
    static TridiagonalSystem from_matrix(std::vector<double> diag, std::vector<double> off);

    std::size_t size() const { return diag.size(); }
    double gershgorin_lo() const;
    double gershgorin_hi() const;
    double gershgorin_radius() const;
    // Number of eigenvalues strictly below x.
    int sturm_count(double x) const;
};

struct EigenBracket {
    double lo = 0.0;
    double hi = 0.0;
    double value() const { return 0.5 * (lo + hi); }
};

// Bisection on Sturm counts down to round-off: width <= 4 eps times the Gershgorin radius.
// sturm_count(lo) == 0 and sturm_count(hi) >= 1.
EigenBracket lambda_min_bracket(const TridiagonalSystem& t);
double lambda_min(const TridiagonalSystem& t);

// Inverse iteration shifted just below the bracket. Returns nodal values on the interior nodes
// in the unscaled variable, normalised to sum m_i v_i^2 = 1 with a positive largest entry.
std::vector<double> ground_state(const TridiagonalSystem& t, const EigenBracket& b);

struct FormParts {
    double dirichlet = 0.0;  // v^T K v
    double potential = 0.0;  // v^T S v
    double value() const { return dirichlet + potential; }
    double scale() const;
};
FormParts form_parts(const TridiagonalSystem& t, const std::vector<double>& v);

// Coefficients of int P v'^2 + S v^2 over int M v^2, all functions of the coordinate.
struct RadialForm {
    std::function<double(double)> stiffness;
    std::function<double(double)> potential;
    std::function<double(double)> mass;
};

// P1 elements, 4-point Gauss per element, lumped mass, Dirichlet at both ends.
TridiagonalSystem assemble_form(const RadialForm& form, std::vector<double> grid,
                                Coordinate coordinate);

}  // namespace ineqforge::spectral
