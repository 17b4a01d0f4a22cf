#include "ineqforge/tridiagonal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "ineqforge/errors.hpp"

namespace ineqforge::spectral {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

constexpr std::array<double, 4> kGaussX{-0.8611363115940526, -0.3399810435848563,
                                        0.3399810435848563, 0.8611363115940526};
constexpr std::array<double, 4> kGaussW{0.3478548451374538, 0.6521451548625461,
                                        0.6521451548625461, 0.3478548451374538};

double row_radius(const TridiagonalSystem& t, std::size_t i) {
    double r = 0.0;
    if (i > 0) r += std::abs(t.off[i - 1]);
    if (i + 1 < t.size()) r += std::abs(t.off[i]);
    return r;
}

}  // namespace

TridiagonalSystem TridiagonalSystem::from_matrix(std::vector<double> diag, std::vector<double> off) {
    if (diag.empty() || off.size() + 1 != diag.size()) {
        throw AssemblyError("tridiagonal system needs n >= 1 diagonal and n-1 off-diagonal entries");
    }
    TridiagonalSystem t;
    t.diag = diag;
    t.off = off;
    t.mass.assign(diag.size(), 1.0);
    t.k_diag = std::move(diag);
    t.k_off = std::move(off);
    t.p_diag.assign(t.k_diag.size(), 0.0);
    t.p_off.assign(t.k_off.size(), 0.0);
    return t;
}

double TridiagonalSystem::gershgorin_lo() const {
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < size(); ++i) lo = std::min(lo, diag[i] - row_radius(*this, i));
    return lo;
}

double TridiagonalSystem::gershgorin_hi() const {
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < size(); ++i) hi = std::max(hi, diag[i] + row_radius(*this, i));
    return hi;
}

double TridiagonalSystem::gershgorin_radius() const {
    return std::max(std::abs(gershgorin_lo()), std::abs(gershgorin_hi()));
}

int TridiagonalSystem::sturm_count(double x) const {
    double bmax = 0.0;
    for (double b : off) bmax = std::max(bmax, b * b);
    const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, bmax);
    int count = 0;
    double q = diag[0] - x;
    if (std::abs(q) <= pivmin) q = -pivmin;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < size(); ++i) {
        q = diag[i] - x - off[i - 1] * off[i - 1] / q;
        if (std::abs(q) <= pivmin) q = -pivmin;
        if (q < 0.0) ++count;
    }
    return count;
}

EigenBracket lambda_min_bracket(const TridiagonalSystem& t) {
    if (t.size() == 0) throw AssemblyError("empty tridiagonal system");
    const double g = std::max(t.gershgorin_radius(), std::numeric_limits<double>::min());
    double lo = t.gershgorin_lo() - 4.0 * kEps * g;
    double hi = t.gershgorin_hi() + 4.0 * kEps * g;
    if (t.sturm_count(lo) > 0) lo -= 0.5 * g;
    while (hi - lo > 4.0 * kEps * g) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (t.sturm_count(mid) >= 1) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return {lo, hi};
}

double lambda_min(const TridiagonalSystem& t) { return lambda_min_bracket(t).value(); }

std::vector<double> ground_state(const TridiagonalSystem& t, const EigenBracket& b) {
    const std::size_t n = t.size();
    const double g = std::max(t.gershgorin_radius(), std::numeric_limits<double>::min());
    const double shift = b.lo - std::max(b.hi - b.lo, 8.0 * kEps * g);
    // LDL^T of T - shift, positive definite by construction.
    std::vector<double> piv(n);
    std::vector<double> mult(n > 0 ? n - 1 : 0);
    piv[0] = t.diag[0] - shift;
    for (std::size_t i = 1; i < n; ++i) {
        if (!(piv[i - 1] > 0.0)) piv[i - 1] = kEps * g;
        mult[i - 1] = t.off[i - 1] / piv[i - 1];
        piv[i] = t.diag[i] - shift - mult[i - 1] * t.off[i - 1];
    }
    if (!(piv[n - 1] > 0.0)) piv[n - 1] = kEps * g;

    std::vector<double> y(n, 1.0 / std::sqrt(double(n)));
    auto solve = [&](std::vector<double>& x) {
        for (std::size_t i = 1; i < n; ++i) x[i] -= mult[i - 1] * x[i - 1];
        for (std::size_t i = 0; i < n; ++i) x[i] /= piv[i];
        for (std::size_t i = n - 1; i-- > 0;) x[i] -= mult[i] * x[i + 1];
    };
    auto normalise = [&](std::vector<double>& x) {
        double s = 0.0;
        for (double v : x) s += v * v;
        s = std::sqrt(s);
        for (double& v : x) v /= s;
    };
    std::vector<double> prev;
    for (int it = 0; it < 60; ++it) {
        prev = y;
        solve(y);
        normalise(y);
        double diff = 0.0;
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += y[i] * prev[i];
        for (std::size_t i = 0; i < n; ++i) {
            diff = std::max(diff, std::abs(y[i] - std::copysign(1.0, dot) * prev[i]));
        }
        if (it >= 3 && diff < 1e-14) break;
    }
    std::vector<double> v(n);
    double peak = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = y[i] / std::sqrt(t.mass[i]);
        if (std::abs(v[i]) > std::abs(peak)) peak = v[i];
    }
    if (peak < 0.0) {
        for (double& x : v) x = -x;
    }
    return v;
}

double FormParts::scale() const { return std::abs(dirichlet) + std::abs(potential); }

FormParts form_parts(const TridiagonalSystem& t, const std::vector<double>& v) {
    if (v.size() != t.size()) throw AssemblyError("vector length does not match the system");
    FormParts p;
    for (std::size_t i = 0; i < v.size(); ++i) {
        p.dirichlet += t.k_diag[i] * v[i] * v[i];
        p.potential += t.p_diag[i] * v[i] * v[i];
        if (i + 1 < v.size()) {
            p.dirichlet += 2.0 * t.k_off[i] * v[i] * v[i + 1];
            p.potential += 2.0 * t.p_off[i] * v[i] * v[i + 1];
        }
    }
    return p;
}

TridiagonalSystem assemble_form(const RadialForm& form, std::vector<double> grid,
                                Coordinate coordinate) {
    const std::size_t nodes = grid.size();
    if (nodes < 3) throw AssemblyError("assembly needs at least 3 grid nodes");
    for (std::size_t i = 1; i < nodes; ++i) {
        if (!(grid[i] > grid[i - 1])) throw AssemblyError("grid must be strictly increasing");
    }
    const std::size_t n = nodes - 2;
    TridiagonalSystem t;
    t.coordinate = coordinate;
    t.k_diag.assign(n, 0.0);
    t.k_off.assign(n - 1, 0.0);
    t.p_diag.assign(n, 0.0);
    t.p_off.assign(n - 1, 0.0);
    t.mass.assign(n, 0.0);

    auto finite = [](double v, const char* what, double x) {
        if (!std::isfinite(v)) {
            throw AssemblyError(std::string("non-finite ") + what + " coefficient at " +
                                std::to_string(x));
        }
        return v;
    };
    for (std::size_t e = 0; e + 1 < nodes; ++e) {
        const double x0 = grid[e];
        const double x1 = grid[e + 1];
        const double h = x1 - x0;
        const double mid = 0.5 * (x0 + x1);
        double pint = 0.0;
        double sll = 0.0;
        double slr = 0.0;
        double srr = 0.0;
        double ml = 0.0;
        double mr = 0.0;
        for (std::size_t q = 0; q < kGaussX.size(); ++q) {
            const double x = mid + 0.5 * h * kGaussX[q];
            const double w = 0.5 * h * kGaussW[q];
            const double pl = 0.5 * (1.0 - kGaussX[q]);
            const double pr = 0.5 * (1.0 + kGaussX[q]);
            const double p = finite(form.stiffness(x), "stiffness", x);
            const double s = finite(form.potential(x), "potential", x);
            const double m = finite(form.mass(x), "mass", x);
            pint += w * p;
            sll += w * s * pl * pl;
            slr += w * s * pl * pr;
            srr += w * s * pr * pr;
            ml += w * m * pl;
            mr += w * m * pr;
        }
        const double k = pint / (h * h);
        // Global interior indices of the element's left and right nodes.
        const bool left_free = e >= 1;
        const bool right_free = e + 1 <= n;
        const std::size_t il = e - 1;
        const std::size_t ir = e;
        if (left_free) {
            t.k_diag[il] += k;
            t.p_diag[il] += sll;
            t.mass[il] += ml;
        }
        if (right_free) {
            t.k_diag[ir] += k;
            t.p_diag[ir] += srr;
            t.mass[ir] += mr;
        }
        if (left_free && right_free) {
            t.k_off[il] -= k;
            t.p_off[il] += slr;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!(t.mass[i] > 0.0)) {
            throw AssemblyError("non-positive lumped mass at node " + std::to_string(grid[i + 1]));
        }
    }
    t.diag.resize(n);
    t.off.resize(n - 1);
    for (std::size_t i = 0; i < n; ++i) t.diag[i] = (t.k_diag[i] + t.p_diag[i]) / t.mass[i];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        t.off[i] = (t.k_off[i] + t.p_off[i]) / std::sqrt(t.mass[i] * t.mass[i + 1]);
    }
    t.grid = std::move(grid);
    return t;
}

}  // namespace ineqforge::spectral
