#include "ineqforge/mesh.hpp"

#include <cmath>

#include "ineqforge/errors.hpp"

namespace ineqforge::radial {
namespace {

// Cumulative geometric spacing on [0,1]: k cells, first cell smallest, ratio q between cells.
std::vector<double> geometric_unit(int k, double grading) {
    std::vector<double> s(k + 1, 0.0);
    const double q = k > 1 ? std::pow(grading, 1.0 / (k - 1)) : 1.0;
    double h = 1.0;
    for (int i = 1; i <= k; ++i) {
        s[i] = s[i - 1] + h;
        h *= q;
    }
    for (double& x : s) x /= s[k];
    return s;
}

}  // namespace

std::vector<double> graded_mesh(Interval interval, SingularEnds ends, int n, MeshMode mode,
                                double grading) {
    const double lo = interval.lo;
    const double hi = interval.hi;
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) {
        throw ParameterError("mesh interval must be finite with lo < hi");
    }
    if (n < 2) throw ParameterError("mesh needs n >= 2 nodes");
    if (!(grading >= 1.0)) throw ParameterError("mesh grading must be >= 1");
    std::vector<double> x(n);
    const int k = n - 1;
    if (mode == MeshMode::Log) {
        if (!(lo > 0.0)) throw ParameterError("log mesh needs lo > 0");
        const double la = std::log(lo);
        const double lb = std::log(hi);
        for (int i = 0; i < n; ++i) x[i] = std::exp(la + (lb - la) * i / k);
    } else if (mode == MeshMode::Linear || (!ends.left && !ends.right)) {
        for (int i = 0; i < n; ++i) x[i] = lo + (hi - lo) * i / k;
    } else if (ends.left && ends.right) {
        const int kl = k / 2;
        const auto s = geometric_unit(kl, grading);
        const auto t = geometric_unit(k - kl, grading);
        const double mid = 0.5 * (lo + hi);
        for (int i = 0; i <= kl; ++i) x[i] = lo + (mid - lo) * s[i];
        for (int i = 0; i <= k - kl; ++i) x[k - i] = hi - (hi - mid) * t[i];
    } else {
        const auto s = geometric_unit(k, grading);
        for (int i = 0; i < n; ++i) {
            x[i] = ends.left ? lo + (hi - lo) * s[i] : hi - (hi - lo) * s[k - i];
        }
    }
    x.front() = lo;
    x.back() = hi;
    return x;
}

}  // namespace ineqforge::radial
