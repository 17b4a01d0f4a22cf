#include "ineqforge/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "ineqforge/errors.hpp"
#include "ineqforge/measure.hpp"

namespace ineqforge::radial {
namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    double value;
    double error;
    double floor;
    bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gk15(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double k = fc * kWgk[7];
    double g = fc * kWg[3];
    double kabs = std::abs(k);
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        k += kWgk[j] * (f1 + f2);
        kabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) g += kWg[j / 2] * (f1 + f2);
    }
    const double value = k * h;
    const double floor = 50.0 * std::numeric_limits<double>::epsilon() * kabs * std::abs(h);
    const double err = std::max(std::abs((k - g) * h), floor);
    if (!std::isfinite(value)) {
        throw IntegrabilityError("integrand is not finite on [" + std::to_string(a) + ", " +
                                 std::to_string(b) + "]");
    }
    return Panel{a, b, value, err, floor};
}

std::vector<double> initial_breaks(double a, double b) {
    std::vector<double> br{a};
    if (a > 0.0 && b / a > 16.0) {
        const int panels = static_cast<int>(std::ceil(std::log(b / a) / std::log(4.0)));
        for (int i = 1; i < panels; ++i) br.push_back(a * std::pow(b / a, double(i) / panels));
    } else if (b < 0.0 && a / b > 16.0) {
        const int panels = static_cast<int>(std::ceil(std::log(a / b) / std::log(4.0)));
        for (int i = 1; i < panels; ++i) br.push_back(a * std::pow(b / a, double(i) / panels));
    }
    br.push_back(b);
    return br;
}

}  // namespace

double kronrod15(const Integrand& f, double a, double b) { return gk15(f, a, b).value; }

QuadratureResult integrate_interval(const Integrand& f, double a, double b,
                                    const QuadratureOptions& opts) {
    if (!(b > a)) {
        if (a == b) return {};
        throw ParameterError("integration interval must satisfy lo <= hi");
    }
    std::priority_queue<Panel> heap;
    double total = 0.0;
    double err = 0.0;
    double floor = 0.0;
    const auto br = initial_breaks(a, b);
    for (std::size_t i = 0; i + 1 < br.size(); ++i) {
        Panel p = gk15(f, br[i], br[i + 1]);
        total += p.value;
        err += p.error;
        floor += p.floor;
        heap.push(p);
    }
    double best_err = err;
    // Tolerances below the round-off level of the sum are clamped to it.
    auto target = [&] {
        return std::max({opts.abs_tol, opts.rel_tol * std::abs(total), 4.0 * floor});
    };
    while (err > target()) {
        if (static_cast<int>(heap.size()) >= opts.max_subintervals) {
            if (err <= 1e-6 * std::abs(total) + 1e3 * opts.abs_tol) break;
            throw IntegrabilityError("quadrature estimate did not converge on [" +
                                     std::to_string(a) + ", " + std::to_string(b) +
                                     "]; error estimate " + std::to_string(err));
        }
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // Interval exhausted at machine resolution.
            heap.push(worst);
            if (worst.error > 1e-6 * std::abs(total) + 1e3 * opts.abs_tol) {
                throw IntegrabilityError("non-integrable singularity near r=" +
                                         std::to_string(worst.a));
            }
            break;
        }
        Panel left = gk15(f, worst.a, mid);
        Panel right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        floor += left.floor + right.floor - worst.floor;
        heap.push(left);
        heap.push(right);
        best_err = std::min(best_err, std::max(err, 0.0));
    }
    // Recompute the sum to shed accumulated cancellation in the running total.
    double sum = 0.0;
    double esum = 0.0;
    const int count = static_cast<int>(heap.size());
    while (!heap.empty()) {
        sum += heap.top().value;
        esum += heap.top().error;
        heap.pop();
    }
    best_err = std::min(best_err, esum);
    return QuadratureResult{sum, best_err, count, 0.0};
}

QuadratureResult integrate(const Integrand& f, const MeasureSpec& measure, Interval interval,
                           const QuadratureOptions& opts) {
    if (!(opts.abs_tol > 0.0 || opts.rel_tol > 0.0)) {
        throw ParameterError("quadrature tolerance must be positive");
    }
    if (interval.lo < 0.0) throw DomainError("radial interval must satisfy r >= 0");
    auto g = [&](double r) {
        const double rho = measure.density(r);
        return rho == 0.0 ? 0.0 : f(r) * rho;
    };
    if (!interval.half_line()) return integrate_interval(g, interval.lo, interval.hi, opts);

    // Half-line: geometric panels until the panel contribution and the certified density tail
    // (times the integrand size at the cut) fall below tolerance.
    QuadratureResult acc;
    double lo = interval.lo;
    double hi = std::max(lo + 1.0, 2.0 * lo);
    QuadratureOptions panel_opts = opts;
    for (int panel = 0; panel < 400; ++panel) {
        const QuadratureResult part = integrate_interval(g, lo, hi, panel_opts);
        acc.value += part.value;
        acc.abs_error_estimate += part.abs_error_estimate;
        acc.subintervals += part.subintervals;
        const double tol = std::max(opts.abs_tol, opts.rel_tol * std::abs(acc.value));
        const double fcut = std::abs(f(hi));
        const double density_tail = measure.tail_bound(hi);
        const double tail = std::isfinite(density_tail) ? density_tail * fcut : INFINITY;
        const bool small_panel = std::abs(part.value) <= 1e-3 * tol;
        if (panel >= 2 && small_panel && (tail <= 0.1 * tol || !std::isfinite(density_tail))) {
            acc.tail_bound = std::isfinite(tail) ? tail : std::abs(part.value);
            acc.abs_error_estimate += acc.tail_bound;
            return acc;
        }
        lo = hi;
        hi = 2.0 * hi;
    }
    throw IntegrabilityError("half-line integral did not converge");
}

}  // namespace ineqforge::radial
