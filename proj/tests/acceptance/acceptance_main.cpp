#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "ineqforge/functionals.hpp"
#include "ineqforge/measure.hpp"
#include "ineqforge/profile.hpp"
#include "ineqforge/quadrature.hpp"
#include "ineqforge/special.hpp"
#include "ineqforge/spectral.hpp"
#include "ineqforge/tridiagonal.hpp"
#include "ineqforge/weight_chain.hpp"

using namespace ineqforge;
using chains::FamilyTag;
using chains::WeightChain;
using spectral::AssemblyOptions;
using spectral::Domain;
using spectral::Verdict;

namespace {

// Pinned tolerances.
constexpr double kIdentityTol = 1e-8;
constexpr double kNuTol = 1e-10;
constexpr double kFixedPointTol = 1e-12;
constexpr double kZetaTol = 1e-12;
constexpr double kCrossCheckTol = 1e-8;
constexpr double kNormalisationTol = 1e-10;
constexpr double kMouhotTol = 1e-8;
constexpr double kBruteForceTol = 1e-10;
constexpr double kPiSquaredTol = 0.005;
constexpr double kConvergenceLo = 3.5;
constexpr double kConvergenceHi = 4.5;
constexpr double kHardyConstantTol = 0.02;
constexpr double kWitnessTol = 1e-6;
constexpr double kProbeTol = 1e-3;
constexpr int kFinestNodes = 4000;

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void line(int id, bool ok, const std::string& what, const std::string& detail, double secs) {
    std::printf("[%s] criterion %d: %s | %s | %.2fs\n", ok ? "PASS" : "FAIL", id, what.c_str(),
                detail.c_str(), secs);
    if (!ok) ++failures;
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

void lambda_table() {
    const auto t0 = std::chrono::steady_clock::now();
    struct Case {
        double alpha;
        int d;
        double expected;
    };
    const std::vector<Case> cases{
        {-5.0, 3, 10.0},   {-3.0, 3, 6.0},     {-2.75, 3, 5.0},    {-2.5, 3, 4.0},
        {-2.0, 3, 2.25},   {-0.25, 3, 0.0625}, {-6.0, 4, 12.0},    {-4.5, 4, 9.0},
        {-3.5, 4, 6.0},     {-0.5, 4, 0.25},    {-10.0, 5, 20.0},   {-3.0, 2, 6.0},
    };
    bool ok = true;
    int exact = 0;
    for (const auto& c : cases) {
        const auto l = functionals::lambda_constant(c.alpha, c.d);
        if (!l.fails && l.value == c.expected) {
            ++exact;
        } else {
            ok = false;
        }
    }
    int tags = 0;
    for (int d : {2, 3, 4, 5, 6}) {
        if (d == 2) continue;
        if (functionals::lambda_constant(-0.5 * (d - 2), d).fails) ++tags;
    }
    ok = ok && tags == 4;
    // Continuity at the regime boundaries.
    bool continuous = true;
    for (int d = 2; d <= 8; ++d) {
        const double a1 = -double(d);
        const double a2 = -0.5 * (d + 2);
        continuous = continuous && (-2.0 * a1 == -2.0 * (d + 2.0 * a1));
        const double s = d - 2 + 2.0 * a2;
        continuous = continuous && (-2.0 * (d + 2.0 * a2) == 0.25 * s * s);
        continuous = continuous && functionals::lambda_constant(a1, d).value == -2.0 * a1;
    }
    ok = ok && continuous;
    line(1, ok, "weight-exponent constant table",
         std::to_string(exact) + "/12 exact, " + std::to_string(tags) + "/4 failure tags, continuity " +
             (continuous ? "ok" : "broken"),
         seconds_since(t0));
}

void verification() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<int> schedule{1000, 2000, kFinestNodes};
    int runs = 0;
    int verified = 0;
    double worst = INFINITY;
    std::string failed;
    auto check = [&](const WeightChain& chain, const Domain& dom, int N, const std::string& tag) {
        AssemblyOptions o;
        o.N = N;
        const auto rep = spectral::verify_inequality(chain, dom, o, schedule);
        ++runs;
        bool ok = rep.verdict == Verdict::Verified && rep.grid_size >= kFinestNodes &&
                  rep.refinements.size() >= 3;
        for (const auto& r : rep.refinements) {
            worst = std::min(worst, r.lambda_min / std::max(r.tolerance, 1e-300));
        }
        if (ok) {
            ++verified;
        } else {
            failed += " " + tag + "/N=" + std::to_string(N);
        }
    };
    for (int N = 0; N <= 2; ++N) {
        WeightChain c({FamilyTag::hardy_interior(3, 1.0), N});
        check(c, Domain::radii(1e-6, 1.0), N, "hardy");
    }
    for (int d = 3; d <= 5; ++d) {
        for (int N = 0; N <= 3; ++N) {
            WeightChain c({FamilyTag::gaussian_high_dim(d), N});
            check(c, Domain::radii(0.1, 25.0), N, "gaussian_d" + std::to_string(d));
        }
    }
    for (int N = 1; N <= 2; ++N) {
        WeightChain c({FamilyTag::gaussian_plane(2.0), N});
        check(c, Domain::radii(c.r_min() + 0.1, 50.0), N, "gaussian_plane");
    }
    for (int d = 3; d <= 4; ++d) {
        for (double alpha : {-1.0, -3.0}) {
            for (int N = 0; N <= 2; ++N) {
                WeightChain c({FamilyTag::hp_low_dim(d, alpha), N});
                check(c, Domain::radii(0.5, 100.0), N, "hp_d" + std::to_string(d));
            }
        }
    }
    for (int N = 0; N <= 1; ++N) {
        WeightChain c({FamilyTag::hp_exterior(5, -1.0), N});
        check(c, spectral::default_domain(c), N, "hp_exterior");
    }
    line(2, verified == runs, "inequality verification",
         std::to_string(verified) + "/" + std::to_string(runs) +
             " verified, finest grid " + std::to_string(kFinestNodes) +
             " nodes, min lambda/tol " + fmt("%.3g", worst) + failed,
         seconds_since(t0));
}

void falsification() {
    const auto t0 = std::chrono::steady_clock::now();
    int hits = 0;
    int cases = 0;
    std::string detail;
    auto check = [&](const WeightChain& chain, const AssemblyOptions& o, const std::string& tag) {
        const auto rep = spectral::falsify_inflation(chain, o);
        ++cases;
        const bool ok = rep.verdict == Verdict::Falsified && rep.witness && rep.witness->valid &&
                        rep.witness->q_quadrature < 0.0 &&
                        std::abs(rep.witness->q_quadrature - rep.witness->q_discrete) <=
                            kWitnessTol * rep.witness->scale;
        if (ok) ++hits;
        char buf[160];
        std::snprintf(buf, sizeof buf, " %s:%s@[%.3g,%.3g]", tag.c_str(),
                      spectral::to_string(rep.verdict).c_str(), rep.domain.log_r_in,
                      rep.domain.log_r_out);
        detail += buf;
    };
    for (int N = 0; N <= 1; ++N) {
        WeightChain c({FamilyTag::hardy_interior(3, 1.0), N});
        AssemblyOptions o;
        o.N = N;
        o.inflation = 0.5;
        check(c, o, "hardy_N" + std::to_string(N));
    }
    for (int N = 0; N <= 1; ++N) {
        WeightChain c({FamilyTag::gaussian_high_dim(3), N});
        AssemblyOptions o;
        o.N = N;
        o.inflation = 0.5;
        check(c, o, "gaussian_N" + std::to_string(N));
    }
    {
        WeightChain c({FamilyTag::gaussian_high_dim(3), 0});
        AssemblyOptions o;
        o.extra_r2 = 0.01;
        check(c, o, "extra_r2");
        AssemblyOptions o2;
        o2.extra_const = 0.01;
        check(c, o2, "extra_const");
    }
    line(3, hits == cases, "optimality falsification",
         std::to_string(hits) + "/" + std::to_string(cases) + " falsified (log radii)" + detail,
         seconds_since(t0));

    // Literal reading of the truncated sum for d >= 4 (information only).
    std::string info;
    for (auto [d, N] : {std::pair{4, 2}, std::pair{5, 1}}) {
        WeightChain c({FamilyTag::gaussian_high_dim(d), N});
        AssemblyOptions o;
        o.N = N;
        o.conv = chains::RhsConvention::LiteralSum;
        const auto rep = spectral::verify_inequality(c, Domain::radii(0.1, 25.0), o);
        info += " d=" + std::to_string(d) + ",N=" + std::to_string(N) + ": " +
                spectral::to_string(rep.verdict) + fmt(" (lambda_min %.3g)", rep.lambda_min);
    }
    std::printf("[INFO] literal truncated sum, gaussian:%s\n", info.c_str());
}

void identities() {
    const auto t0 = std::chrono::steady_clock::now();
    struct Fam {
        std::string name;
        FamilyTag tag;
    };
    const std::vector<Fam> fams{
        {"hardy_d3", FamilyTag::hardy_interior(3, 1.0)},
        {"hardy_exterior_d4", FamilyTag::hardy_exterior(4, 1.5)},
        {"gaussian_d3", FamilyTag::gaussian_high_dim(3)},
        {"gaussian_d5", FamilyTag::gaussian_high_dim(5)},
        {"gaussian_plane", FamilyTag::gaussian_plane(2.0)},
        {"hp_d3", FamilyTag::hp_low_dim(3, -1.0)},
        {"hp_d4", FamilyTag::hp_low_dim(4, -3.0)},
        {"hp_exterior_d5", FamilyTag::hp_exterior(5, -1.0)},
        {"hp_plane", FamilyTag::hp_plane(-1.0, 0.75, 2.0)},
    };
    std::mt19937_64 rng(20261019);
    bool ok = true;
    std::string detail;
    for (const auto& f : fams) {
        const int k = 3;
        WeightChain chain({f.tag, k});
        const double hi = std::min(chain.t_hi(), 10.0) * 0.99;
        const double lo = std::max(chain.t_lo(), 1e-3 * hi);
        std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            worst = std::max(worst, chain.recursion_residual(std::exp(u(rng)), k).value());
        }
        ok = ok && worst < kIdentityTol;
        detail += " " + f.name + fmt("=%.1e", worst);
    }
    line(4, ok, "recursion identities (100 points each, hp_plane: compatibility only)", detail,
         seconds_since(t0));
}

void special_functions() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst_nu = 0.0;
    for (int i = 0; i <= 90; ++i) {
        const double s = std::pow(10.0, -6.0 + 9.0 * i / 90.0);
        // sigma = u^2 removes the endpoint singularity.
        const auto q = radial::integrate_interval(
            [](double u) { return 2.0 / (1.0 + u * u * u * u); }, 0.0, std::sqrt(s),
            {1e-300, 1e-14, 20000});
        worst_nu = std::max(worst_nu, std::abs(chains::nu3(s) - q.value) / q.value);
    }
    double worst_fp = 0.0;
    bool above = true;
    for (double a : {1.5, 2.0, 3.0}) {
        const double t = chains::fixed_point_tstar(a);
        worst_fp = std::max(worst_fp, std::abs(t * (a - std::log(t)) - 1.0));
        above = above && t > std::exp(a - 1.0);
    }
    WeightChain ext({FamilyTag::hp_exterior(5, -1.0), 1});
    const double g = std::abs(ext.gamma(chains::hp_zeta(5)));
    const bool ok = worst_nu < kNuTol && worst_fp < kFixedPointTol && above && g < kZetaTol;
    line(5, ok, "special functions",
         fmt("nu_3 rel err %.2e", worst_nu) + fmt(", fixed-point residual %.2e", worst_fp) +
             (above ? ", t*>e^{a-1}" : ", t* below e^{a-1}") + fmt(", |gamma_5(zeta)| %.2e", g),
         seconds_since(t0));
}

void cross_checks() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    auto random_bump = [&](double lo, double hi_max, int d, int ell) {
        radial::ProfileParams p;
        p.r0 = lo + (0.5 * hi_max - lo) * U(rng);
        p.r1 = p.r0 + (hi_max - p.r0) * (0.3 + 0.7 * U(rng));
        p.d = d;
        p.ell = ell;
        p.coeffs = {2.0 * U(rng) - 1.0, 2.0 * U(rng) - 1.0, U(rng) - 0.5};
        return radial::trial_profile("bump", p);
    };
    double g_err = 0.0;
    double i_err = 0.0;
    double h_err = 0.0;
    double j_err = 0.0;
    for (int i = 0; i < 20; ++i) {
        const int d = 2 + i % 4;
        const auto u = random_bump(0.05, 4.0, d, i % 3);
        const auto g = functionals::gaussian_functional(u, d);
        g_err = std::max(g_err, std::abs(g.total - *g.cross_check) / g.scale());
    }
    for (int i = 0; i < 20; ++i) {
        const int d = 3 + i % 3;
        const double alpha = -0.5 - 4.0 * U(rng);
        const auto u = random_bump(0.05, 5.0, d, i % 2);
        const auto v = functionals::hp_functional(u, d, alpha);
        i_err = std::max(i_err, std::abs(v.total - *v.cross_check) / v.scale());
        const double c1 = U(rng);
        const double c2 = U(rng);
        const auto sq = functionals::hp_square_form(u, d, alpha, [=](double r) {
            const double s = 1.0 + r * r;
            return chains::Dual{c1 * r * r / s + c2, c1 * 2.0 * r / (s * s)};
        });
        const double scale = v.scale() + std::abs(sq.square) + std::abs(sq.weighted);
        h_err = std::max(h_err, std::abs(v.total - sq.square - sq.weighted) / scale);
    }
    const double inv_R = std::pow(chains::hp_zeta(5), 1.0 / 3.0);
    for (int i = 0; i < 20; ++i) {
        const double alpha = -0.5 - 3.0 * U(rng);
        const auto u = random_bump(0.1, inv_R * 0.99, 5, i % 2);
        const auto j = functionals::hp_exterior_functional(u, 5, alpha);
        j_err = std::max(j_err, std::abs(j.total - *j.cross_check) / j.scale());
    }
    double norm_err = 0.0;
    for (int d = 1; d <= 6; ++d) {
        const auto r = radial::integrate([](double) { return 1.0; }, radial::MeasureSpec::gaussian(d),
                                         {0.0, INFINITY}, {1e-14, 1e-14, 20000});
        norm_err = std::max(norm_err, std::abs(r.value - 1.0));
    }
    radial::ProfileParams cp;
    cp.d = 3;
    const double m3 = functionals::mouhot_ratio(radial::trial_profile("coordinate", cp), 3);
    double worst_ratio = 0.0;
    for (int i = 0; i < 20; ++i) {
        const int d = 2 + i % 5;
        const auto u = random_bump(0.01, 6.0, d, 1);
        worst_ratio = std::max(worst_ratio, functionals::mouhot_ratio(u, d) / (2.0 * (d + 2)));
    }
    const bool ok = g_err < kCrossCheckTol && i_err < kCrossCheckTol && h_err < kCrossCheckTol &&
                    j_err < kCrossCheckTol && norm_err < kNormalisationTol &&
                    std::abs(m3 - 5.0) < kMouhotTol && worst_ratio <= 1.0;
    line(6, ok, "functional cross-checks",
         fmt("G square %.1e", g_err) + fmt(", I square %.1e", i_err) + fmt(", I with h %.1e", h_err) +
             fmt(", J vs Kelvin %.1e", j_err) + fmt(", normalisation %.1e", norm_err) +
             fmt(", ratio(x1,d=3)=%.10f", m3) + fmt(", max ratio/2(d+2) %.3f", worst_ratio),
         seconds_since(t0));
}

// Smallest root of det(T - x) by a dense scan plus bisection on the determinant.
double brute_force_min(const std::vector<double>& a, const std::vector<double>& b) {
    auto det = [&](double x) {
        double p0 = 1.0;
        double p1 = a[0] - x;
        for (std::size_t i = 1; i < a.size(); ++i) {
            const double p2 = (a[i] - x) * p1 - b[i - 1] * b[i - 1] * p0;
            p0 = p1;
            p1 = p2;
        }
        return p1;
    };
    double lo = INFINITY;
    double hi = -INFINITY;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double r = (i ? std::abs(b[i - 1]) : 0.0) + (i + 1 < a.size() ? std::abs(b[i]) : 0.0);
        lo = std::min(lo, a[i] - r);
        hi = std::max(hi, a[i] + r);
    }
    lo -= 1e-9;
    const int steps = 200000;
    double x0 = lo;
    double f0 = det(x0);
    for (int s = 1; s <= steps; ++s) {
        const double x1 = lo + (hi + 1e-9 - lo) * s / steps;
        const double f1 = det(x1);
        if (f1 == 0.0) return x1;
        if ((f0 < 0.0) != (f1 < 0.0)) {
            double l = x0;
            double h = x1;
            for (int it = 0; it < 200; ++it) {
                const double m = 0.5 * (l + h);
                if ((det(m) < 0.0) == (f0 < 0.0)) {
                    l = m;
                } else {
                    h = m;
                }
            }
            return 0.5 * (l + h);
        }
        x0 = x1;
        f0 = f1;
    }
    return NAN;
}

double laplacian_min(int elements) {
    std::vector<double> grid(elements + 1);
    for (int i = 0; i <= elements; ++i) grid[i] = double(i) / elements;
    spectral::RadialForm f{[](double) { return 1.0; }, [](double) { return 0.0; },
                           [](double) { return 1.0; }};
    return spectral::lambda_min(spectral::assemble_form(f, grid, spectral::Coordinate::Linear));
}

void eigensolver() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 8;
        std::vector<double> a(n);
        std::vector<double> b(n - 1);
        for (auto& x : a) x = 2.0 * U(rng);
        for (auto& x : b) x = U(rng);
        const double bf = brute_force_min(a, b);
        const double lm = spectral::lambda_min(spectral::TridiagonalSystem::from_matrix(a, b));
        worst = std::max(worst, std::abs(bf - lm));
    }
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double e50 = std::abs(laplacian_min(50) - pi2);
    const double e100 = std::abs(laplacian_min(100) - pi2);
    const double e200 = std::abs(laplacian_min(200) - pi2);
    const double r1 = e50 / e100;
    const double r2 = e100 / e200;

    // Discrete Hardy quotient in x = log r on [1e-24, 1], d = 3.
    const int d = 3;
    std::vector<double> grid(kFinestNodes);
    const double xl = std::log(1e-24);
    for (int i = 0; i < kFinestNodes; ++i) grid[i] = xl * (1.0 - double(i) / (kFinestNodes - 1));
    grid.back() = 0.0;
    spectral::RadialForm hardy{[](double x) { return std::exp((d - 2) * x); },
                               [](double) { return 0.0; },
                               [](double x) { return std::exp((d - 2) * x); }};
    const double hq = spectral::lambda_min(
        spectral::assemble_form(hardy, grid, spectral::Coordinate::LogRadius));
    const double c = 0.25 * (d - 2) * (d - 2);
    const bool ok = worst < kBruteForceTol && e200 / pi2 < kPiSquaredTol && r1 >= kConvergenceLo &&
                    r1 <= kConvergenceHi && r2 >= kConvergenceLo && r2 <= kConvergenceHi &&
                    hq >= c && hq <= c * (1.0 + kHardyConstantTol);
    line(7, ok, "eigensolver oracles",
         fmt("brute force max diff %.1e", worst) + fmt(", pi^2 rel err %.2e", e200 / pi2) +
             fmt(", error ratios %.3f", r1) + fmt("/%.3f", r2) +
             fmt(", Hardy quotient on [1e-24,1] %.6f", hq) + fmt(" (+%.2f%%)", 100.0 * (hq / c - 1.0)),
         seconds_since(t0));
}

void probes() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    {
        WeightChain c({FamilyTag::hardy_interior(3, 1.0), 4});
        for (int k = 1; k <= 3; ++k) {
            const auto p = spectral::remainder_probe(c, spectral::partial_sum_candidate(c, 3), k);
            ok = ok && std::abs(p.limit - 1.0) <= kProbeTol &&
                 p.verdict == spectral::ProbeVerdict::WithinOptimal;
            detail += " hardy k=" + std::to_string(k) + fmt(":%.8f", p.limit);
        }
        const auto p = spectral::remainder_probe(
            c, [&](double t) { return 1.5 * c.weight_sequence(t, 1).w[1]; }, 1);
        ok = ok && p.verdict == spectral::ProbeVerdict::ExceedsOptimal;
        detail += fmt(" 1.5*W_1:%.6f ", p.limit) + spectral::to_string(p.verdict);
    }
    {
        WeightChain c({FamilyTag::gaussian_high_dim(3), 4});
        for (int k = 0; k <= 3; ++k) {
            const auto p = spectral::remainder_probe(c, spectral::partial_sum_candidate(c, 3), k);
            ok = ok && std::abs(p.limit - 1.0) <= kProbeTol &&
                 p.verdict == spectral::ProbeVerdict::WithinOptimal;
            detail += " gaussian k=" + std::to_string(k) + fmt(":%.8f", p.limit);
        }
    }
    line(8, ok, "remainder probes", detail, seconds_since(t0));
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<std::function<void()>> criteria{lambda_table, verification, falsification,
                                                      identities,   special_functions,
                                                      cross_checks, eigensolver,  probes};
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        try {
            criteria[i]();
        } catch (const std::exception& e) {
            line(int(i) + 1, false, "exception", e.what(), 0.0);
        }
    }
    std::printf("%d/8 criteria passed in %.1fs\n", 8 - failures, seconds_since(t0));
    return failures == 0 ? 0 : 1;
}
