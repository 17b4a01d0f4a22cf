#include "ineqforge/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <future>
#include <limits>
#include <string>
#include <thread>

#include "ineqforge/errors.hpp"
#include "ineqforge/mesh.hpp"
#include "ineqforge/quadrature.hpp"

namespace ineqforge::spectral {
namespace {

using chains::FamilyKind;
using chains::FamilyTag;
using chains::WeightChain;

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

double hardy_shift(const FamilyTag& f) { return f.kind == FamilyKind::HardyInterior ? f.a : -f.a; }

// Least squares fit of y = sum_j c_j x^j, j < m, returning c_0.
double fit_intercept(const std::vector<double>& x, const std::vector<double>& y, int m,
                     double* rms) {
    std::array<std::array<double, 4>, 3> a{};
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::array<double, 3> p{1.0, x[i], x[i] * x[i]};
        for (int r = 0; r < m; ++r) {
            for (int c = 0; c < m; ++c) a[r][c] += p[r] * p[c];
            a[r][3] += p[r] * y[i];
        }
    }
    for (int c = 0; c < m; ++c) {
        int piv = c;
        for (int r = c + 1; r < m; ++r) {
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        }
        std::swap(a[c], a[piv]);
        if (std::abs(a[c][c]) < 1e-300) return std::numeric_limits<double>::quiet_NaN();
        for (int r = 0; r < m; ++r) {
            if (r == c) continue;
            const double f = a[r][c] / a[c][c];
            for (int k = c; k < 4; ++k) a[r][k] -= f * a[c][k];
        }
    }
    std::array<double, 3> coef{};
    for (int c = 0; c < m; ++c) coef[c] = a[c][3] / a[c][c];
    if (rms) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double v = 0.0;
            for (int c = m - 1; c >= 0; --c) v = v * x[i] + coef[c];
            s += (v - y[i]) * (v - y[i]);
        }
        *rms = std::sqrt(s / double(x.size()));
    }
    return coef[0];
}

}  // namespace

Domain Domain::radii(double r_in, double r_out) {
    if (!(r_in > 0.0 && r_out > r_in && std::isfinite(r_out))) {
        throw DomainError("domain needs 0 < r_in < r_out < inf, got [" + num(r_in) + ", " +
                          num(r_out) + "]");
    }
    return {std::log(r_in), std::log(r_out)};
}

double Domain::r_in() const { return std::exp(log_r_in); }
double Domain::r_out() const { return std::exp(log_r_out); }

Coordinate coordinate_for(const FamilyTag& family) {
    return family.is_hardy() ? Coordinate::LogRadius : Coordinate::Linear;
}

void check_domain(const WeightChain& chain, const Domain& dom) {
    const FamilyTag& f = chain.family();
    if (!(std::isfinite(dom.log_r_in) && std::isfinite(dom.log_r_out) &&
          dom.log_r_in < dom.log_r_out)) {
        throw DomainError("domain needs finite 0 < r_in < r_out");
    }
    const double slack = 1e-12;
    auto fail = [&](const std::string& what) {
        throw DomainError(f.name() + ": domain [" + num(dom.r_in()) + ", " + num(dom.r_out()) +
                          "] " + what);
    };
    switch (f.kind) {
        case FamilyKind::HardyInterior:
            if (dom.log_r_out > std::log(f.delta_omega) + slack) {
                fail("must lie inside the ball of radius delta_Omega=" + num(f.delta_omega));
            }
            break;
        case FamilyKind::HardyExterior:
            if (dom.log_r_in < -std::log(f.delta_omega) - slack) {
                fail("must lie outside the ball of radius 1/delta_Omega=" +
                     num(1.0 / f.delta_omega));
            }
            break;
        case FamilyKind::GaussianHighDim: break;
        case FamilyKind::GaussianPlane:
        case FamilyKind::HPPlane:
        case FamilyKind::HPLowDim:
            if (dom.log_r_in < std::log(chain.r_min()) - slack) {
                fail("must lie outside radius R*=" + num(chain.r_min()));
            }
            break;
        case FamilyKind::HPExterior:
            if (dom.log_r_out > -std::log(chain.r_min()) + slack) {
                fail("must lie inside the ball of radius 1/R=" + num(1.0 / chain.r_min()));
            }
            break;
    }
}

Domain default_domain(const WeightChain& chain) {
    const FamilyTag& f = chain.family();
    switch (f.kind) {
        case FamilyKind::HardyInterior: {
            const double hi = std::log(f.delta_omega);
            return {hi - std::log(1e6), hi};
        }
        case FamilyKind::HardyExterior: {
            const double lo = -std::log(f.delta_omega);
            return {lo, lo + std::log(1e6)};
        }
        case FamilyKind::GaussianHighDim: return Domain::radii(0.1, 25.0);
        case FamilyKind::GaussianPlane:
        case FamilyKind::HPPlane: return Domain::radii(chain.r_min() + 0.1, 50.0);
        case FamilyKind::HPLowDim: return Domain::radii(std::max(0.5, chain.r_min()), 100.0);
        case FamilyKind::HPExterior: return {std::log(1e-3), -std::log(chain.r_min())};
    }
    return {};
}

std::vector<double> default_grid(const WeightChain& chain, const Domain& dom, int nodes) {
    check_domain(chain, dom);
    const FamilyTag& f = chain.family();
    std::vector<double> x;
    if (f.is_hardy()) {
        // y = a - x (interior) or a + x (exterior), positive on the domain.
        const double s = hardy_shift(f);
        const bool interior = f.kind == FamilyKind::HardyInterior;
        const double y0 = interior ? s - dom.log_r_out : dom.log_r_in - s;
        const double y1 = interior ? s - dom.log_r_in : dom.log_r_out - s;
        const auto y = radial::graded_mesh({y0, y1}, {}, nodes, radial::MeshMode::Log);
        x.resize(y.size());
        for (std::size_t i = 0; i < y.size(); ++i) x[i] = interior ? s - y[i] : y[i] + s;
        if (interior) std::reverse(x.begin(), x.end());
        x.front() = dom.log_r_in;
        x.back() = dom.log_r_out;
        for (std::size_t i = 1; i < x.size(); ++i) {
            if (!(x[i] > x[i - 1])) {
                throw AssemblyError("Hardy grid collapses in double precision; use fewer nodes or "
                                    "a shallower domain");
            }
        }
        return x;
    }
    x = radial::graded_mesh({dom.r_in(), dom.r_out()}, {}, nodes, radial::MeshMode::Log);
    return x;
}

RadialForm reduced_form(const WeightChain& chain, const AssemblyOptions& opts) {
    const FamilyTag& f = chain.family();
    if (opts.N < 0) throw ParameterError("truncation order must satisfy N >= 0");
    if (!(opts.inflation >= 0.0)) throw ParameterError("inflation must be >= 0");
    if (opts.ell < 0) throw ParameterError("angular index must be >= 0");
    if ((opts.extra_r2 != 0.0 || opts.extra_const != 0.0) && !f.is_gaussian()) {
        throw ParameterError("extra right-hand side terms apply to gaussian families only");
    }
    const WeightChain* c = &chain;
    const AssemblyOptions o = opts;
    const int d = f.d;
    const double L = double(o.ell) * (o.ell + d - 2);
    const double kappa = chain.prefactor();
    auto weight = [c, o](double t) {
        return o.include_chain ? c->rhs_weight(t, o.N, o.conv, o.inflation) : 0.0;
    };
    auto one = [](double) { return 1.0; };
    RadialForm form;
    switch (f.kind) {
        case FamilyKind::HardyInterior:
        case FamilyKind::HardyExterior: {
            const double base = 0.25 * (d - 2) * (d - 2) * (o.N == 0 ? o.inflation : 0.0);
            const double s = hardy_shift(f);
            const bool interior = f.kind == FamilyKind::HardyInterior;
            form.stiffness = one;
            form.mass = one;
            form.potential = [=](double x) {
                const double t = interior ? 1.0 / (s - x) : 1.0 / (x - s);
                return L - base - weight(t);
            };
            break;
        }
        case FamilyKind::GaussianHighDim:
        case FamilyKind::GaussianPlane:
            form.stiffness = [d](double r) { return std::pow(r, d - 1); };
            form.mass = [d](double r) { return std::pow(r, d - 3); };
            form.potential = [=](double r) {
                const double w = weight(c->chain_variable(r));
                return ((L - kappa * w) / (r * r) - o.extra_r2 * r * r - o.extra_const) *
                       std::pow(r, d - 1);
            };
            break;
        case FamilyKind::HPLowDim:
        case FamilyKind::HPPlane:
            form.stiffness = [d](double r) { return std::pow(r, d - 1); };
            form.mass = [d](double r) { return std::pow(r, d - 3); };
            form.potential = [=](double r) {
                const double w = weight(c->chain_variable(r));
                const double s = 1.0 + r * r;
                return (L / (r * r) - kappa * w * r * r / (s * s)) * std::pow(r, d - 1);
            };
            break;
        case FamilyKind::HPExterior: {
            const double alpha = f.alpha;
            auto rho = [=](double r) { return std::pow(r, -2.0 * alpha) * std::pow(1.0 + r * r, alpha); };
            form.stiffness = [=](double r) { return rho(r) * std::pow(r, d - 1); };
            form.mass = [=](double r) { return rho(r) * std::pow(r, d - 3); };
            form.potential = [=](double r) {
                const double s = 1.0 + r * r;
                const double w = weight(c->chain_variable(1.0 / r));
                const double v = L / (r * r) + alpha * (d - 4) / (r * r * s) +
                                 (alpha * (2.0 - alpha) - kappa * w) / (r * r * s * s);
                return v * rho(r) * std::pow(r, d - 1);
            };
            break;
        }
    }
    return form;
}

TridiagonalSystem assemble(const WeightChain& chain, const Domain& domain, std::vector<double> grid,
                           const AssemblyOptions& opts) {
    check_domain(chain, domain);
    return assemble_form(reduced_form(chain, opts), std::move(grid),
                         coordinate_for(chain.family()));
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Verified: return "verified";
        case Verdict::Falsified: return "falsified";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

Verdict verdict_from_string(const std::string& s) {
    if (s == "verified") return Verdict::Verified;
    if (s == "falsified") return Verdict::Falsified;
    if (s == "inconclusive") return Verdict::Inconclusive;
    throw ParameterError("unknown verdict '" + s + "'");
}

double verdict_tolerance(const TridiagonalSystem& t, const FormParts& parts) {
    return std::max(1e-6 * parts.scale(), 16.0 * kEps * t.gershgorin_radius());
}

Witness make_witness(const WeightChain& chain, const TridiagonalSystem& t,
                     const std::vector<double>& v, const AssemblyOptions& opts) {
    const RadialForm form = reduced_form(chain, opts);
    const FormParts parts = form_parts(t, v);
    Witness w;
    w.coordinate = t.coordinate;
    w.nodes = t.grid;
    w.values.assign(t.grid.size(), 0.0);
    std::copy(v.begin(), v.end(), w.values.begin() + 1);
    w.q_discrete = parts.value();
    w.scale = parts.scale();
    const std::size_t elements = w.nodes.size() - 1;
    radial::QuadratureOptions qo;
    qo.abs_tol = 1e-12 * w.scale / double(elements);
    qo.rel_tol = 1e-12;
    double q = 0.0;
    for (std::size_t e = 0; e < elements; ++e) {
        const double x0 = w.nodes[e];
        const double x1 = w.nodes[e + 1];
        const double h = x1 - x0;
        const double v0 = w.values[e];
        const double v1 = w.values[e + 1];
        const double slope = (v1 - v0) / h;
        const auto r = radial::integrate_interval(
            [&](double x) {
                const double u = v0 + slope * (x - x0);
                return form.stiffness(x) * slope * slope + form.potential(x) * u * u;
            },
            x0, x1, qo);
        q += r.value;
    }
    w.q_quadrature = q;
    w.valid = q < 0.0 && std::abs(q - w.q_discrete) <= 1e-6 * w.scale;
    return w;
}

Refinement solve(const WeightChain& chain, const Domain& domain, int nodes,
                 const AssemblyOptions& opts, std::vector<double>* minimiser,
                 TridiagonalSystem* system) {
    TridiagonalSystem t = assemble(chain, domain, default_grid(chain, domain, nodes), opts);
    const EigenBracket b = lambda_min_bracket(t);
    std::vector<double> v = ground_state(t, b);
    const FormParts parts = form_parts(t, v);
    Refinement r;
    r.domain = domain;
    r.nodes = nodes;
    r.lambda_min = b.value();
    r.tolerance = verdict_tolerance(t, parts);
    r.dirichlet = parts.dirichlet;
    r.potential = parts.potential;
    if (minimiser) *minimiser = std::move(v);
    if (system) *system = std::move(t);
    return r;
}

int concurrency() {
    if (const char* env = std::getenv("INEQ_FORGE_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct StepResult {
    Refinement refinement;
    std::vector<double> v;
    TridiagonalSystem system;
};

// Runs the steps in order-preserving batches; stops after the first batch where stop() holds.
std::vector<StepResult> run_steps(const WeightChain& chain, const std::vector<Domain>& domains,
                                  const std::vector<int>& nodes, const AssemblyOptions& opts,
                                  const std::function<bool(const StepResult&)>& stop) {
    std::vector<StepResult> out;
    const std::size_t width = std::size_t(concurrency());
    for (std::size_t begin = 0; begin < domains.size(); begin += width) {
        const std::size_t end = std::min(domains.size(), begin + width);
        std::vector<std::future<StepResult>> jobs;
        for (std::size_t i = begin; i < end; ++i) {
            jobs.push_back(std::async(std::launch::async, [&, i] {
                StepResult s;
                s.refinement = solve(chain, domains[i], nodes[i], opts, &s.v, &s.system);
                return s;
            }));
        }
        bool done = false;
        for (auto& j : jobs) {
            StepResult s = j.get();
            if (done) continue;
            done = stop && stop(s);
            out.push_back(std::move(s));
        }
        if (done) break;
    }
    return out;
}

}  // namespace

VerificationReport verify_inequality(const WeightChain& chain, const Domain& domain,
                                     const AssemblyOptions& opts, const std::vector<int>& schedule) {
    if (schedule.size() < 3) throw PreconditionError("verification needs at least 3 refinements");
    check_domain(chain, domain);
    std::vector<Domain> domains(schedule.size(), domain);
    auto steps = run_steps(chain, domains, schedule, opts, nullptr);

    VerificationReport rep;
    rep.family = chain.family();
    rep.options = opts;
    rep.domain = domain;
    rep.coordinate = coordinate_for(chain.family());
    bool all_ok = true;
    for (const auto& s : steps) {
        rep.refinements.push_back(s.refinement);
        all_ok = all_ok && s.refinement.lambda_min >= -s.refinement.tolerance;
    }
    const StepResult& finest = steps.back();
    rep.grid_size = finest.refinement.nodes;
    rep.lambda_min = finest.refinement.lambda_min;
    rep.tolerance = finest.refinement.tolerance;
    if (all_ok) {
        rep.verdict = Verdict::Verified;
        return rep;
    }
    if (finest.refinement.lambda_min >= -finest.refinement.tolerance) {
        rep.verdict = Verdict::Inconclusive;
        rep.note = "lambda_min changes sign across refinements";
        return rep;
    }
    Witness w = make_witness(chain, finest.system, finest.v, opts);
    rep.verdict = w.valid ? Verdict::Falsified : Verdict::Inconclusive;
    if (!w.valid) rep.note = "negative discrete eigenvalue not confirmed by quadrature";
    rep.witness = std::move(w);
    return rep;
}

std::vector<Domain> falsification_schedule(const WeightChain& chain) {
    const FamilyTag& f = chain.family();
    std::vector<Domain> out;
    switch (f.kind) {
        case FamilyKind::HardyInterior:
        case FamilyKind::HardyExterior: {
            const double edge = std::log(f.delta_omega);
            for (double depth = 16.0;; depth *= 2.0) {
                const double L = std::min(depth, 1e6);
                if (f.kind == FamilyKind::HardyInterior) {
                    out.push_back({edge - L, edge});
                } else {
                    out.push_back({-edge, -edge + L});
                }
                if (L >= 1e6) break;
            }
            break;
        }
        case FamilyKind::HPExterior: {
            const double edge = -std::log(chain.r_min());
            for (int j = 2; j <= 14; ++j) out.push_back({std::log(std::pow(10.0, -j)), edge});
            break;
        }
        default: {
            const Domain base = default_domain(chain);
            for (double r = 25.0;; r *= 4.0) {
                const double rr = std::min(r, 1e8);
                if (std::log(rr) > base.log_r_in + 1.0) out.push_back({base.log_r_in, std::log(rr)});
                if (rr >= 1e8) break;
            }
            break;
        }
    }
    return out;
}

VerificationReport falsify_inflation(const WeightChain& chain, const AssemblyOptions& opts,
                                     const std::vector<Domain>& schedule, int nodes) {
    if (schedule.empty()) throw PreconditionError("falsification needs a non-empty schedule");
    for (const auto& d : schedule) check_domain(chain, d);
    std::vector<int> sizes(schedule.size(), nodes);
    std::optional<Witness> found;
    auto steps = run_steps(chain, schedule, sizes, opts, [&](const StepResult& s) {
        if (!(s.refinement.lambda_min < -s.refinement.tolerance)) return false;
        Witness w = make_witness(chain, s.system, s.v, opts);
        if (!w.valid) return false;
        found = std::move(w);
        return true;
    });

    VerificationReport rep;
    rep.family = chain.family();
    rep.options = opts;
    rep.coordinate = coordinate_for(chain.family());
    for (const auto& s : steps) rep.refinements.push_back(s.refinement);
    const Refinement& last = steps.back().refinement;
    rep.domain = last.domain;
    rep.grid_size = last.nodes;
    rep.lambda_min = last.lambda_min;
    rep.tolerance = last.tolerance;
    if (found) {
        rep.verdict = Verdict::Falsified;
        rep.witness = std::move(found);
    } else {
        rep.verdict = Verdict::Inconclusive;
        rep.note = "schedule exhausted without a confirmed negative eigenvalue; deepest lambda_min "
                   "reported";
    }
    return rep;
}

VerificationReport falsify_inflation(const WeightChain& chain, const AssemblyOptions& opts) {
    return falsify_inflation(chain, opts, falsification_schedule(chain));
}

std::string to_string(ProbeVerdict v) {
    switch (v) {
        case ProbeVerdict::WithinOptimal: return "within_optimal";
        case ProbeVerdict::ExceedsOptimal: return "exceeds_optimal";
        case ProbeVerdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

std::function<double(double)> partial_sum_candidate(const WeightChain& chain, int N) {
    const WeightChain* c = &chain;
    return [c, N](double t) { return c->rhs_weight(t, N, chains::RhsConvention::LiteralSum, 0.0); };
}

RemainderProbe remainder_probe(const WeightChain& chain,
                               const std::function<double(double)>& candidate, int k,
                               const ProbeOptions& opts) {
    const FamilyTag& f = chain.family();
    const bool product = f.product_remainder();
    if (k < 0 || (!product && k < 1)) {
        throw ParameterError("remainder probe order must be >= " + std::string(product ? "0" : "1"));
    }
    double t0 = opts.t_start;
    double t1 = opts.t_end;
    if (!(t0 > 0.0)) {
        if (f.is_hardy()) {
            t0 = std::min(1e-3, 0.5 * chain.t_hi());
        } else {
            t0 = 1e-2;
        }
    }
    if (!(t1 > 0.0)) {
        if (f.is_hardy()) {
            t1 = 1e-120;
        } else if (f.kind == FamilyKind::GaussianHighDim || f.kind == FamilyKind::HPLowDim ||
                   f.kind == FamilyKind::HPExterior) {
            t1 = 1e-8;
        } else {
            t1 = 1e-6;
        }
    }
    if (opts.samples < 5 || opts.fit_points < 5 || !(t0 > t1 && t1 > 0.0) ||
        std::log10(t0 / t1) < 3.0) {
        throw PreconditionError("remainder probe needs at least 5 samples spanning 3 decades of t");
    }

    RemainderProbe p;
    p.family = f;
    p.k = k;
    const double step = std::log(t1 / t0) / double(opts.samples - 1);
    for (int i = 0; i < opts.samples; ++i) {
        const double t = t0 * std::exp(step * i);
        const auto s = chain.weight_sequence(t, k + 1);
        double num = candidate(t);
        double den = 0.0;
        double next = s.w[k + 1];
        if (product) {
            den = 1.0;
            for (int j = 1; j <= k; ++j) {
                num -= s.w[j];
                den *= s.y[j];
            }
        } else {
            for (int j = 0; j < k; ++j) num -= s.w[j];
            den = s.w[k];
        }
        p.t.push_back(t);
        if (den > 0.0 && std::isfinite(num)) {
            p.ratio.push_back(num / den);
            p.xi.push_back(product ? std::max(std::abs(1.0 - den), next / den) : next / den);
        } else {
            p.ratio.push_back(std::numeric_limits<double>::quiet_NaN());
            p.xi.push_back(std::numeric_limits<double>::quiet_NaN());
        }
    }

    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < p.t.size(); ++i) {
        if (std::isfinite(p.ratio[i]) && std::isfinite(p.xi[i])) idx.push_back(i);
    }
    if (idx.size() < 5 || std::log10(p.t[idx.front()] / p.t[idx.back()]) < 3.0) {
        p.verdict = ProbeVerdict::Inconclusive;
        p.limit = std::numeric_limits<double>::quiet_NaN();
        p.uncertainty = std::numeric_limits<double>::infinity();
        return p;
    }
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(p.xi[a]) < std::abs(p.xi[b]);
    });
    idx.resize(std::min<std::size_t>(idx.size(), std::size_t(opts.fit_points)));
    std::vector<double> x;
    std::vector<double> y;
    double xmax = 0.0;
    for (std::size_t i : idx) xmax = std::max(xmax, std::abs(p.xi[i]));
    for (std::size_t i : idx) {
        x.push_back(xmax > 0.0 ? p.xi[i] / xmax : 0.0);
        y.push_back(p.ratio[i]);
    }
    double rms = 0.0;
    double lin = fit_intercept(x, y, 2, &rms);
    double quad = fit_intercept(x, y, 3, nullptr);
    if (!std::isfinite(lin)) {
        // Degenerate abscissae: the ratio is sampled where the next level has vanished.
        double mean = 0.0;
        for (double v : y) mean += v;
        mean /= double(y.size());
        double var = 0.0;
        for (double v : y) var += (v - mean) * (v - mean);
        lin = mean;
        quad = mean;
        rms = std::sqrt(var / double(y.size()));
    }
    if (!std::isfinite(quad)) quad = lin;
    p.limit = lin;
    p.uncertainty = std::abs(lin - quad) + rms;
    if (p.uncertainty > 0.05 * std::max(1.0, std::abs(lin))) {
        p.verdict = ProbeVerdict::Inconclusive;
    } else if (lin > 1.0 + p.uncertainty + 1e-9) {
        p.verdict = ProbeVerdict::ExceedsOptimal;
    } else {
        p.verdict = ProbeVerdict::WithinOptimal;
    }
    return p;
}

}  // namespace ineqforge::spectral
