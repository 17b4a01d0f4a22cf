#include "ineqforge/weight_chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dual_ops.hpp"
#include "ineqforge/errors.hpp"
#include "ineqforge/quadrature.hpp"
#include "ineqforge/special.hpp"

namespace ineqforge::chains {
namespace {

constexpr double kUnderflow = 1e-300;

Dual lift(Dual f, Dual z) { return {f.v, f.d * z.d}; }

std::vector<double> geometric_nodes(double lo, double hi, int per_decade) {
    const int n = std::max(2, static_cast<int>(std::ceil(std::log10(hi / lo) * per_decade)) + 1);
    std::vector<double> x(n);
    const double ll = std::log(lo);
    const double lh = std::log(hi);
    for (int i = 0; i < n; ++i) x[i] = std::exp(ll + (lh - ll) * i / (n - 1));
    x.front() = lo;
    x.back() = hi;
    return x;
}

}  // namespace

double RecursionResidual::value() const {
    const double c = std::max(compat_a, compat_b);
    return identity_applies ? std::max(identity, c) : c;
}

WeightChain::WeightChain(WeightChainSpec spec) : spec_(std::move(spec)) {
    FamilyTag& f = spec_.family;
    f.validate();
    if (spec_.N < 0) throw ParameterError("truncation order must satisfy N >= 0");
    if (spec_.nodes_per_decade < 16) throw ParameterError("tabulation needs >= 16 nodes per decade");
    double default_hi = 0.0;
    switch (f.kind) {
        case FamilyKind::HardyInterior:
        case FamilyKind::HardyExterior: default_hi = f.delta_omega; break;
        case FamilyKind::GaussianHighDim: default_hi = 1.0; break;
        case FamilyKind::GaussianPlane:
        case FamilyKind::HPPlane: default_hi = f.tstar; break;
        case FamilyKind::HPLowDim: default_hi = 1e8; break;
        case FamilyKind::HPExterior: default_hi = hp_zeta(f.d); break;
    }
    if (spec_.t_hi <= 0.0) spec_.t_hi = default_hi;
    if (f.kind == FamilyKind::HPExterior && spec_.t_hi > hp_zeta(f.d) * (1.0 + 1e-12)) {
        throw ParameterError("HPExterior: validity interval requires t_hi <= zeta=" +
                             std::to_string(hp_zeta(f.d)));
    }
    if (spec_.t_hi > default_hi * (1.0 + 1e-12) && !(f.kind == FamilyKind::HPLowDim)) {
        throw ParameterError(f.name() + ": t_hi exceeds the family validity bound " +
                             std::to_string(default_hi));
    }
    if (!(spec_.t_lo >= 0.0 && spec_.t_lo < spec_.t_hi)) {
        throw ParameterError("validity interval needs 0 <= t_lo < t_hi");
    }
    if (f.is_hp() && f.d >= 3) {
        q_ = 2.0 / (f.d - 2);
        cd_ = double(f.d) / (f.d - 2);
        build_hp_tables();
    } else if (f.kind == FamilyKind::HPPlane) {
        build_plane_tables();
    }
    check_stability();
}

void WeightChain::build_hp_tables() {
    const int d = spec_.family.d;
    const double hi = spec_.t_hi * 1.001;
    const auto t = geometric_nodes(t_min_, hi, spec_.nodes_per_decade);
    const std::size_t n = t.size();
    std::vector<double> X(n), Xp(n), nu_v(n), nu_p(n);
    nu_v[0] = nu_dual(t[0]).v;
    X[0] = x_dual(t[0]).v;
    auto nup = [d](double s) { return nu_prime(d, s); };
    for (std::size_t i = 1; i < n; ++i) {
        const double a = t[i - 1];
        const double b = t[i];
        if (d == 3) {
            nu_v[i] = nu3(b);
            X[i] = X[i - 1] + radial::kronrod15([](double s) { return std::exp(-0.5 * nu3(s)); },
                                                a, b);
        } else {
            const double na = nu_v[i - 1];
            nu_v[i] = na + radial::kronrod15(nup, a, b);
            auto integrand = [&](double s) {
                return std::exp(-0.5 * (na + radial::kronrod15(nup, a, s)));
            };
            X[i] = X[i - 1] + radial::kronrod15(integrand, a, b);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        nu_p[i] = nu_prime(d, t[i]);
        Xp[i] = std::exp(-0.5 * nu_v[i]);
    }
    nu_table_ = HermiteTable(t, nu_v, nu_p);
    x_table_ = HermiteTable(t, X, Xp);
}

void WeightChain::build_plane_tables() {
    const double beta = spec_.family.beta;
    const double hi = std::max(1.0, spec_.family.tstar) * 1.001;
    // Phi'''' grows like t^{-2 beta - 6}: the plane tables need a finer grid.
    const int per_decade = 4 * spec_.nodes_per_decade;
    auto left = geometric_nodes(t_small_, 1.0, per_decade);
    auto right = geometric_nodes(1.0, hi, per_decade);
    std::vector<double> t = left;
    t.insert(t.end(), right.begin() + 1, right.end());
    const std::size_t n = t.size();
    const std::size_t one = left.size() - 1;
    auto psi_p = [](double s) { return 1.0 / (s * (1.0 + std::exp(2.0 / s))); };
    std::vector<double> psi(n, 0.0), phi(n, 0.0), dpsi(n), dphi(n);
    for (std::size_t i = 1; i < n; ++i) {
        const double a = t[i - 1];
        const double b = t[i];
        psi[i] = psi[i - 1] + radial::kronrod15(psi_p, a, b);
        const double pa = psi[i - 1];
        auto integrand = [&](double s) {
            const double ps = pa + radial::kronrod15(psi_p, a, s);
            return std::pow(s, -2.0 * beta - 2.0) * std::exp(2.0 * beta * ps);
        };
        phi[i] = phi[i - 1] + radial::kronrod15(integrand, a, b);
    }
    // Anchor psi(1) = 0; phi then has to be recomputed against the anchored psi, which only
    // rescales the integrand by exp(-2 beta psi(1)).
    const double shift = psi[one];
    const double scale = std::exp(-2.0 * beta * shift);
    const double phi_one = phi[one] * scale;
    for (std::size_t i = 0; i < n; ++i) {
        psi[i] -= shift;
        phi[i] = phi[i] * scale - phi_one;
        dpsi[i] = psi_p(t[i]);
        dphi[i] = std::pow(t[i], -2.0 * beta - 2.0) * std::exp(2.0 * beta * psi[i]);
    }
    psi_table_ = HermiteTable(t, psi, dpsi);
    phi_table_ = HermiteTable(t, phi, dphi);
    e_small_ = std::exp(2.0 * beta * psi[0]);
    phi_small_ = phi[0];
    const double ts = spec_.family.tstar;
    c0_ = 1.0 / ts + phi_dual(ts).v;
}

void WeightChain::check_stability() const {
    const double hi = spec_.family.kind == FamilyKind::GaussianHighDim ? 1.0 - 1e-9 : spec_.t_hi;
    const double lo = std::max(spec_.t_lo, hi * 1e-8);
    for (int i = 0; i < 1000; ++i) {
        const double t = lo * std::pow(hi / lo, i / 999.0);
        if (!in_validity(t)) continue;
        const double s = x_map(t);
        if (!(s > 0.0) || !(s <= spec_.t_hi * (1.0 + 1e-10))) {
            throw ParameterError(spec_.family.name() +
                                 ": validity interval is not stable under X at t=" +
                                 std::to_string(t));
        }
    }
}

bool WeightChain::in_validity(double t) const {
    if (!(t > 0.0) || t < spec_.t_lo) return false;
    if (spec_.family.kind == FamilyKind::GaussianHighDim) return t < 1.0 && t <= spec_.t_hi;
    return t <= spec_.t_hi * (1.0 + 1e-12);
}

double WeightChain::chain_variable(double r) const {
    return chains::chain_variable(spec_.family, r);
}

double WeightChain::radius(double t) const {
    const FamilyTag& f = spec_.family;
    switch (f.kind) {
        case FamilyKind::HardyInterior: return std::exp(f.a - 1.0 / t);
        case FamilyKind::HardyExterior: return std::exp(1.0 / t - f.a);
        case FamilyKind::GaussianHighDim: return std::pow((1.0 - t) / t, 1.0 / (f.d - 2));
        case FamilyKind::GaussianPlane:
        case FamilyKind::HPPlane: return std::exp(1.0 / t);
        case FamilyKind::HPLowDim:
        case FamilyKind::HPExterior: return std::pow(t, -1.0 / (f.d - 2));
    }
    return 0.0;
}

double WeightChain::r_min() const {
    const FamilyTag& f = spec_.family;
    switch (f.kind) {
        case FamilyKind::HardyInterior:
        case FamilyKind::GaussianHighDim: return 0.0;
        default: return radius(spec_.t_hi);
    }
}

double WeightChain::r_max() const {
    const FamilyTag& f = spec_.family;
    if (f.kind == FamilyKind::HardyInterior) return radius(spec_.t_hi);
    if (spec_.t_lo > 0.0) return radius(spec_.t_lo);
    return std::numeric_limits<double>::infinity();
}

Dual WeightChain::nu_dual(double t) const {
    const int d = spec_.family.d;
    if (d == 3) return {nu3(t), nu_prime(3, t)};
    if (t < t_min_ || nu_table_.empty()) {
        const double q = q_;
        return {t - std::pow(t, 1.0 + q) / (1.0 + q) + std::pow(t, 1.0 + 2.0 * q) / (1.0 + 2.0 * q),
                nu_prime(d, t)};
    }
    return {nu_table_.value(t), nu_prime(d, t)};
}

Dual WeightChain::phi_dual(double t) const {
    // {Phi(t), Phi'(t)}.
    const double beta = spec_.family.beta;
    double psi = 0.0;
    double phi = 0.0;
    if (t >= t_small_) {
        psi = psi_table_.value(t);
        phi = phi_table_.value(t);
    } else {
        psi = psi_table_.value(t_small_);
        phi = phi_small_ - e_small_ *
                               (std::pow(t, -2.0 * beta - 1.0) - std::pow(t_small_, -2.0 * beta - 1.0)) /
                               (2.0 * beta + 1.0);
    }
    return {phi, std::pow(t, -2.0 * beta - 2.0) * std::exp(2.0 * beta * psi)};
}

Dual WeightChain::x_dual(double t) const {
    const FamilyTag& f = spec_.family;
    if (!in_validity(t)) {
        throw DomainError(f.name() + ": t=" + std::to_string(t) + " outside validity interval (" +
                          std::to_string(spec_.t_lo) + ", " + std::to_string(spec_.t_hi) + "]");
    }
    switch (f.kind) {
        case FamilyKind::HardyInterior:
        case FamilyKind::HardyExterior:
        case FamilyKind::GaussianPlane: return 1.0 / (f.a - dlog(var(t)));
        case FamilyKind::GaussianHighDim: {
            const Dual L = dlog1p(-1.0 * var(t));
            return L / (L - 1.0);
        }
        case FamilyKind::HPPlane: {
            const Dual p = phi_dual(t);
            const double x = 1.0 / (c0_ - p.v);
            return {x, x * x * p.d};
        }
        default: break;
    }
    const Dual nu = nu_dual(t);
    const double xp = std::exp(-0.5 * nu.v);
    if (t < t_min_ || x_table_.empty()) {
        double x = 0.0;
        if (f.d == 3) {
            const double s = std::sqrt(t);
            x = t * (1.0 - 2.0 / 3.0 * s + t / 4.0 - t * s / 15.0);
        } else {
            x = t - t * t / 4.0 + std::pow(t, 2.0 + q_) / (2.0 * (1.0 + q_) * (2.0 + q_)) +
                t * t * t / 24.0;
        }
        return {x, xp};
    }
    return {x_table_.value(t), xp};
}

double WeightChain::x_map(double t) const { return x_dual(t).v; }

Dual WeightChain::delta_dual(double t) const {
    const FamilyTag& f = spec_.family;
    if (!in_validity(t)) {
        throw DomainError(f.name() + ": t=" + std::to_string(t) + " outside validity interval");
    }
    const Dual tv = var(t);
    switch (f.kind) {
        case FamilyKind::HardyInterior:
        case FamilyKind::HardyExterior:
        case FamilyKind::GaussianPlane: return tv;
        case FamilyKind::GaussianHighDim: return -1.0 * tv / dlog1p(-1.0 * tv);
        case FamilyKind::HPPlane: {
            const double beta = f.beta;
            const Dual p = phi_dual(t);
            const double psi_p = 1.0 / (t * (1.0 + std::exp(2.0 / t)));
            const Dual dphi{p.d, p.d * (-(2.0 * beta + 2.0) / t + 2.0 * beta * psi_p)};
            const double x = 1.0 / (c0_ - p.v);
            const Dual X{x, x * x * p.d};
            return (1.0 + dexp(-2.0 / tv)) * tv * tv * dphi / (1.0 + dexp(-2.0 / X));
        }
        default: break;
    }
    const Dual X = x_dual(t);
    const Dual nu = nu_dual(t);
    const Dual Xp{X.d, -0.5 * nu.d * X.d};
    return tv / X * (1.0 + dpow(tv, q_)) / (1.0 + dpow(X, q_)) * Xp;
}

double WeightChain::delta(double t) const { return delta_dual(t).v; }

Dual WeightChain::gamma_dual(double t) const {
    const FamilyTag& f = spec_.family;
    if (!in_validity(t)) {
        if (f.kind == FamilyKind::HPExterior && t > 0.0) {
            throw DomainError("HPExterior: gamma_d is negative beyond t=zeta=" +
                              std::to_string(hp_zeta(f.d)) + " (got t=" + std::to_string(t) + ")");
        }
        throw DomainError(f.name() + ": t=" + std::to_string(t) + " outside validity interval");
    }
    const Dual tv = var(t);
    switch (f.kind) {
        case FamilyKind::HardyInterior:
        case FamilyKind::HardyExterior: return 0.25 * tv * tv;
        case FamilyKind::GaussianHighDim:
        case FamilyKind::GaussianPlane: return tv * tv;
        case FamilyKind::HPPlane: {
            const Dual e = dexp(-2.0 / tv);
            return (1.0 + e) * tv * tv - 2.0 * e * tv - f.beta * tv * tv;
        }
        case FamilyKind::HPLowDim:
        case FamilyKind::HPExterior:
            if (f.d == 3) {
                const Dual s = dsqrt(tv);
                return 0.25 * s * (10.0 * tv * tv - s + 2.0);
            }
            return dpow(tv, double(f.d) / (f.d - 2)) *
                   (2.0 / (f.d - 2) - 0.25 * dpow(tv, double(f.d - 4) / (f.d - 2)));
    }
    return {};
}

double WeightChain::gamma(double t) const { return gamma_dual(t).v; }

double WeightChain::prefactor() const {
    const FamilyTag& f = spec_.family;
    switch (f.kind) {
        case FamilyKind::HardyInterior:
        case FamilyKind::HardyExterior: return 1.0;
        case FamilyKind::GaussianPlane: return 0.25;
        case FamilyKind::HPPlane: return f.beta;
        default: return 0.25 * (f.d - 2) * (f.d - 2);
    }
}

double WeightChain::z0() const { return spec_.family.product_remainder() ? 1.0 : 0.0; }

WeightSequenceSample WeightChain::weight_sequence(double t, int N) const {
    if (N < 0) throw ParameterError("truncation order must satisfy N >= 0");
    if (!in_validity(t)) {
        throw DomainError(spec_.family.name() + ": t=" + std::to_string(t) +
                          " outside validity interval");
    }
    WeightSequenceSample s;
    s.t = t;
    s.x.resize(N + 1);
    s.y.resize(N + 1);
    s.z.resize(N + 1);
    s.w.resize(N + 1);
    s.x[0] = t;
    s.y[0] = 1.0;
    s.z[0] = z0();
    s.w[0] = z0();
    double log_prod = 0.0;  // log prod_{j<k} Y_j
    const double log_floor = std::log(kUnderflow);
    for (int k = 1; k <= N; ++k) {
        const double prev = s.x[k - 1];
        if (prev <= 0.0) {
            s.x[k] = 0.0;
            s.y[k] = 0.0;
            s.z[k] = 0.0;
            s.w[k] = 0.0;
            s.underflow = true;
            continue;
        }
        s.x[k] = x_map(prev);
        const double dl = delta(prev);
        s.y[k] = dl * dl;
        s.z[k] = gamma(prev);
        if (s.z[k] < 0.0) {
            throw DomainError(spec_.family.name() + ": negative Z_k on the validity interval");
        }
        const double lw = s.z[k] > 0.0 ? log_prod + std::log(s.z[k]) : -INFINITY;
        if (lw < log_floor) {
            s.w[k] = 0.0;
            s.underflow = true;
        } else {
            s.w[k] = std::exp(lw);
        }
        log_prod += std::log(s.y[k]);
    }
    for (double w : s.w) s.partial_sum += w;

    // Tail: continue the chain until terms are negligible.
    double x = s.x[N];
    double tail = 0.0;
    int small = 0;
    for (int k = N + 1; k <= N + 4000; ++k) {
        if (!(x > 0.0)) {
            s.tail_converged = true;
            break;
        }
        const double dl = delta(x);
        const double z = gamma(x);
        const double lw = z > 0.0 ? log_prod + std::log(z) : -INFINITY;
        const double w = lw < log_floor ? 0.0 : std::exp(lw);
        tail += w;
        log_prod += std::log(dl * dl);
        x = x_map(x);
        if (w <= 1e-17 * (s.partial_sum + tail)) {
            if (++small >= 3) {
                s.tail_converged = true;
                break;
            }
        } else {
            small = 0;
        }
    }
    s.tail_estimate = tail;
    return s;
}

double WeightChain::rhs_weight(double t, int N, RhsConvention conv, double inflation) const {
    if (N < 0) throw ParameterError("truncation order must satisfy N >= 0");
    double x = t;
    double sum = 0.0;
    double log_prod = 0.0;  // log prod_{j<k} Y_j
    double last = z0();
    const double log_floor = std::log(kUnderflow);
    for (int k = 1; k <= N; ++k) {
        if (!(x > 0.0)) {
            last = 0.0;
            log_prod = -INFINITY;
            continue;
        }
        const double dl = delta(x);
        const double z = gamma(x);
        const double lw = z > 0.0 ? log_prod + std::log(z) : -INFINITY;
        last = lw < log_floor ? 0.0 : std::exp(lw);
        sum += last;
        log_prod += std::log(dl * dl);
        x = x_map(x);
    }
    if (spec_.family.product_remainder() && conv == RhsConvention::Remainder) {
        const double rem = log_prod < log_floor ? 0.0 : std::exp(log_prod);
        return sum + (1.0 + inflation) * rem;
    }
    if (N == 0) return (1.0 + inflation) * z0();
    return z0() + sum + inflation * last;
}

double WeightChain::kelvin_reflect(double r) const {
    if (!(r > 0.0)) throw DomainError("Kelvin reflection needs r > 0");
    const double t = chain_variable(1.0 / r);
    return weight_sequence(t).partial_sum;
}

Dual WeightChain::profile_term(Dual z) const {
    const FamilyTag& f = spec_.family;
    switch (f.kind) {
        case FamilyKind::GaussianHighDim: return 0.5 * z;
        case FamilyKind::GaussianPlane: return -0.5 * z;
        case FamilyKind::HPPlane: return -f.beta * z;
        case FamilyKind::HPLowDim:
        case FamilyKind::HPExterior: return f.d == 3 ? 0.25 * dsqrt(z) : 0.25 * z;
        default: return {};
    }
}

// F(z, h, h'): the family's first-order form. Its value along the extremal recursion
// is the level-k weight.
Dual WeightChain::form(Dual z, Dual h) const {
    const FamilyTag& f = spec_.family;
    const double t = z.v;
    double v = 0.0;
    switch (f.kind) {
        case FamilyKind::HardyInterior:
        case FamilyKind::HardyExterior: v = t * h.d - h.v * h.v; break;
        case FamilyKind::GaussianHighDim: v = 4.0 * (-t * (1.0 - t) * h.d + h.v - h.v * h.v); break;
        case FamilyKind::GaussianPlane: v = 4.0 * (-t * t * h.d - h.v * h.v); break;
        case FamilyKind::HPPlane: {
            const double e = std::exp(-2.0 / t);
            v = -(1.0 + e) * t * t * h.d + 2.0 * e * h.v - h.v * h.v;
            break;
        }
        case FamilyKind::HPLowDim:
        case FamilyKind::HPExterior: {
            const double tq = std::pow(t, q_);
            v = 4.0 * (-(1.0 + tq) * t * h.d + (1.0 + cd_ * tq) * h.v - h.v * h.v);
            break;
        }
    }
    return {v, 0.0};
}

Dual WeightChain::compose(Dual z, int levels, const Seed& seed) const {
    if (levels == 0) {
        const Dual h = seed(z.v);
        return {h.v, h.d * z.d};
    }
    const Dual s = lift(x_dual(z.v), z);
    const Dual inner = compose(s, levels - 1, seed);
    const FamilyTag& f = spec_.family;
    if (f.is_hardy()) return s * (inner + 0.5);
    if (f.kind == FamilyKind::GaussianPlane) return profile_term(z) + z * inner;
    return profile_term(z) + lift(delta_dual(z.v), z) * inner;
}

Seed WeightChain::extremal_seed() const {
    const FamilyTag& f = spec_.family;
    if (f.product_remainder()) return [](double) { return Dual{0.5, 0.0}; };
    return [](double) { return Dual{0.0, 0.0}; };
}

double WeightChain::composed_form(double t, int k, const Seed& seed) const {
    if (spec_.family.is_hardy()) return hardy_top_form(t, k, seed);
    return form(var(t), compose(var(t), k, seed)).v;
}

// r h'(r) - h^2 at the radius with X(r) = t, differentiated in log r so that r never appears.
double WeightChain::hardy_top_form(double t, int k, const Seed& seed) const {
    if (k < 1) throw ParameterError("Hardy composition needs k >= 1");
    const Dual s{t, t * t};
    const Dual h = s * (compose(s, k - 1, seed) + 0.5);
    return h.d - h.v * h.v;
}

RecursionResidual WeightChain::recursion_residual(double t, int k) const {
    return recursion_residual(t, k, extremal_seed());
}

RecursionResidual WeightChain::recursion_residual(double t, int k, const Seed& seed) const {
    if (k > spec_.N) {
        throw ParameterError("recursion order k=" + std::to_string(k) +
                             " exceeds truncation N=" + std::to_string(spec_.N));
    }
    if (k < 1) throw ParameterError("recursion order must satisfy k >= 1");
    const FamilyTag& f = spec_.family;
    RecursionResidual out;
    const WeightSequenceSample s = weight_sequence(t, k);
    double sum_w = 0.0;
    for (int j = 1; j <= k; ++j) sum_w += s.w[j];
    double lhs = 0.0;
    double rem = 0.0;
    if (f.is_hardy()) {
        lhs = hardy_top_form(t, k, seed);
        const double z = s.x[k - 1];
        rem = 4.0 * s.w[k] * form(var(z), seed(z)).v;
    } else {
        lhs = form(var(t), compose(var(t), k, seed)).v;
        double prod = 1.0;
        for (int j = 1; j <= k; ++j) prod *= s.y[j];
        const double z = s.x[k];
        rem = prod * form(var(z), seed(z)).v;
    }
    const double kappa = f.kind == FamilyKind::HPPlane ? f.beta : 1.0;
    const double rhs = kappa * sum_w + rem;
    out.identity = std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(sum_w), std::abs(rem)});
    out.identity_applies = f.kind != FamilyKind::HPPlane;

    if (f.kind == FamilyKind::GaussianHighDim || f.is_hp()) {
        const Dual X = x_dual(t);
        const Dual dl = delta_dual(t);
        const double d2 = dl.v * dl.v;
        double A = 0.0;
        double B = 0.0;
        if (f.kind == FamilyKind::GaussianHighDim) {
            A = t * (1.0 - t) * dl.v * X.d / (X.v * (1.0 - X.v));
            B = (1.0 - t) * dl.v - t * (1.0 - t) * dl.d;
        } else if (f.kind == FamilyKind::HPPlane) {
            // B is compared before dividing by 2 e^{-2/X}, which underflows for small X.
            const double et = std::exp(-2.0 / t);
            const double ex = std::exp(-2.0 / X.v);
            A = (1.0 + et) / (1.0 + ex) * t * t * dl.v * X.d / (X.v * X.v);
            const double u = 2.0 * (et - f.beta * t) * dl.v;
            const double v = (1.0 + et) * t * t * dl.d;
            out.compat_a = std::abs(A - d2) / std::max(1.0, d2);
            out.compat_b = std::abs(u - v - 2.0 * ex * d2) /
                           std::max({1.0, std::abs(u), std::abs(v), 2.0 * ex * d2});
            return out;
        } else {
            const double tq = std::pow(t, q_);
            const double xq = std::pow(X.v, q_);
            const double p = profile_term(var(t)).v;
            A = (1.0 + tq) * t * dl.v * X.d / ((1.0 + xq) * X.v);
            B = ((1.0 + cd_ * tq - 2.0 * p) * dl.v - (1.0 + tq) * t * dl.d) / (1.0 + cd_ * xq);
        }
        const double scale = std::max(1.0, d2);
        out.compat_a = std::abs(A - d2) / scale;
        out.compat_b = std::abs(B - d2) / scale;
    }
    return out;
}

double WeightChain::x_map_direct(double t) const {
    const FamilyTag& f = spec_.family;
    if (!f.is_hp()) return x_map(t);
    if (f.kind == FamilyKind::HPPlane) {
        const double beta = f.beta;
        auto psi = [](double s) {
            auto g = [](double x) { return 1.0 / (x * (1.0 + std::exp(2.0 / x))); };
            return s >= 1.0 ? radial::integrate_interval(g, 1.0, s, {1e-15, 1e-14, 20000}).value
                            : -radial::integrate_interval(g, s, 1.0, {1e-15, 1e-14, 20000}).value;
        };
        auto integrand = [&](double s) {
            return std::pow(s, -2.0 * beta - 2.0) * std::exp(2.0 * beta * psi(s));
        };
        auto phi = [&](double x) {
            return x >= 1.0 ? radial::integrate_interval(integrand, 1.0, x, {1e-14, 1e-13, 20000}).value
                            : -radial::integrate_interval(integrand, x, 1.0, {1e-14, 1e-13, 20000}).value;
        };
        const double c0 = 1.0 / f.tstar + phi(f.tstar);
        return 1.0 / (c0 - phi(t));
    }
    const int d = f.d;
    auto integrand = [d](double s) { return std::exp(-0.5 * nu(d, s)); };
    return radial::integrate_interval(integrand, 0.0, t, {1e-15, 1e-14, 20000}).value;
}

}  // namespace ineqforge::chains
