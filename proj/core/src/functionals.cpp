#include "ineqforge/functionals.hpp"

#include <cmath>
#include <string>

#include "ineqforge/errors.hpp"
#include "ineqforge/measure.hpp"
#include "ineqforge/quadrature.hpp"
#include "ineqforge/special.hpp"

namespace ineqforge::functionals {
namespace {

using radial::Interval;
using radial::MeasureSpec;

constexpr radial::QuadratureOptions kOpts{1e-15, 1e-13, 50000};

double integrate(const RadialProfile& u, const MeasureSpec& m, const radial::Integrand& g) {
    return radial::integrate(g, m, Interval{u.r0, u.r1}, kOpts).value;
}

double angular(const RadialProfile& u, int d) { return double(u.ell) * (u.ell + d - 2); }

void finish(FunctionalValue& v) {
    v.total = v.dirichlet;
    for (const auto& [name, value] : v.potentials) v.total += value;
}

void require_support_from_zero(const RadialProfile& u, int d, int ell_limit) {
    if (u.r0 == 0.0 && u.ell > ell_limit && d < 3) {
        throw IntegrabilityError("angular term is not integrable at the origin");
    }
}

}  // namespace

double FunctionalValue::scale() const {
    double s = std::abs(dirichlet);
    for (const auto& [name, value] : potentials) s += std::abs(value);
    return s;
}

FunctionalValue hardy_functional(const RadialProfile& u, int d) {
    if (d < 3) throw ParameterError("Hardy functional needs d >= 3");
    const auto m = MeasureSpec::lebesgue(d);
    const double L = angular(u, d);
    const double c = 0.25 * (d - 2) * (d - 2);
    FunctionalValue v;
    v.dirichlet = integrate(u, m, [&](double r) {
        const double f = u.f(r);
        const double df = u.df(r);
        return df * df + L * f * f / (r * r);
    });
    v.potentials["hardy"] = -c * integrate(u, m, [&](double r) {
        const double f = u.f(r);
        return f * f / (r * r);
    });
    finish(v);
    const double e = 0.5 * (d - 2);
    v.cross_check = integrate(u, m, [&](double r) {
        const double f = u.f(r);
        const double g = u.df(r) + e * f / r;
        return g * g + L * f * f / (r * r);
    });
    return v;
}

FunctionalValue gaussian_functional(const RadialProfile& u, int d) {
    require_support_from_zero(u, d, 0);
    const auto m = MeasureSpec::gaussian(d);
    const double L = angular(u, d);
    FunctionalValue v;
    v.dirichlet = integrate(u, m, [&](double r) {
        const double f = u.f(r);
        const double df = u.df(r);
        return df * df + (L == 0.0 ? 0.0 : L * f * f / (r * r));
    });
    v.potentials["mass"] = 0.5 * d * integrate(u, m, [&](double r) {
        const double f = u.f(r);
        return f * f;
    });
    v.potentials["moment"] = -0.25 * integrate(u, m, [&](double r) {
        const double f = u.f(r);
        return r * r * f * f;
    });
    finish(v);
    v.cross_check = integrate(u, m, [&](double r) {
        const double f = u.f(r);
        const double g = u.df(r) - 0.5 * r * f;
        return g * g + (L == 0.0 ? 0.0 : L * f * f / (r * r));
    });
    return v;
}

FunctionalValue hp_functional(const RadialProfile& u, int d, double alpha) {
    if (!(alpha < 0.0)) throw ParameterError("Hardy-Poincaré functional needs alpha < 0");
    require_support_from_zero(u, d, 0);
    const auto m = MeasureSpec::power_law(d, alpha);
    const double L = angular(u, d);
    FunctionalValue v;
    v.dirichlet = integrate(u, m, [&](double r) {
        const double f = u.f(r);
        const double df = u.df(r);
        return df * df + (L == 0.0 ? 0.0 : L * f * f / (r * r));
    });
    v.potentials["moment"] = alpha * (2.0 - alpha) * integrate(u, m, [&](double r) {
        const double f = u.f(r);
        const double s = 1.0 + r * r;
        return r * r * f * f / (s * s);
    });
    v.potentials["mass"] = -alpha * d * integrate(u, m, [&](double r) {
        const double f = u.f(r);
        return f * f / (1.0 + r * r);
    });
    finish(v);
    v.cross_check = integrate(u, m, [&](double r) {
        const double f = u.f(r);
        const double g = u.df(r) + alpha * r * f / (1.0 + r * r);
        return g * g + (L == 0.0 ? 0.0 : L * f * f / (r * r));
    });
    return v;
}

FunctionalValue hp_exterior_functional(const RadialProfile& u, int d, double alpha) {
    if (d < 5) throw ParameterError("exterior Hardy-Poincaré functional needs d >= 5");
    if (!(alpha < 0.0)) throw ParameterError("Hardy-Poincaré functional needs alpha < 0");
    const double inv_R = std::pow(chains::hp_zeta(d), 1.0 / (d - 2));
    if (!(u.r1 <= inv_R * (1.0 + 1e-12))) {
        throw DomainError("J functional: support must lie inside the ball of radius 1/R=" +
                          std::to_string(inv_R));
    }
    const auto m = MeasureSpec::power_law_kelvin(d, alpha);
    const double L = angular(u, d);
    FunctionalValue v;
    v.dirichlet = integrate(u, m, [&](double r) {
        const double f = u.f(r);
        const double df = u.df(r);
        return df * df + (L == 0.0 ? 0.0 : L * f * f / (r * r));
    });
    v.potentials["mass"] = alpha * (d - 4) * integrate(u, m, [&](double r) {
        const double f = u.f(r);
        return f * f / (r * r * (1.0 + r * r));
    });
    v.potentials["moment"] = alpha * (2.0 - alpha) * integrate(u, m, [&](double r) {
        const double f = u.f(r);
        const double s = 1.0 + r * r;
        return f * f / (r * r * s * s);
    });
    finish(v);
    if (u.r0 > 0.0) v.cross_check = hp_functional(radial::kelvin_transform(u, d), d, alpha).total;
    return v;
}

SquareForm hp_square_form(const RadialProfile& u, int d, double alpha,
                          const std::function<chains::Dual(double)>& h) {
    const auto m = MeasureSpec::power_law(d, alpha);
    const double L = angular(u, d);
    SquareForm out;
    out.square = integrate(u, m, [&](double r) {
        const double f = u.f(r);
        const double g = (h(r).v + alpha) / (1.0 + r * r);
        const double s = u.df(r) + g * r * f;
        return s * s + (L == 0.0 ? 0.0 : L * f * f / (r * r));
    });
    out.weighted = integrate(u, m, [&](double r) {
        const double f = u.f(r);
        const chains::Dual hv = h(r);
        const double s = 1.0 + r * r;
        const double fh = s * r * hv.d + ((d - 2) * r * r + d) * hv.v - r * r * hv.v * hv.v;
        return fh * f * f / (s * s);
    });
    return out;
}

double weighted_rhs(const RadialProfile& u, const chains::WeightChain& chain, int N,
                    chains::RhsConvention conv, double inflation) {
    using chains::FamilyKind;
    const auto& f = chain.family();
    const double kappa = chain.prefactor();
    const int d = f.d;
    auto weight = [&](double t) { return chain.rhs_weight(t, N, conv, inflation); };
    auto check = [&](double lo, double hi) {
        if (u.r0 < lo * (1.0 - 1e-12) || u.r1 > hi * (1.0 + 1e-12)) {
            throw DomainError(f.name() + ": support [" + std::to_string(u.r0) + ", " +
                              std::to_string(u.r1) + "] outside the admissible region [" +
                              std::to_string(lo) + ", " + std::to_string(hi) + "]");
        }
    };
    switch (f.kind) {
        case FamilyKind::HardyInterior:
        case FamilyKind::HardyExterior: {
            check(chain.r_min(), chain.r_max());
            const auto m = MeasureSpec::lebesgue(d);
            return kappa * integrate(u, m, [&](double r) {
                if (r <= 0.0) return 0.0;
                const double v = u.f(r);
                return weight(chain.chain_variable(r)) * v * v / (r * r);
            });
        }
        case FamilyKind::GaussianHighDim:
        case FamilyKind::GaussianPlane: {
            check(chain.r_min(), chain.r_max());
            const auto m = MeasureSpec::gaussian(d);
            return kappa * integrate(u, m, [&](double r) {
                const double v = u.f(r);
                return weight(chain.chain_variable(r)) * v * v / (r * r);
            });
        }
        case FamilyKind::HPLowDim:
        case FamilyKind::HPPlane: {
            check(chain.r_min(), chain.r_max());
            const auto m = MeasureSpec::power_law(d, f.alpha - 2.0);
            return kappa * integrate(u, m, [&](double r) {
                const double v = u.f(r);
                return weight(chain.chain_variable(r)) * r * r * v * v;
            });
        }
        case FamilyKind::HPExterior: {
            // Corollary form on B_{1/R}: t = r^{d-2}.
            check(0.0, 1.0 / chain.r_min());
            const auto m = MeasureSpec::power_law(d, f.alpha - 2.0);
            return kappa * integrate(u, m, [&](double r) {
                if (r <= 0.0) return 0.0;
                const double v = u.f(r);
                return weight(chain.chain_variable(1.0 / r)) * v * v *
                       std::pow(r, -2.0 * (f.alpha + 1.0));
            });
        }
    }
    return 0.0;
}

FunctionalValue family_functional(const RadialProfile& u, const chains::WeightChain& chain) {
    const auto& f = chain.family();
    if (f.is_hardy()) return hardy_functional(u, f.d);
    if (f.is_gaussian()) return gaussian_functional(u, f.d);
    if (f.kind == chains::FamilyKind::HPExterior) return hp_exterior_functional(u, f.d, f.alpha);
    return hp_functional(u, f.d, f.alpha);
}

LambdaConstant lambda_constant(double alpha, int d) {
    if (d < 2) throw ParameterError("Lambda_{alpha,d} needs d >= 2");
    if (!(alpha < 0.0)) throw ParameterError("Lambda_{alpha,d} needs alpha < 0");
    LambdaConstant out;
    if (alpha == -0.5 * (d - 2)) {
        out.fails = true;
        out.regime = 3;
        return out;
    }
    if (alpha <= -double(d)) {
        out.value = -2.0 * alpha;
        out.regime = 1;
    } else if (alpha <= -0.5 * (d + 2)) {
        out.value = -2.0 * (d + 2.0 * alpha);
        out.regime = 2;
    } else {
        const double s = d - 2 + 2.0 * alpha;
        out.value = 0.25 * s * s;
        out.regime = 3;
    }
    return out;
}

double gaussian_mean(const RadialProfile& u, int d) {
    if (u.ell != 0) return 0.0;
    return integrate(u, MeasureSpec::gaussian(d), [&](double r) { return u.f(r); });
}

double mouhot_ratio(const RadialProfile& u0, int d, MeanZero mode) {
    RadialProfile u = u0;
    if (u.ell == 0) {
        const double mean = gaussian_mean(u, d);
        const double norm = std::sqrt(integrate(u, MeasureSpec::gaussian(d), [&](double r) {
            const double f = u.f(r);
            return f * f;
        }));
        if (std::abs(mean) > 1e-10 * std::max(norm, 1e-300)) {
            if (mode == MeanZero::Require) {
                throw PreconditionError("improved Poincaré ratio needs a mean-zero profile (l=0 "
                                        "profile has gaussian mean " + std::to_string(mean) + ")");
            }
            if (u.r0 > 0.0 || !std::isinf(u.r1)) {
                throw PreconditionError("mean subtraction needs a profile supported on [0, inf)");
            }
            u = radial::affine(u, 1.0, -mean);
        }
    }
    const auto m = MeasureSpec::gaussian(d);
    const double L = angular(u, d);
    const double num = integrate(u, m, [&](double r) {
        const double f = u.f(r);
        return r * r * f * f;
    });
    const double den = integrate(u, m, [&](double r) {
        const double f = u.f(r);
        const double df = u.df(r);
        return df * df + (L == 0.0 ? 0.0 : L * f * f / (r * r));
    });
    if (!(den > 0.0)) throw PreconditionError("improved Poincaré ratio needs a non-constant profile");
    return num / den;
}

}  // namespace ineqforge::functionals
