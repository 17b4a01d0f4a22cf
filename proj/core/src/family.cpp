#include "ineqforge/family.hpp"

#include <cmath>
#include <sstream>

#include "ineqforge/errors.hpp"
#include "ineqforge/special.hpp"

namespace ineqforge::chains {
namespace {

std::string num(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

}  // namespace

FamilyTag FamilyTag::hardy_interior(int d, double a) {
    FamilyTag f;
    f.kind = FamilyKind::HardyInterior;
    f.d = d;
    f.a = a;
    f.validate();
    f.delta_omega = fixed_point_small(a);
    return f;
}

FamilyTag FamilyTag::hardy_interior_radius(int d, double delta_omega) {
    if (!(delta_omega > 0.0 && delta_omega <= 1.0)) {
        throw ParameterError("Hardy domain radius must satisfy 0 < delta_Omega <= 1");
    }
    FamilyTag f = hardy_interior(d, hardy_parameter_for_radius(delta_omega));
    f.delta_omega = delta_omega;
    return f;
}

FamilyTag FamilyTag::hardy_exterior(int d, double a) {
    FamilyTag f = hardy_interior(d, a);
    f.kind = FamilyKind::HardyExterior;
    return f;
}

FamilyTag FamilyTag::gaussian_high_dim(int d) {
    FamilyTag f;
    f.kind = FamilyKind::GaussianHighDim;
    f.d = d;
    f.validate();
    return f;
}

FamilyTag FamilyTag::gaussian_plane(double a) {
    FamilyTag f;
    f.kind = FamilyKind::GaussianPlane;
    f.d = 2;
    f.a = a;
    f.validate();
    f.tstar = fixed_point_tstar(a);
    return f;
}

FamilyTag FamilyTag::hp_plane(double alpha, double beta, double tstar) {
    FamilyTag f;
    f.kind = FamilyKind::HPPlane;
    f.d = 2;
    f.alpha = alpha;
    f.beta = beta;
    f.tstar = tstar;
    f.validate();
    return f;
}

FamilyTag FamilyTag::hp_low_dim(int d, double alpha) {
    FamilyTag f;
    f.kind = FamilyKind::HPLowDim;
    f.d = d;
    f.alpha = alpha;
    f.validate();
    return f;
}

FamilyTag FamilyTag::hp_exterior(int d, double alpha) {
    FamilyTag f;
    f.kind = FamilyKind::HPExterior;
    f.d = d;
    f.alpha = alpha;
    f.validate();
    return f;
}

void FamilyTag::validate() const {
    const std::string who = name();
    switch (kind) {
        case FamilyKind::HardyInterior:
        case FamilyKind::HardyExterior:
            if (d < 3) throw ParameterError(who + ": requires d >= 3 (got d=" + num(d) + ")");
            if (!(a >= 1.0)) throw ParameterError(who + ": requires a >= 1 (got a=" + num(a) + ")");
            break;
        case FamilyKind::GaussianHighDim:
            if (d < 3) throw ParameterError(who + ": requires d >= 3 (got d=" + num(d) + ")");
            break;
        case FamilyKind::GaussianPlane:
            if (d != 2) throw ParameterError(who + ": requires d = 2");
            if (!(a > 1.0)) throw ParameterError(who + ": requires a > 1 (got a=" + num(a) + ")");
            break;
        case FamilyKind::HPPlane: {
            if (d != 2) throw ParameterError(who + ": requires d = 2");
            if (!(alpha < 0.0)) {
                throw ParameterError(who + ": requires alpha < 0 (got alpha=" + num(alpha) + ")");
            }
            const double bmax = 1.0 - std::exp(-2.0);
            if (!(beta > 0.5 && beta <= bmax)) {
                throw ParameterError(who + ": requires beta in (1/2, 1-1/e^2] (got beta=" +
                                     num(beta) + ")");
            }
            if (!(tstar > 1.0)) {
                throw ParameterError(who + ": requires t* > 1 (got t*=" + num(tstar) + ")");
            }
            break;
        }
        case FamilyKind::HPLowDim:
            if (d != 3 && d != 4) {
                throw ParameterError(who + ": requires d in {3,4} (got d=" + num(d) + ")");
            }
            if (!(alpha < 0.0)) {
                throw ParameterError(who + ": requires alpha < 0 (got alpha=" + num(alpha) + ")");
            }
            break;
        case FamilyKind::HPExterior:
            if (d < 5) throw ParameterError(who + ": requires d >= 5 (got d=" + num(d) + ")");
            if (!(alpha < 0.0)) {
                throw ParameterError(who + ": requires alpha < 0 (got alpha=" + num(alpha) + ")");
            }
            break;
    }
}

std::string to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::HardyInterior: return "HardyInterior";
        case FamilyKind::HardyExterior: return "HardyExterior";
        case FamilyKind::GaussianHighDim: return "GaussianHighDim";
        case FamilyKind::GaussianPlane: return "GaussianPlane";
        case FamilyKind::HPPlane: return "HPPlane";
        case FamilyKind::HPLowDim: return "HPLowDim";
        case FamilyKind::HPExterior: return "HPExterior";
    }
    return "unknown";
}

FamilyKind family_kind_from_string(const std::string& s) {
    for (auto k : {FamilyKind::HardyInterior, FamilyKind::HardyExterior,
                   FamilyKind::GaussianHighDim, FamilyKind::GaussianPlane, FamilyKind::HPPlane,
                   FamilyKind::HPLowDim, FamilyKind::HPExterior}) {
        if (to_string(k) == s) return k;
    }
    throw ParameterError("unknown family kind '" + s + "'");
}

std::string FamilyTag::name() const { return to_string(kind); }

std::string FamilyTag::describe() const {
    std::ostringstream os;
    os << name() << "(d=" << d;
    if (is_hardy() || kind == FamilyKind::GaussianPlane) os << ", a=" << num(a);
    if (is_hp()) os << ", alpha=" << num(alpha);
    if (kind == FamilyKind::HPPlane) os << ", beta=" << num(beta) << ", t*=" << num(tstar);
    os << ")";
    return os.str();
}

double chain_variable(const FamilyTag& f, double r) {
    switch (f.kind) {
        case FamilyKind::HardyInterior:
            if (!(r > 0.0 && r <= f.delta_omega * (1.0 + 1e-12))) {
                throw DomainError(f.name() + ": radius must lie in (0, delta_Omega=" +
                                  num(f.delta_omega) + "]");
            }
            return 1.0 / (f.a - std::log(r));
        case FamilyKind::HardyExterior:
            if (!(r >= (1.0 - 1e-12) / f.delta_omega)) {
                throw DomainError(f.name() + ": radius must satisfy r >= 1/delta_Omega=" +
                                  num(1.0 / f.delta_omega));
            }
            return 1.0 / (f.a + std::log(r));
        case FamilyKind::GaussianHighDim:
            if (!(r > 0.0)) throw DomainError(f.name() + ": radius must be positive");
            return 1.0 / (1.0 + std::pow(r, f.d - 2));
        case FamilyKind::GaussianPlane:
        case FamilyKind::HPPlane:
            if (!(r > 1.0)) throw DomainError(f.name() + ": radius must satisfy r > 1");
            return 1.0 / std::log(r);
        case FamilyKind::HPLowDim:
        case FamilyKind::HPExterior:
            if (!(r > 0.0)) throw DomainError(f.name() + ": radius must be positive");
            return std::pow(r, 2 - f.d);
    }
    return 0.0;
}

double x_map(const FamilyTag& f, double t) {
    switch (f.kind) {
        case FamilyKind::HardyInterior:
        case FamilyKind::HardyExterior:
            if (!(t > 0.0 && t <= f.delta_omega * (1.0 + 1e-12))) {
                throw DomainError(f.name() + ": t must lie in (0, " + num(f.delta_omega) + "]");
            }
            return 1.0 / (f.a - std::log(t));
        case FamilyKind::GaussianPlane:
            if (!(t > 0.0 && t <= f.tstar * (1.0 + 1e-12))) {
                throw DomainError(f.name() + ": t must lie in (0, t*=" + num(f.tstar) + "]");
            }
            return 1.0 / (f.a - std::log(t));
        case FamilyKind::GaussianHighDim: {
            if (!(t > 0.0 && t < 1.0)) throw DomainError(f.name() + ": t must lie in (0, 1)");
            const double L = std::log1p(-t);
            return L / (L - 1.0);
        }
        default:
            throw InitializationError(f.name() +
                                      ": integral-defined map needs a tabulated WeightChain");
    }
}

}  // namespace ineqforge::chains
