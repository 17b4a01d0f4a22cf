#include <cmath>

#include <gtest/gtest.h>

#include "ineqforge/errors.hpp"
#include "ineqforge/family.hpp"
#include "ineqforge/quadrature.hpp"
#include "ineqforge/special.hpp"

using namespace ineqforge;
using namespace ineqforge::chains;

TEST(Special, Nu3MatchesQuadrature) {
    for (double s : {1e-6, 1e-3, 0.1, 1.0, 7.5, 1e3}) {
        const auto q = radial::integrate_interval(
            [](double u) { return 2.0 / (1.0 + u * u * u * u); }, 0.0, std::sqrt(s),
            {1e-300, 1e-14, 20000});
        EXPECT_NEAR(nu3(s), q.value, 1e-10 * q.value) << "s=" << s;
    }
}

TEST(Special, Nu3FrozenValue) { EXPECT_NEAR(nu3(1.0), 1.733945974680, 1e-11); }

TEST(Special, Nu4ClosedForm) {
    // int_0^s dσ/(1+σ) = log(1+s).
    for (double s : {1e-4, 0.5, 3.0, 40.0}) EXPECT_NEAR(nu(4, s), std::log1p(s), 1e-12 * (1 + s));
}

TEST(Special, NuPrimeIsTheIntegrand) {
    const double h = 1e-5;
    for (int d : {4, 5, 6}) {
        const double s = 0.7;
        const double fd = (nu(d, s + h) - nu(d, s - h)) / (2.0 * h);
        EXPECT_NEAR(nu_prime(d, s), fd, 1e-8);
    }
}

TEST(Special, FixedPointTstar) {
    for (double a : {1.5, 2.0, 3.0}) {
        const double t = fixed_point_tstar(a);
        EXPECT_LT(std::abs(t * (a - std::log(t)) - 1.0), 1e-12);
        EXPECT_GT(t, std::exp(a - 1.0));
    }
    EXPECT_DOUBLE_EQ(fixed_point_tstar(1.0), 1.0);
    EXPECT_NEAR(fixed_point_tstar(2.0), 6.305395279272, 1e-10);
}

TEST(Special, FixedPointSmall) {
    for (double a : {1.0, 2.0, 5.0}) {
        const double t = fixed_point_small(a);
        EXPECT_LT(std::abs(t * (a - std::log(t)) - 1.0), 1e-12);
        EXPECT_LE(t, std::exp(a - 1.0) * (1.0 + 1e-12));
    }
}

TEST(Special, HardyParameterRoundTrip) {
    for (double delta : {0.2, 0.5, 1.0}) {
        const double a = hardy_parameter_for_radius(delta);
        EXPECT_NEAR(x_map(FamilyTag::hardy_interior(3, a), delta), delta, 1e-14);
    }
}

TEST(Special, ZetaClosedForm) {
    EXPECT_NEAR(hp_zeta(5), 512.0 / 27.0, 1e-12);
    EXPECT_NEAR(hp_zeta(6), 4.0, 1e-12);
}

TEST(Special, BisectRootNeedsSignChange) {
    EXPECT_NEAR(bisect_root([](double x) { return x * x - 2.0; }, 0.0, 2.0), std::sqrt(2.0), 1e-15);
    EXPECT_THROW(bisect_root([](double x) { return x * x + 1.0; }, 0.0, 2.0), Error);
}

TEST(Family, ValidationNamesTheConstraint) {
    try {
        FamilyTag::hp_plane(-1.0, 0.95, 2.0);
        FAIL();
    } catch (const ParameterError& e) {
        EXPECT_NE(std::string(e.what()).find("beta in (1/2, 1-1/e^2]"), std::string::npos);
    }
    EXPECT_THROW(FamilyTag::gaussian_high_dim(2), ParameterError);
    EXPECT_THROW(FamilyTag::hp_exterior(4, -1.0), ParameterError);
    EXPECT_THROW(FamilyTag::hardy_interior(2, 1.0), ParameterError);
}

TEST(Family, KindNamesRoundTrip) {
    for (auto k : {FamilyKind::HardyInterior, FamilyKind::HardyExterior, FamilyKind::GaussianHighDim,
                   FamilyKind::GaussianPlane, FamilyKind::HPPlane, FamilyKind::HPLowDim,
                   FamilyKind::HPExterior}) {
        EXPECT_EQ(family_kind_from_string(to_string(k)), k);
    }
}

TEST(Family, TabulatedMapsNeedAChain) {
    EXPECT_THROW(x_map(FamilyTag::hp_low_dim(3, -1.0), 0.5), InitializationError);
}
