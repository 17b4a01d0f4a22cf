#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "ineqforge/errors.hpp"
#include "ineqforge/special.hpp"
#include "ineqforge/weight_chain.hpp"

using namespace ineqforge;
using namespace ineqforge::chains;

namespace {

double fd4(const std::function<double(double)>& f, double t) {
    const double h = t * 1e-4;
    return (-f(t + 2 * h) + 8 * f(t + h) - 8 * f(t - h) + f(t - 2 * h)) / (12 * h);
}

}  // namespace

TEST(WeightChain, GaussianFrozenSequence) {
    WeightChain c({FamilyTag::gaussian_high_dim(3), 4});
    const auto s = c.weight_sequence(0.5, 4);
    const double expected[] = {1.0, 0.25, 0.087206847096765237, 0.037420217575832652,
                               0.018478836441298031};
    for (int k = 0; k <= 4; ++k) EXPECT_NEAR(s.w[k], expected[k], 1e-15) << k;
    EXPECT_NEAR(s.partial_sum, 1.0 + 0.25 + 0.087206847096765237 + 0.037420217575832652 +
                                   0.018478836441298031,
                1e-14);
}

TEST(WeightChain, HardyFrozenSequence) {
    WeightChain c({FamilyTag::hardy_interior(3, 1.0), 3});
    const auto s = c.weight_sequence(0.5, 3);
    EXPECT_EQ(s.w[0], 0.0);
    EXPECT_NEAR(s.w[1], 0.0625, 1e-16);
    EXPECT_NEAR(s.w[2], 0.021801711774191309, 1e-16);
    EXPECT_NEAR(s.w[3], 0.009355054393958163, 1e-16);
}

TEST(WeightChain, GaussianPlaneFrozenSequence) {
    WeightChain c({FamilyTag::gaussian_plane(2.0), 3});
    const auto s = c.weight_sequence(0.5, 3);
    EXPECT_NEAR(s.w[1], 0.25, 1e-16);
    EXPECT_NEAR(s.w[2], 0.034468297452873585, 1e-16);
    EXPECT_NEAR(s.w[3], 0.0038536395567222249, 1e-16);
}

TEST(WeightChain, TabulatedMapsMatchDirectQuadrature) {
    for (int d : {3, 4, 5}) {
        const FamilyTag f = d == 5 ? FamilyTag::hp_exterior(5, -1.0) : FamilyTag::hp_low_dim(d, -1.0);
        WeightChain c({f, 2});
        for (double t : {1e-6, 1e-3, 0.3, 2.0, 9.0}) {
            EXPECT_NEAR(c.x_map(t), c.x_map_direct(t), 1e-9 * c.x_map_direct(t)) << d << " " << t;
        }
    }
}

TEST(WeightChain, PlaneTablesMatchDirectQuadrature) {
    WeightChain c({FamilyTag::hp_plane(-1.0, 0.75, 2.0), 2});
    for (double t : {1e-3, 0.01, 0.05, 0.3, 1.0, 1.9}) {
        EXPECT_NEAR(c.x_map(t), c.x_map_direct(t), 1e-9 * c.x_map_direct(t)) << t;
    }
}

TEST(WeightChain, FourDimensionalClosedForm) {
    WeightChain c({FamilyTag::hp_low_dim(4, -1.0), 2});
    for (double t : {1e-8, 1e-3, 0.5, 3.0, 100.0}) {
        EXPECT_NEAR(c.x_map(t), 2.0 * t / (std::sqrt(1.0 + t) + 1.0), 1e-10 * t);
    }
}

TEST(WeightChain, PlaneHardyPoincareOracle) {
    WeightChain c({FamilyTag::hp_plane(-1.0, 0.75, 2.0), 2});
    EXPECT_NEAR(c.x_map(0.3), 0.123459684951772, 1e-9 * 0.123459684951772);
    EXPECT_NEAR(c.x_map(1.9), 1.954168984123268, 1e-9 * 1.954168984123268);
    EXPECT_NEAR(c.x_map(2.0), 2.0, 1e-12);
}

TEST(WeightChain, ContractionForHighDimensionalHardyPoincare) {
    for (int d : {3, 4}) {
        WeightChain c({FamilyTag::hp_low_dim(d, -1.0), 1});
        for (double t : {1e-9, 1e-4, 0.1, 1.0, 50.0}) EXPECT_LE(c.x_map(t), t);
    }
}

TEST(WeightChain, AnalyticDerivativesMatchFiniteDifferences) {
    std::vector<FamilyTag> fams{FamilyTag::gaussian_high_dim(4), FamilyTag::gaussian_plane(2.0),
                                FamilyTag::hp_low_dim(3, -1.0), FamilyTag::hp_low_dim(4, -2.0),
                                FamilyTag::hp_exterior(5, -1.0), FamilyTag::hp_plane(-1.0, 0.75, 2.0)};
    for (const auto& f : fams) {
        WeightChain c({f, 1});
        for (double t : {0.05, 0.3, 0.8}) {
            const double x1 = fd4([&](double s) { return c.x_map(s); }, t);
            const double d1 = fd4([&](double s) { return c.delta(s); }, t);
            const double g1 = fd4([&](double s) { return c.gamma(s); }, t);
            EXPECT_NEAR(c.x_dual(t).d, x1, 1e-6 * (1.0 + std::abs(x1))) << f.name() << " " << t;
            EXPECT_NEAR(c.delta_dual(t).d, d1, 1e-6 * (1.0 + std::abs(d1))) << f.name() << " " << t;
            EXPECT_NEAR(c.gamma_dual(t).d, g1, 1e-6 * (1.0 + std::abs(g1))) << f.name() << " " << t;
        }
    }
}

TEST(WeightChain, RecursionIdentities) {
    std::vector<FamilyTag> fams{FamilyTag::hardy_interior(3, 1.0), FamilyTag::gaussian_high_dim(3),
                                FamilyTag::gaussian_plane(2.0),    FamilyTag::hp_low_dim(3, -1.0),
                                FamilyTag::hp_low_dim(4, -1.0),    FamilyTag::hp_exterior(5, -1.0)};
    std::mt19937_64 rng(3);
    for (const auto& f : fams) {
        WeightChain c({f, 3});
        const double hi = std::min(c.t_hi(), 10.0) * 0.99;
        std::uniform_real_distribution<double> u(std::log(hi * 1e-3), std::log(hi));
        for (int i = 0; i < 20; ++i) {
            const auto r = c.recursion_residual(std::exp(u(rng)), 1 + i % 3);
            EXPECT_TRUE(r.identity_applies);
            EXPECT_LT(r.value(), 1e-8) << f.name();
        }
    }
}

TEST(WeightChain, HardyIdentityBeyondRadiusUnderflow) {
    WeightChain c({FamilyTag::hardy_interior(3, 1.0), 3});
    for (double t : {1e-3, 1e-6, 1e-50}) EXPECT_LT(c.recursion_residual(t, 3).value(), 1e-8) << t;
}

TEST(WeightChain, PlaneHardyPoincareCompatibilityOnly) {
    WeightChain c({FamilyTag::hp_plane(-1.0, 0.75, 2.0), 2});
    const auto r = c.recursion_residual(0.7, 2);
    EXPECT_FALSE(r.identity_applies);
    EXPECT_LT(r.compat_a, 1e-10);
    EXPECT_LT(r.compat_b, 1e-10);
}

TEST(WeightChain, RecursionOrderBeyondTruncationThrows) {
    WeightChain c({FamilyTag::gaussian_high_dim(3), 1});
    EXPECT_THROW(c.recursion_residual(0.3, 2), ParameterError);
}

TEST(WeightChain, UnderflowIsFlaggedAndZeroed) {
    for (const auto& f : {FamilyTag::gaussian_plane(2.0), FamilyTag::gaussian_high_dim(3)}) {
        WeightChain c({f, 12});
        EXPECT_FALSE(c.weight_sequence(1e-30, 12).underflow);
        const auto s = c.weight_sequence(1e-300, 12);
        EXPECT_TRUE(s.underflow);
        EXPECT_EQ(s.w.back(), 0.0);
        for (double w : s.w) EXPECT_TRUE(std::isfinite(w));
    }
}

TEST(WeightChain, ZeroTruncationRhs) {
    WeightChain g({FamilyTag::gaussian_high_dim(3), 0});
    EXPECT_EQ(g.rhs_weight(0.4, 0, RhsConvention::Remainder), 1.0);
    EXPECT_EQ(g.rhs_weight(0.4, 0, RhsConvention::LiteralSum), 1.0);
    WeightChain h({FamilyTag::hardy_interior(3, 1.0), 0});
    EXPECT_EQ(h.rhs_weight(0.4, 0, RhsConvention::Remainder), 0.0);
}

TEST(WeightChain, LiteralSumIsMonotoneInN) {
    WeightChain c({FamilyTag::gaussian_high_dim(5), 5});
    for (double t : {0.01, 0.3, 0.9}) {
        double prev = 0.0;
        for (int N = 0; N <= 5; ++N) {
            const double w = c.rhs_weight(t, N, RhsConvention::LiteralSum);
            EXPECT_GE(w, prev);
            prev = w;
        }
    }
}

TEST(WeightChain, ConventionsAgreeForHardy) {
    WeightChain c({FamilyTag::hardy_interior(3, 1.0), 3});
    for (int N = 0; N <= 3; ++N) {
        EXPECT_DOUBLE_EQ(c.rhs_weight(0.2, N, RhsConvention::Remainder, 0.3),
                         c.rhs_weight(0.2, N, RhsConvention::LiteralSum, 0.3));
    }
}

TEST(WeightChain, ExtremalSeedGivesUnitRemainderForGaussian) {
    WeightChain c({FamilyTag::gaussian_high_dim(3), 3});
    const auto s = c.weight_sequence(0.2, 3);
    double prod = 1.0;
    double sum = 0.0;
    for (int j = 1; j <= 3; ++j) {
        prod *= s.y[j];
        sum += s.w[j];
    }
    EXPECT_NEAR(c.composed_form(0.2, 3, c.extremal_seed()), sum + prod, 1e-13);
}

TEST(WeightChain, ValidityIsEnforced) {
    WeightChain c({FamilyTag::gaussian_high_dim(3), 2});
    EXPECT_THROW(c.x_map(1.5), DomainError);
    WeightChain h({FamilyTag::hardy_interior(3, 1.0), 2});
    EXPECT_THROW(h.chain_variable(2.0), DomainError);
    EXPECT_THROW(WeightChain({FamilyTag::hp_exterior(5, -1.0), 1, 0.0, 100.0}), ParameterError);
}

TEST(WeightChain, KelvinReflectionMatchesPartialSum) {
    WeightChain c({FamilyTag::hardy_interior(3, 1.0), 2});
    const double r = 5.0;
    EXPECT_DOUBLE_EQ(c.kelvin_reflect(r), c.weight_sequence(c.chain_variable(1.0 / r)).partial_sum);
}
