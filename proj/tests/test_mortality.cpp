#include <gtest/gtest.h>

#include "support.hpp"

using namespace rcla;

namespace {

// plain midpoint rule at 1/1200 yr, independent of the adaptive quadrature
double riemann_annuity(double x, double r, const GompertzParams& g) {
    const double h = 1.0 / 1200.0;
    double sum = 0.0;
    for (double t = 0.5 * h; x + t < kTerminalAge; t += h) {
        sum += std::exp(-r * t) * survival(x, t, g) * h;
    }
    return sum;
}

} // namespace

TEST(Gompertz, PublishedAnnuityRow) {
    const GompertzParams g{87.8, 9.5};
    const double ages[] = {50, 57, 62, 67, 75};
    const double published[] = {21.838, 18.810, 16.493, 14.102, 10.304};
    for (int i = 0; i < 5; ++i) {
        EXPECT_NEAR(annuity_factor(ages[i], 0.025, g) / published[i], 1.0, 0.002) << ages[i];
    }
    EXPECT_NEAR(annuity_factor(50, 0.025, g), 21.838173, 1e-6);
    EXPECT_NEAR(annuity_factor(75, 0.025, g), 10.303904, 1e-6);
}

TEST(Gompertz, AnnuityMatchesRiemannSum) {
    const GompertzParams g{87.8, 9.5};
    for (const double x : {0.0, 30.0, 50.0, 65.0, 90.0, 110.0}) {
        for (const double r : {0.0, 0.025, 0.08}) {
            EXPECT_NEAR(annuity_factor(x, r, g), riemann_annuity(x, r, g), 1e-6) << x << ' ' << r;
        }
    }
}

TEST(Gompertz, Edges) {
    const GompertzParams g{};
    EXPECT_EQ(annuity_factor(120.0, 0.025, g), 0.0);
    EXPECT_EQ(annuity_factor(130.0, 0.025, g), 0.0);
    EXPECT_EQ(survival(65.0, 0.0, g), 1.0);
    EXPECT_THROW(survival(-1.0, 1.0, g), std::invalid_argument);
    EXPECT_THROW(survival(60.0, -1.0, g), std::invalid_argument);
    EXPECT_THROW(annuity_factor(60.0, 0.025, GompertzParams{87.8, 0.0}), std::invalid_argument);
    EXPECT_THROW(annuity_factor(60.0, 0.025, GompertzParams{-1.0, 9.5}), std::invalid_argument);
}

TEST(Gompertz, SurvivalMultiplicative) {
    test::Draw draw(41);
    for (int c = 0; c < test::kCases; ++c) {
        const GompertzParams g{draw.uniform(70.0, 100.0), draw.uniform(5.0, 15.0)};
        const double x = draw.uniform(0.0, 100.0);
        const double t = draw.uniform(0.0, 30.0);
        const double s = draw.uniform(0.0, 30.0);
        const double lhs = survival(x, t + s, g);
        const double rhs = survival(x, t, g) * survival(x + t, s, g);
        EXPECT_NEAR(lhs, rhs, 1e-12 + 1e-10 * lhs);
    }
}

TEST(Gompertz, HazardIsLogSurvivalSlope) {
    test::Draw draw(42);
    for (int c = 0; c < test::kCases; ++c) {
        const GompertzParams g{draw.uniform(70.0, 100.0), draw.uniform(5.0, 15.0)};
        const double x = draw.uniform(20.0, 100.0);
        const double h = 1e-5;
        const double fd = -(std::log(survival(x, h, g)) - std::log(survival(x, 0.0, g))) / h;
        const double central = -(std::log(survival(x - h, 2 * h, g))) / (2 * h);
        // log of a survival within ~1e-10 of 1 keeps only ~6 digits
        EXPECT_NEAR(central, hazard(x, g), 1e-4 * hazard(x, g));
        EXPECT_NEAR(fd, hazard(x, g), 1e-3 * hazard(x, g));
    }
}

TEST(Gompertz, AnnuityMonotone) {
    test::Draw draw(43);
    const GompertzParams g{};
    for (int c = 0; c < test::kCases; ++c) {
        const double x1 = draw.uniform(20.0, 110.0);
        const double x2 = x1 + draw.uniform(0.1, 5.0);
        const double r1 = draw.uniform(0.0, 0.08);
        const double r2 = r1 + draw.uniform(0.001, 0.02);
        EXPECT_GT(annuity_factor(x1, r1, g), annuity_factor(x2, r1, g));
        EXPECT_GT(annuity_factor(x1, r1, g), annuity_factor(x1, r2, g));
    }
}

TEST(AnnuityTail, MatchesDiscountedDeferredAnnuity) {
    test::Draw draw(44);
    const GompertzParams g{};
    for (int c = 0; c < test::kCases; ++c) {
        const double x0 = draw.uniform(40.0, 90.0);
        const AnnuityTail tail(x0, 0.025, g, 97);
        const double t = draw.uniform(0.0, kTerminalAge - x0);
        const double expected = std::exp(-0.025 * t) * survival(x0, t, g) * annuity_factor(x0 + t, 0.025, g);
        EXPECT_NEAR(tail(t), expected, 1e-10);
    }
    const AnnuityTail tail(62.0, 0.025, g, 58 * 4);
    EXPECT_NEAR(tail(0.0), annuity_factor(62.0, 0.025, g), 1e-12);
    EXPECT_NEAR(tail.annuity_at_node(40), annuity_factor(72.0, 0.025, g), 1e-10);
    EXPECT_EQ(tail(58.0), 0.0);
}
