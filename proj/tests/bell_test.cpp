#include "cvtele/bell.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cvtele/criteria.hpp"

using namespace cvtele;

namespace {

constexpr double kHalfLn2 = std::numbers::ln2 / 2.0;
constexpr double kPiSqOver4 = std::numbers::pi * std::numbers::pi / 4.0;

// Stationary point of the closed-form B(J): with a = 1/s+ + 1/s-,
// dB/dJ = 0  <=>  2a e^{-aJ} = (4/s-) e^{-4J/s-}
//            <=>  J* = ln(2 / (a s-)) / (4/s- - a).
// Only meaningful for s+ > s- (r > 0).
double analytic_j_star(const GaussianEprState& s) {
    const double a = 1.0 / s.sigma_plus_sq() + 1.0 / s.sigma_minus_sq();
    const double sm = s.sigma_minus_sq();
    return std::log(2.0 / (a * sm)) / (4.0 / sm - a);
}

// Exhaustive dense scan, no refinement.
double brute_max_b(const GaussianEprState& s, int points) {
    const double hi = 30.0 * s.sigma_minus_sq();
    double best = -1e300;
    for (int i = 0; i < points; ++i)
        best = std::max(best, b_of_j_closed_form(s, hi * i / (points - 1)));
    return best;
}

}  // namespace

TEST(Bell, PiCorrAtOrigin) {
    for (double r : {0.0, 0.3, 2.0})
        EXPECT_NEAR(pi_corr(make_state({r, 1.0, 0.0}), {}), 1.0, 1e-14);
    const auto s = make_state({0.9, 0.7, 0.2});
    EXPECT_NEAR(pi_corr(s, {}), 1.0 / (s.sigma_plus_sq() * s.sigma_minus_sq()), 1e-15);
}

TEST(Bell, PiCorrVacuumDisplaced) {
    const auto vac = make_state({0.0, 1.0, 0.0});
    for (double j : {0.0, 0.1, 0.7, 2.0})
        EXPECT_NEAR(pi_corr(vac, {std::sqrt(j), 0.0, 0.0, 0.0}), std::exp(-2 * j), 1e-15);
}

TEST(Bell, PiCorrIsScaledWigner) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> rr(0.0, 3.0), ee(0.0, 1.0), nn(0.0, 1.0), xx(-3.0, 3.0);
    for (int i = 0; i < 100000; ++i) {
        const auto s = make_state({rr(rng), ee(rng), nn(rng)});
        const TwoModePoint pt{xx(rng), xx(rng), xx(rng), xx(rng)};
        const double pi = pi_corr(s, pt);
        const double w = kPiSqOver4 * wigner(s, pt);
        ASSERT_NEAR(pi, w, 1e-12 * std::max(pi, 1e-300) + 1e-300);
        ASSERT_GE(pi, 0.0);  // may underflow far from the origin
        ASSERT_LE(pi, 1.0);
    }
}

TEST(Bell, FourPointCombinationMatchesClosedForm) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> rr(0.0, 3.0), ee(0.0, 1.0), nn(0.0, 0.5), jj(0.0, 2.0);
    for (int i = 0; i < 20000; ++i) {
        const auto s = make_state({rr(rng), ee(rng), nn(rng)});
        const double j = jj(rng);
        ASSERT_NEAR(b_of_j(s, j), b_of_j_closed_form(s, j), 1e-12);
    }
}

TEST(Bell, BAtZeroDisplacement) {
    const auto s = make_state({1.0, 0.8, 0.1});
    EXPECT_NEAR(b_of_j(s, 0.0), 2.0 / (s.sigma_plus_sq() * s.sigma_minus_sq()), 1e-15);
    EXPECT_NEAR(b_of_j(make_state({1.0, 1.0, 0.0}), 0.0), 2.0, 1e-14);
    EXPECT_THROW(b_of_j(s, -0.1), DomainError);
}

TEST(Bell, VacuumNeverExceedsTwo) {
    const auto vac = make_state({0.0, 1.0, 0.0});
    for (int i = 0; i <= 200; ++i) {
        const double j = 0.02 * i;
        const double b = b_of_j(vac, j);
        EXPECT_NEAR(b, 1 + 2 * std::exp(-2 * j) - std::exp(-4 * j), 1e-15);
        EXPECT_LE(b, 2.0);
    }
}

TEST(Bell, PureStateViolatesAtSmallJ) {
    const auto s = make_state({1.0, 1.0, 0.0});
    bool found = false;
    for (int i = 1; i <= 1000 && !found; ++i)
        found = b_of_j(s, 1e-4 * i) > 2.0;
    EXPECT_TRUE(found);
}

TEST(Bell, MaximizeVacuumReturnsBoundary) {
    const BellResult b = maximize_b(make_state({0.0, 1.0, 0.0}));
    EXPECT_EQ(b.j_max, 0.0);
    EXPECT_EQ(b.b_max, 2.0);
    EXPECT_FALSE(b.violates);
}

TEST(Bell, MaximizeMatchesAnalyticStationaryPoint) {
    for (const EprParams p : {EprParams{kHalfLn2, 1.0, 0.0}, EprParams{kHalfLn2, 0.9, 0.0},
                              EprParams{0.01, 1.0, 0.0}, EprParams{2.0, 0.99, 0.0},
                              EprParams{1.0, 0.7, 0.3}, EprParams{4.0, 1.0, 0.0}}) {
        const auto s = make_state(p);
        const BellResult b = maximize_b(s);
        const double j_star = analytic_j_star(s);
        const double b_star = b_of_j_closed_form(s, j_star);
        EXPECT_NEAR(b.b_max, b_star, 1e-13) << p.r << ' ' << p.eta;
        EXPECT_NEAR(b.j_max, j_star, 1e-6 * j_star) << p.r << ' ' << p.eta;
        EXPECT_GE(b.b_max, brute_max_b(s, 20001) - 1e-15);
        EXPECT_GE(b.b_max, b_of_j(s, 0.0));
    }
}

TEST(Bell, ThreeDbExamples) {
    const BellResult pure = maximize_b(make_state({kHalfLn2, 1.0, 0.0}));
    EXPECT_TRUE(pure.violates);
    const BellResult lossy = maximize_b(make_state({kHalfLn2, 0.9, 0.0}));
    EXPECT_TRUE(lossy.violates);
    EXPECT_LT(pure.b_max - 2.0, 0.2);
    EXPECT_GT(pure.b_max, lossy.b_max);
}

TEST(Bell, LosslessViolationForAnySqueezing) {
    for (double r : {1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0}) {
        const BellResult b = maximize_b(make_state({r, 1.0, 0.0}));
        EXPECT_GT(b.b_max, 2.0) << r;
        EXPECT_GT(b.j_max, 0.0);
    }
}

TEST(Bell, NoViolationWithoutEntanglement) {
    for (double nbar : {0.0, 0.3, 1.5})
        for (int i = 0; i < 60; ++i)
            for (int k = 0; k < 60; ++k) {
                const EprParams p{3.0 * i / 59, k / 59.0, nbar};
                const auto s = make_state(p);
                if (duan_sum(s) < 1.0)
                    continue;
                EXPECT_LE(maximize_b(s).b_max, 2.0 + 1e-9) << p.r << ' ' << p.eta << ' ' << nbar;
            }
}

TEST(Bell, RejectsNonPositiveTolerance) {
    EXPECT_THROW(maximize_b(make_state({1.0, 1.0, 0.0}), 0.0), DomainError);
}

TEST(Bell, LossBoundHeuristic) {
    EXPECT_TRUE(loss_bound_ok({3.0, 1.0, 0.0}));
    EXPECT_TRUE(loss_bound_ok({2.0, 0.99, 0.0}));   // 0.546
    EXPECT_FALSE(loss_bound_ok({2.0, 0.9, 0.0}));   // 5.46
    EXPECT_THROW(loss_bound_ok({2.0, 1.5, 0.0}), DomainError);
}

TEST(ScaledChsh, StandardAnglesReachTsirelson) {
    const ChshAngles a{0.0, std::numbers::pi / 2, std::numbers::pi / 4, -std::numbers::pi / 4};
    EXPECT_NEAR(scaled_chsh(1.0, 0.0, a).s_value, 2.0 * std::numbers::sqrt2, 1e-15);
}

TEST(ScaledChsh, RejectsBadVisibility) {
    EXPECT_THROW(scaled_chsh(1.2, 0.0, {}), DomainError);
    EXPECT_THROW(scaled_chsh(-0.1, 0.0, {}), DomainError);
    EXPECT_THROW(optimize_scaled_chsh(std::nan(""), 0.0), DomainError);
}

TEST(ScaledChsh, OptimizerFindsAnalyticMaximum) {
    for (double theta : {0.0, 0.3, -1.2, 2.9}) {
        const ScaledChsh c = optimize_scaled_chsh(1.0, theta);
        EXPECT_NEAR(c.s_value, 2.0 * std::numbers::sqrt2, 1e-9) << theta;
        EXPECT_NEAR(scaled_chsh(1.0, theta, c.angles).s_value, c.s_value, 1e-15);
    }
    EXPECT_EQ(optimize_scaled_chsh(0.0, 0.0).s_value, 0.0);
}

TEST(ScaledChsh, PhaseOffsetShiftsAnglesNotValue) {
    const ScaledChsh a = optimize_scaled_chsh(0.8, 0.0);
    const ScaledChsh b = optimize_scaled_chsh(0.8, 0.3);
    EXPECT_NEAR(a.s_value, b.s_value, 1e-12);
    EXPECT_NE(a.angles, b.angles);
}

TEST(ScaledChsh, VisibilityThresholds) {
    EXPECT_NEAR(optimize_scaled_chsh(1.0 / std::numbers::sqrt2, 0.0).s_value, 2.0, 1e-9);
    const double v = 2.46 / (2.0 * std::numbers::sqrt2);
    EXPECT_NEAR(v, 0.869741340859453455, 1e-15);
    EXPECT_NEAR(optimize_scaled_chsh(v, 0.4).s_value, 2.46, 1e-9);
}

TEST(ScaledChsh, LinearInVisibilityAndBounded) {
    const ChshAngles a{0.0, 1.0, 0.4, -0.6};
    const double unit = scaled_chsh(1.0, 0.2, a).s_value;
    for (int i = 0; i <= 10; ++i) {
        const double v = i / 10.0;
        const double s = scaled_chsh(v, 0.2, a).s_value;
        EXPECT_NEAR(s, v * unit, 1e-15);
        EXPECT_LE(std::abs(s), 2.0 * std::numbers::sqrt2 * v + 1e-15);
    }
}
