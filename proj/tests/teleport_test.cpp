#include "cvtele/teleport.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "cvtele/criteria.hpp"

using namespace cvtele;

constexpr double kHalfLn2 = std::numbers::ln2 / 2.0;

TEST(Teleport, ClassicalBoundWithoutSqueezing) {
    for (double eta : {0.0, 0.3, 0.5, 1.0}) {
        const FidelityResult f = fidelity(make_state({0.0, eta, 0.0}));
        EXPECT_NEAR(f.fidelity, 0.5, 1e-15);
        EXPECT_FALSE(f.beats_classical);
    }
}

TEST(Teleport, ThreeDbGivesTwoThirds) {
    const FidelityResult f = fidelity(make_state({kHalfLn2, 1.0, 0.0}));
    EXPECT_NEAR(f.fidelity, 2.0 / 3.0, 1e-15);
    EXPECT_TRUE(f.beats_classical);
    EXPECT_FALSE(f.beats_two_thirds);
}

TEST(Teleport, NinetyPercentTransmission) {
    const FidelityResult f = fidelity(make_state({kHalfLn2, 0.9, 0.0}));
    EXPECT_NEAR(f.fidelity, 0.645161290322580645, 1e-15);
    EXPECT_LT(f.fidelity, 2.0 / 3.0);
}

TEST(Teleport, MatchesPureLossClosedForm) {
    for (int i = 0; i <= 30; ++i)
        for (int k = 0; k <= 20; ++k) {
            const double r = 0.1 * i, eta = k / 20.0;
            EXPECT_NEAR(fidelity(make_state({r, eta, 0.0})).fidelity, fidelity_pure_loss(r, eta), 1e-14);
        }
}

TEST(Teleport, FlagsFollowDuanSum) {
    for (int i = 0; i <= 20; ++i)
        for (double nbar : {0.0, 0.5, 3.0}) {
            const auto st = make_state({0.15 * i, 0.6, nbar});
            const FidelityResult f = fidelity(st);
            EXPECT_EQ(f.fidelity, 1.0 / (1.0 + duan_sum(st)));
            EXPECT_EQ(f.beats_classical, duan_sum(st) < 1.0);
        }
}

TEST(Teleport, MonotoneInSqueezingAndTransmission) {
    for (double eta : {0.2, 0.5, 0.9, 1.0}) {
        double prev = 0.0;
        for (int i = 0; i <= 40; ++i) {
            const double f = fidelity(make_state({0.1 * i, eta, 0.0})).fidelity;
            if (i > 0)
                EXPECT_GT(f, prev);
            prev = f;
        }
    }
    for (double r : {0.1, 1.0, 3.0}) {
        double prev = 0.0;
        for (int k = 0; k <= 20; ++k) {
            const double f = fidelity(make_state({r, k / 20.0, 0.0})).fidelity;
            if (k > 0)
                EXPECT_GT(f, prev);
            prev = f;
        }
    }
}

TEST(Teleport, RangeAndHalfTransmissionAsymptote) {
    for (int i = 0; i <= 50; ++i)
        for (int k = 0; k <= 10; ++k) {
            const double f = fidelity(make_state({0.2 * i, k / 10.0, 0.0})).fidelity;
            EXPECT_GE(f, 0.5);
            EXPECT_LT(f, 1.0);
        }
    double last = 0.0;
    for (double r : {1.0, 5.0, 10.0, 20.0}) {
        last = fidelity(make_state({r, 0.5, 0.0})).fidelity;
        EXPECT_LE(last, 2.0 / 3.0);
    }
    EXPECT_NEAR(last, 2.0 / 3.0, 1e-12);
}

TEST(Teleport, BelowClassicalOnlyPastThermalThreshold) {
    const double r = 0.8, eta = 0.7;
    const double thr = nbar_threshold(r, eta).value();
    EXPECT_GT(fidelity(make_state({r, eta, thr * 0.99})).fidelity, 0.5);
    EXPECT_LT(fidelity(make_state({r, eta, thr * 1.01})).fidelity, 0.5);
}
