#include "cvtele/golden_section.hpp"

#include <gtest/gtest.h>

#include <cmath>

using cvtele::golden_section_maximize;

TEST(GoldenSection, FindsInteriorMaximum) {
    auto f = [](double x) { return -(x - 1.3) * (x - 1.3) + 4.0; };
    const auto m = golden_section_maximize(f, 0.0, 3.0, 1e-10);
    // A flat top limits the argument to about sqrt(eps) relative.
    EXPECT_NEAR(m.arg, 1.3, 1e-7);
    EXPECT_NEAR(m.value, 4.0, 1e-15);
}

TEST(GoldenSection, ConvergesToEndpointForMonotoneFunction) {
    const auto m = golden_section_maximize([](double x) { return -x; }, 0.0, 1.0, 1e-12);
    EXPECT_LT(m.arg, 1e-11);
}

TEST(GoldenSection, NonPolynomialPeak) {
    // x e^{-x} peaks at x = 1.
    const auto m = golden_section_maximize([](double x) { return x * std::exp(-x); }, 0.0, 5.0, 1e-9);
    EXPECT_NEAR(m.arg, 1.0, 1e-6);
    EXPECT_NEAR(m.value, std::exp(-1.0), 1e-14);
}

TEST(GoldenSection, RejectsBadArguments) {
    auto f = [](double x) { return x; };
    EXPECT_THROW(golden_section_maximize(f, 0.0, 1.0, 0.0), std::invalid_argument);
    EXPECT_THROW(golden_section_maximize(f, 2.0, 1.0, 1e-3), std::invalid_argument);
}

TEST(GoldenSection, DegenerateBracket) {
    const auto m = golden_section_maximize([](double x) { return x; }, 2.0, 2.0, 1e-6);
    EXPECT_EQ(m.arg, 2.0);
}
