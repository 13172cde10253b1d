#include <gtest/gtest.h>

#include <cmath>

#include "pilotopt/errors.hpp"
#include "pilotopt/root_finding.hpp"

using namespace pilotopt;

TEST(Bisect, FindsSqrtTwo) {
    const auto r = bisect([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-12);
    EXPECT_NEAR(r.root, std::sqrt(2.0), 1e-12);
    EXPECT_LE(r.hi - r.lo, 1e-12);
    EXPECT_GT(r.iterations, 30);
}

TEST(Bisect, DecreasingFunction) {
    const auto r = bisect([](double x) { return 1.0 - x; }, 0.0, 3.0, 1e-10);
    EXPECT_NEAR(r.root, 1.0, 1e-10);
}

TEST(Bisect, ExactZeroAtEndpoint) {
    const auto r = bisect([](double x) { return x; }, 0.0, 1.0, 1e-10);
    EXPECT_EQ(r.root, 0.0);
}

TEST(Bisect, NoBracketCarriesSamples) {
    try {
        bisect([](double x) { return x * x + 1.0; }, -1.0, 2.0, 1e-10);
        FAIL() << "expected SolverError";
    } catch (const SolverError& e) {
        ASSERT_EQ(e.samples().size(), 2u);
        EXPECT_EQ(e.samples()[0].x, -1.0);
        EXPECT_EQ(e.samples()[1].value, 5.0);
    }
}

TEST(Bisect, IterationCapReportsBestIterate) {
    try {
        bisect([](double x) { return x - 0.3; }, 0.0, 1.0, 1e-15, 5);
        FAIL() << "expected SolverError";
    } catch (const SolverError& e) {
        EXPECT_NEAR(e.best_iterate(), 0.3, 1.0 / 32);
    }
}

TEST(Bisect, StopsAtFloatingPointResolution) {
    const auto r = bisect([](double x) { return x - 1e7 - 0.5; }, 0.0, 2e7, 1e-20);
    EXPECT_NEAR(r.root, 1e7 + 0.5, 1e-8);
}

TEST(SignChanges, CountsIgnoringZeros) {
    EXPECT_EQ(count_sign_changes({1.0, 0.0, -1.0}), 1);
    EXPECT_EQ(count_sign_changes({1.0, -1.0, 2.0, -3.0}), 3);
    EXPECT_EQ(count_sign_changes({0.0, 0.0}), 0);
}
