#include <gtest/gtest.h>

#include <cmath>

#include "tadeval/analytic.hpp"

using namespace tadeval;

TEST(ExpectedRecall, Examples) {
    EXPECT_DOUBLE_EQ(expected_recall_pa({0.05, 1, 0.5}), 0.5);
    EXPECT_DOUBLE_EQ(expected_recall_pa({0.05, 37, 1.0}), 0.0);
    EXPECT_NEAR(expected_recall_pa({0.05, 100, 0.9}), 0.9999734386011124, 1e-15);
}

TEST(ExpectedRecall, MonotoneInThresholdAndLength) {
    for (std::size_t L : {1u, 5u, 50u, 500u}) {
        double prev = 2.0;
        for (double d = 0.0; d <= 1.0; d += 0.01) {
            const double r = expected_recall_pa({0.1, L, d});
            EXPECT_LE(r, prev);
            prev = r;
            EXPECT_LE(r, expected_recall_pa({0.1, L + 1, d}));
        }
    }
}

TEST(ExpectedRecall, Validation) {
    EXPECT_THROW(expected_recall_pa({0.0, 10, 0.5}), UsageError);
    EXPECT_THROW(expected_recall_pa({1.0, 10, 0.5}), UsageError);
    EXPECT_THROW(expected_recall_pa({0.1, 0, 0.5}), UsageError);
    EXPECT_THROW(expected_recall_pa({0.1, 10, 1.5}), UsageError);
}

TEST(ExpectedPrecision, Examples) {
    EXPECT_DOUBLE_EQ(expected_precision_pa({0.05, 20, 0.0}), 0.05);
    EXPECT_NEAR(expected_precision_pa({0.05, 1000, 0.99}), 0.8403303419005765, 1e-12);
    for (double d : {0.1, 0.4, 0.77}) EXPECT_NEAR(expected_precision_pa({0.5, 1, d}), 0.5, 1e-15);
    EXPECT_EQ(expected_precision_pa({0.05, 10, 1.0}), 0.0);
}

TEST(ExpectedPrecision, PrintedFormLeavesUnitInterval) {
    const double printed = expected_precision_pa({0.05, 10, 0.99}, PrecisionForm::AsPrinted);
    EXPECT_TRUE(printed < 0.0 || printed > 1.0);
    const double bayes = expected_precision_pa({0.05, 10, 0.99});
    EXPECT_GE(bayes, 0.0);
    EXPECT_LE(bayes, 1.0);
}

TEST(ExpectedF1Curve, LongSegmentApproachesOne) {
    // Dense-grid maxima computed independently with numpy (100001-point grid).
    const auto c5000 = expected_f1_pa_curve(0.05, 5000, unit_grid(100001));
    EXPECT_NEAR(c5000.max_f1, 0.9876257164891411, 1e-6);
    const auto c1000 = expected_f1_pa_curve(0.05, 1000, unit_grid(100001));
    EXPECT_NEAR(c1000.max_f1, 0.9542501101039175, 1e-6);
}

TEST(ExpectedF1Curve, SingleStepSegment) {
    // With L = 1, P = gamma and R = 1 - delta'; the best grid point is delta' = 0.
    const auto c = expected_f1_pa_curve(0.05, 1, unit_grid(1001));
    EXPECT_NEAR(c.max_f1, 2 * 0.05 / 1.05, 1e-12);
    EXPECT_EQ(c.argmax_delta, 0.0);
}

TEST(ExpectedF1Curve, SmdShapedParameters) {
    const auto c = expected_f1_pa_curve(0.0421, 90, unit_grid(100001));
    EXPECT_NEAR(c.max_f1, 0.7314100025125605, 1e-6);
}

TEST(ExpectedF1Curve, BoundsAndMaxNonDecreasingInLength) {
    const auto grid = unit_grid(2001);
    double prev = 0.0;
    for (std::size_t L : {1u, 2u, 5u, 10u, 50u, 100u, 1000u, 5000u}) {
        const auto c = expected_f1_pa_curve(0.05, L, grid);
        for (double f : c.f1) {
            EXPECT_GE(f, 0.0);
            EXPECT_LE(f, 1.0);
        }
        EXPECT_GE(c.max_f1, prev);
        prev = c.max_f1;
    }
    EXPECT_THROW(expected_f1_pa_curve(0.05, 10, {}), UsageError);
}

TEST(Layout, SingleSegment) {
    const auto l = single_segment_layout(0.05, 100);
    EXPECT_EQ(l.total_length(), 2000u);
    EXPECT_DOUBLE_EQ(l.gamma(), 0.05);
    EXPECT_NEAR(expected_recall_pa(l, 0.9), expected_recall_pa({0.05, 100, 0.9}), 1e-15);
    EXPECT_NEAR(expected_precision_pa(l, 0.9), expected_precision_pa({0.05, 100, 0.9}), 1e-15);
}

TEST(MonteCarlo, RecallMatchesClosedForm) {
    const auto l = single_segment_layout(0.05, 100);
    const auto rep = monte_carlo_pa(l, 0.9, 100000, 77);
    const double target = 0.9999734386011124;
    EXPECT_LE(std::abs(rep.pooled_recall - target), 3.0 * std::max(rep.stderr_pooled_recall, 1.0 / 100000));
    EXPECT_EQ(rep.pooled_recall, rep.mean_recall);
}

TEST(MonteCarlo, ZeroThresholdDetectsEverything) {
    const SegmentLayout l{SegmentSet{{{10, 20}, {50, 90}}, 200}};
    const auto rep = monte_carlo_pa(l, 0.0, 500, 1);
    EXPECT_EQ(rep.mean_recall, 1.0);
    EXPECT_EQ(rep.stderr_recall, 0.0);
    EXPECT_DOUBLE_EQ(rep.pooled_precision, 50.0 / 200.0);
}

TEST(MonteCarlo, TwoSegmentLengthWeightedRecall) {
    const SegmentLayout l{SegmentSet{{{100, 150}, {1000, 1500}}, 5000}};
    const double d = 0.97;
    const double target = (50 * (1 - std::pow(d, 50)) + 500 * (1 - std::pow(d, 500))) / 550;
    EXPECT_NEAR(expected_recall_pa(l, d), target, 1e-15);
    const auto rep = monte_carlo_pa(l, d, 20000, 5);
    EXPECT_LE(std::abs(rep.pooled_recall - target), 3.0 * rep.stderr_pooled_recall);
    EXPECT_LE(std::abs(rep.pooled_precision - expected_precision_pa(l, d)), 3.0 * rep.stderr_pooled_precision);
}

TEST(MonteCarlo, PADominatesPointOnEveryLayout) {
    for (std::size_t L : {5u, 40u, 300u}) {
        const auto l = single_segment_layout(0.1, L);
        for (double d : {0.3, 0.8, 0.95}) {
            const auto pa = monte_carlo_pa(l, d, 400, 2, ProtocolConfig::pa());
            const auto pt = monte_carlo_pa(l, d, 400, 2, ProtocolConfig::point());
            EXPECT_GE(pa.mean_f1, pt.mean_f1);
            EXPECT_GE(pa.pooled_f1, pt.pooled_f1);
        }
    }
}

TEST(MonteCarlo, ThreadCountIndependent) {
    const auto l = single_segment_layout(0.1, 30);
    setenv("TADEVAL_THREADS", "1", 1);
    const auto a = monte_carlo_pa(l, 0.8, 300, 9);
    setenv("TADEVAL_THREADS", "3", 1);
    const auto b = monte_carlo_pa(l, 0.8, 300, 9);
    unsetenv("TADEVAL_THREADS");
    EXPECT_EQ(a.mean_f1, b.mean_f1);
    EXPECT_EQ(a.pooled_precision, b.pooled_precision);
}

TEST(MonteCarlo, Validation) {
    const auto l = single_segment_layout(0.1, 30);
    EXPECT_THROW(monte_carlo_pa(l, 0.5, 0, 1), UsageError);
    EXPECT_THROW(monte_carlo_pa(l, 1.5, 10, 1), UsageError);
}
