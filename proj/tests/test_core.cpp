#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tadeval/core.hpp"

using namespace tadeval;

namespace {

LabelSeries L(std::vector<std::uint8_t> v) { return LabelSeries(std::move(v)); }
PredictionSeries P(std::vector<std::uint8_t> v) { return PredictionSeries{std::move(v), Protocol::Point}; }

}  // namespace

TEST(ExtractSegments, SingleRun) {
    const auto s = extract_segments(L({0, 1, 1, 1, 0}));
    ASSERT_EQ(s.count(), 1u);
    EXPECT_EQ(s.segments[0], (Segment{1, 4}));
    EXPECT_EQ(s.total_length, 5u);
}

TEST(ExtractSegments, NoAnomalies) { EXPECT_EQ(extract_segments(L({0, 0, 0})).count(), 0u); }

TEST(ExtractSegments, TwoRunsIncludingEdges) {
    const auto s = extract_segments(L({1, 0, 1, 1}));
    ASSERT_EQ(s.count(), 2u);
    EXPECT_EQ(s.segments[0], (Segment{0, 1}));
    EXPECT_EQ(s.segments[1], (Segment{2, 4}));
}

TEST(ExtractSegments, PaintRoundTripAndLengthSum) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const auto y = L(oracle::random_run_labels(300, rng, 0.1, 25));
        const auto segs = extract_segments(y);
        EXPECT_NO_THROW(validate(segs));
        EXPECT_EQ(paint_segments(segs), y);
        std::size_t ones = 0;
        for (auto v : y.labels) ones += v;
        EXPECT_EQ(segs.covered(), ones);
        EXPECT_EQ(extract_segments(paint_segments(segs)), segs);
    }
}

TEST(Validate, RejectsAdjacentAndOverlapping) {
    EXPECT_THROW(validate(SegmentSet{{{0, 2}, {2, 4}}, 5}), DataError);
    EXPECT_THROW(validate(SegmentSet{{{0, 3}, {2, 4}}, 5}), DataError);
    EXPECT_THROW(validate(SegmentSet{{{3, 6}}, 5}), DataError);
    EXPECT_THROW(validate(SegmentSet{{{3, 3}}, 5}), DataError);
    EXPECT_NO_THROW(validate(SegmentSet{{{0, 2}, {3, 5}}, 5}));
}

TEST(DatasetStats, CountArithmetic) {
    const auto st = dataset_stats(L({0, 1, 1, 1, 0, 0, 0, 0, 0, 0}));
    EXPECT_DOUBLE_EQ(st.anomaly_ratio_gamma, 0.3);
    EXPECT_EQ(st.segment_count, 1u);
    ASSERT_EQ(st.segment_lengths.size(), 1u);
    EXPECT_EQ(st.segment_lengths[0], 3u);
    EXPECT_DOUBLE_EQ(st.mean_segment_length, 3.0);
}

TEST(Threshold, StrictInequality) {
    EXPECT_EQ(threshold_predictions(ScoreSeries({0.1, 0.9}), 0.5).predictions, (std::vector<std::uint8_t>{0, 1}));
    EXPECT_EQ(threshold_predictions(ScoreSeries({0.5}), 0.5).predictions, (std::vector<std::uint8_t>{0}));
    EXPECT_EQ(threshold_predictions(ScoreSeries({2, 3, 1}), 0.0).predictions, (std::vector<std::uint8_t>{1, 1, 1}));
}

TEST(Confusion, Examples) {
    EXPECT_EQ(confusion(P({0, 1, 1, 1, 0}), L({0, 1, 1, 1, 0})), (ConfusionCounts{3, 0, 0, 2}));
    EXPECT_EQ(confusion(P({0, 0, 1, 0, 0}), L({0, 1, 1, 1, 0})), (ConfusionCounts{1, 0, 2, 2}));
    EXPECT_EQ(confusion(P({1, 1}), L({0, 0})), (ConfusionCounts{0, 2, 0, 0}));
}

TEST(Confusion, LengthMismatch) { EXPECT_THROW(confusion(P({1, 0}), L({0})), DataError); }

TEST(Prf1, Examples) {
    EXPECT_EQ(prf1({3, 0, 0, 0}), (MetricsTriple{1.0, 1.0, 1.0}));
    const auto m = prf1({1, 0, 2, 0});
    EXPECT_DOUBLE_EQ(m.precision, 1.0);
    EXPECT_DOUBLE_EQ(m.recall, 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(m.f1, 0.5);
    EXPECT_EQ(prf1({0, 0, 5, 0}), (MetricsTriple{0.0, 0.0, 0.0}));
}

TEST(Prf1, HarmonicMeanBoundsAndCountSum) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::uint64_t> d(0, 50);
    for (int i = 0; i < 2000; ++i) {
        const ConfusionCounts c{d(rng), d(rng), d(rng), d(rng)};
        const auto m = prf1(c);
        for (double v : {m.precision, m.recall, m.f1}) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
        }
        if (m.precision > 0 && m.recall > 0) {
            EXPECT_LE(m.f1, std::max(m.precision, m.recall) + 1e-15);
            EXPECT_GE(m.f1, std::min(m.precision, m.recall) - 1e-15);
        }
    }
    std::vector<std::uint8_t> p(100), y(100);
    for (std::size_t t = 0; t < 100; ++t) {
        p[t] = d(rng) % 2;
        y[t] = d(rng) % 2;
    }
    EXPECT_EQ(confusion(P(p), L(y)).total(), 100u);
}

TEST(Types, InvariantsEnforced) {
    EXPECT_THROW(LabelSeries({0, 2}), DataError);
    EXPECT_THROW(ScoreSeries(std::vector<double>{}), DataError);
    EXPECT_THROW(ScoreSeries({1.0, std::nan("")}), DataError);
    EXPECT_THROW(TimeSeries(2, 2, {1, 2, 3}), DataError);
    EXPECT_THROW(TimeSeries(0, 1, {}), DataError);
    EXPECT_THROW(TimeSeries(1, 1, {INFINITY}), DataError);
    EXPECT_THROW(parse_protocol("bogus"), UsageError);
    EXPECT_EQ(parse_protocol("pa"), Protocol::PA);
}
