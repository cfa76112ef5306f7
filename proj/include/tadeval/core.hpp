#pragma once

// Fundamental series types, segment extraction and P/R/F1 arithmetic.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tadeval {

// Exit-code classes used by the CLI: usage problems map to 1, data problems to 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Protocol : std::uint8_t { Point, PA, PAPercentK };

const char* to_string(Protocol p) noexcept;
Protocol parse_protocol(const std::string& name);

// Row-major T x N matrix of observations.
class TimeSeries {
public:
    TimeSeries() = default;
    TimeSeries(std::size_t rows, std::size_t cols, std::vector<double> values,
               std::vector<std::string> channel_names = {});

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double operator()(std::size_t t, std::size_t c) const noexcept { return values_[t * cols_ + c]; }
    double& operator()(std::size_t t, std::size_t c) noexcept { return values_[t * cols_ + c]; }

    std::span<const double> row(std::size_t t) const noexcept {
        return {values_.data() + t * cols_, cols_};
    }
    const std::vector<double>& values() const noexcept { return values_; }
    const std::vector<std::string>& channel_names() const noexcept { return channel_names_; }

    bool operator==(const TimeSeries&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
    std::vector<std::string> channel_names_;
};

struct LabelSeries {
    std::vector<std::uint8_t> labels;

    LabelSeries() = default;
    explicit LabelSeries(std::vector<std::uint8_t> l);

    std::size_t size() const noexcept { return labels.size(); }
    bool operator==(const LabelSeries&) const = default;
};

struct ScoreSeries {
    std::vector<double> scores;
    std::string origin;

    ScoreSeries() = default;
    explicit ScoreSeries(std::vector<double> s, std::string origin = "external");

    std::size_t size() const noexcept { return scores.size(); }
};

struct PredictionSeries {
    std::vector<std::uint8_t> predictions;
    Protocol protocol = Protocol::Point;

    std::size_t size() const noexcept { return predictions.size(); }
    bool operator==(const PredictionSeries&) const = default;
};

// Half-open [start, end).
struct Segment {
    std::size_t start = 0;
    std::size_t end = 0;

    std::size_t length() const noexcept { return end - start; }
    bool operator==(const Segment&) const = default;
};

struct SegmentSet {
    std::vector<Segment> segments;
    std::size_t total_length = 0;

    std::size_t count() const noexcept { return segments.size(); }
    std::size_t covered() const noexcept;
    bool operator==(const SegmentSet&) const = default;
};

// Throws DataError unless segments are sorted, in range, non-empty, disjoint and non-adjacent.
void validate(const SegmentSet& set);

struct ConfusionCounts {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
    std::uint64_t tn = 0;

    std::uint64_t total() const noexcept { return tp + fp + fn + tn; }
    bool operator==(const ConfusionCounts&) const = default;
};

struct MetricsTriple {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;

    bool operator==(const MetricsTriple&) const = default;
};

struct DatasetStats {
    double anomaly_ratio_gamma = 0.0;
    std::size_t segment_count = 0;
    std::vector<std::size_t> segment_lengths;
    double mean_segment_length = 0.0;
};

SegmentSet extract_segments(const LabelSeries& labels);

// Inverse of extract_segments.
LabelSeries paint_segments(const SegmentSet& set);

DatasetStats dataset_stats(const LabelSeries& labels);

// y_hat = 1 iff score > delta.
PredictionSeries threshold_predictions(const ScoreSeries& scores, double delta);

ConfusionCounts confusion(const PredictionSeries& pred, const LabelSeries& labels);

MetricsTriple prf1(const ConfusionCounts& counts) noexcept;

}  // namespace tadeval
