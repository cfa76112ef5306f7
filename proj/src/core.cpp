#include "tadeval/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tadeval {

const char* to_string(Protocol p) noexcept {
    switch (p) {
        case Protocol::Point: return "point";
        case Protocol::PA: return "pa";
        case Protocol::PAPercentK: return "pak";
    }
    return "unknown";
}

Protocol parse_protocol(const std::string& name) {
    if (name == "point" || name == "f1") return Protocol::Point;
    if (name == "pa") return Protocol::PA;
    if (name == "pak" || name == "pa%k" || name == "pa_percent_k") return Protocol::PAPercentK;
    throw UsageError("unknown protocol '" + name + "' (expected point, pa or pak)");
}

TimeSeries::TimeSeries(std::size_t rows, std::size_t cols, std::vector<double> values,
                       std::vector<std::string> channel_names)
    : rows_(rows), cols_(cols), values_(std::move(values)), channel_names_(std::move(channel_names)) {
    if (rows_ == 0 || cols_ == 0) throw DataError("time series needs at least one row and one channel");
    if (values_.size() != rows_ * cols_) throw DataError("time series value count does not match T x N");
    if (!channel_names_.empty() && channel_names_.size() != cols_)
        throw DataError("channel name count does not match channel count");
    for (double v : values_)
        if (!std::isfinite(v)) throw DataError("time series contains a non-finite value");
}

LabelSeries::LabelSeries(std::vector<std::uint8_t> l) : labels(std::move(l)) {
    for (auto v : labels)
        if (v > 1) throw DataError("labels must be 0 or 1");
}

ScoreSeries::ScoreSeries(std::vector<double> s, std::string o) : scores(std::move(s)), origin(std::move(o)) {
    if (scores.empty()) throw DataError("score series is empty");
    for (double v : scores)
        if (!std::isfinite(v)) throw DataError("score series contains a non-finite value");
}

std::size_t SegmentSet::covered() const noexcept {
    std::size_t n = 0;
    for (const auto& s : segments) n += s.length();
    return n;
}

void validate(const SegmentSet& set) {
    std::size_t prev_end = 0;
    bool first = true;
    for (const auto& s : set.segments) {
        if (s.start >= s.end) throw DataError("empty or inverted segment");
        if (s.end > set.total_length) throw DataError("segment extends past series end");
        if (!first && s.start <= prev_end) throw DataError("segments overlap, touch or are unsorted");
        prev_end = s.end;
        first = false;
    }
}

SegmentSet extract_segments(const LabelSeries& labels) {
    SegmentSet out;
    out.total_length = labels.size();
    const auto& y = labels.labels;
    std::size_t t = 0;
    while (t < y.size()) {
        if (y[t] == 0) {
            ++t;
            continue;
        }
        std::size_t start = t;
        while (t < y.size() && y[t] == 1) ++t;
        out.segments.push_back({start, t});
    }
    return out;
}

LabelSeries paint_segments(const SegmentSet& set) {
    validate(set);
    std::vector<std::uint8_t> y(set.total_length, 0);
    for (const auto& s : set.segments) std::fill(y.begin() + s.start, y.begin() + s.end, 1);
    return LabelSeries(std::move(y));
}

DatasetStats dataset_stats(const LabelSeries& labels) {
    DatasetStats st;
    const auto segs = extract_segments(labels);
    st.segment_count = segs.count();
    std::size_t total = 0;
    for (const auto& s : segs.segments) {
        st.segment_lengths.push_back(s.length());
        total += s.length();
    }
    if (!labels.labels.empty())
        st.anomaly_ratio_gamma = static_cast<double>(total) / static_cast<double>(labels.size());
    if (st.segment_count > 0)
        st.mean_segment_length = static_cast<double>(total) / static_cast<double>(st.segment_count);
    return st;
}

PredictionSeries threshold_predictions(const ScoreSeries& scores, double delta) {
    PredictionSeries p;
    p.protocol = Protocol::Point;
    p.predictions.resize(scores.size());
    std::transform(scores.scores.begin(), scores.scores.end(), p.predictions.begin(),
                   [delta](double s) -> std::uint8_t { return s > delta ? 1 : 0; });
    return p;
}

ConfusionCounts confusion(const PredictionSeries& pred, const LabelSeries& labels) {
    if (pred.size() != labels.size())
        throw DataError("prediction length " + std::to_string(pred.size()) + " does not match label length " +
                        std::to_string(labels.size()));
    ConfusionCounts c;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const bool p = pred.predictions[i] != 0;
        const bool y = labels.labels[i] != 0;
        if (p && y) ++c.tp;
        else if (p) ++c.fp;
        else if (y) ++c.fn;
        else ++c.tn;
    }
    return c;
}

MetricsTriple prf1(const ConfusionCounts& c) noexcept {
    MetricsTriple m;
    const auto tp = static_cast<double>(c.tp);
    if (c.tp + c.fp > 0) m.precision = tp / static_cast<double>(c.tp + c.fp);
    if (c.tp + c.fn > 0) m.recall = tp / static_cast<double>(c.tp + c.fn);
    if (m.precision + m.recall > 0.0) m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    return m;
}

}  // namespace tadeval
