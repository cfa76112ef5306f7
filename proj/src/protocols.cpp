#include "tadeval/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace tadeval {

namespace {

// The one place the PA%K ratio test is written down; both sweep paths go through it.
bool ratio_exceeds(std::size_t detected, std::size_t length, double k_percent) noexcept {
    return static_cast<double>(detected) / static_cast<double>(length) > k_percent / 100.0;
}

bool segment_fires(std::size_t detected, std::size_t length, const ProtocolConfig& config) noexcept {
    switch (config.protocol) {
        case Protocol::Point: return false;
        case Protocol::PA: return detected > 0;
        case Protocol::PAPercentK: return ratio_exceeds(detected, length, config.k_percent);
    }
    return false;
}

// Smallest detected count that fires the segment, or length + 1 if none does.
std::size_t min_firing_count(std::size_t length, const ProtocolConfig& config) {
    // segment_fires is monotone in the count, so binary search over [0, length + 1].
    std::size_t lo = 0;
    std::size_t hi = length + 1;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (segment_fires(mid, length, config)) hi = mid;
        else lo = mid + 1;
    }
    return lo;
}

void check_ranges(const PredictionSeries& pred, const SegmentSet& segments) {
    for (const auto& s : segments.segments) {
        if (s.start >= s.end || s.end > pred.size())
            throw DataError("segment [" + std::to_string(s.start) + ", " + std::to_string(s.end) +
                            ") out of range for prediction length " + std::to_string(pred.size()));
    }
}

PredictionSeries adjust_with(const PredictionSeries& pred, const SegmentSet& segments, const ProtocolConfig& config) {
    check_ranges(pred, segments);
    PredictionSeries out = pred;
    out.protocol = config.protocol;
    for (const auto& s : segments.segments) {
        const auto first = out.predictions.begin() + static_cast<std::ptrdiff_t>(s.start);
        const auto last = out.predictions.begin() + static_cast<std::ptrdiff_t>(s.end);
        const auto detected = static_cast<std::size_t>(std::count(first, last, std::uint8_t{1}));
        if (segment_fires(detected, s.length(), config)) std::fill(first, last, std::uint8_t{1});
    }
    return out;
}

void check_lengths(const ScoreSeries& scores, const LabelSeries& labels) {
    if (scores.size() != labels.size())
        throw DataError("score length " + std::to_string(scores.size()) + " does not match label length " +
                        std::to_string(labels.size()));
}

void pick_best(SweepResult& r) {
    r.best_index = 0;
    for (std::size_t i = 1; i < r.metrics.size(); ++i)
        if (r.metrics[i].f1 > r.metrics[r.best_index].f1) r.best_index = i;
    r.best_threshold = r.thresholds[r.best_index];
    r.best_f1 = r.metrics[r.best_index].f1;
}

}  // namespace

void validate(const ProtocolConfig& config) {
    if (!(config.k_percent >= 0.0 && config.k_percent <= 100.0))
        throw UsageError("K must lie in [0, 100], got " + std::to_string(config.k_percent));
}

PredictionSeries adjust_pa(const PredictionSeries& pred, const SegmentSet& segments) {
    return adjust_with(pred, segments, ProtocolConfig::pa());
}

PredictionSeries adjust_pa_percent_k(const PredictionSeries& pred, const SegmentSet& segments, double k_percent) {
    const auto config = ProtocolConfig::pa_percent_k(k_percent);
    validate(config);
    return adjust_with(pred, segments, config);
}

PredictionSeries apply_protocol(const PredictionSeries& pred, const SegmentSet& segments,
                                const ProtocolConfig& config) {
    validate(config);
    if (config.protocol == Protocol::Point) {
        check_ranges(pred, segments);
        return pred;
    }
    return adjust_with(pred, segments, config);
}

ConfusionCounts evaluate_counts(const ScoreSeries& scores, const LabelSeries& labels, double delta,
                                const ProtocolConfig& config) {
    check_lengths(scores, labels);
    const auto pred = threshold_predictions(scores, delta);
    const auto adjusted = apply_protocol(pred, extract_segments(labels), config);
    return confusion(adjusted, labels);
}

MetricsTriple evaluate(const ScoreSeries& scores, const LabelSeries& labels, double delta,
                       const ProtocolConfig& config) {
    return prf1(evaluate_counts(scores, labels, delta, config));
}

std::vector<double> candidate_thresholds(const ScoreSeries& scores, const ThresholdGrid& grid) {
    std::vector<double> out;
    switch (grid.kind) {
        case ThresholdGrid::Kind::AllUniqueScores: {
            out = scores.scores;
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
            out.insert(out.begin(), -std::numeric_limits<double>::infinity());
            break;
        }
        case ThresholdGrid::Kind::Quantiles: {
            if (grid.quantiles == 0) throw UsageError("quantile grid needs at least one quantile");
            std::vector<double> sorted = scores.scores;
            std::sort(sorted.begin(), sorted.end());
            const std::size_t n = grid.quantiles;
            out.push_back(-std::numeric_limits<double>::infinity());
            for (std::size_t q = 0; q < n; ++q) {
                const std::size_t idx = n == 1 ? sorted.size() - 1 : q * (sorted.size() - 1) / (n - 1);
                out.push_back(sorted[idx]);
            }
            out.erase(std::unique(out.begin(), out.end()), out.end());
            break;
        }
        case ThresholdGrid::Kind::Explicit: {
            out = grid.values;
            for (double v : out)
                if (std::isnan(v)) throw UsageError("threshold grid contains NaN");
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
            break;
        }
    }
    if (out.empty()) throw UsageError("threshold candidate set is empty");
    return out;
}

SweepResult sweep_best_f1_naive(const ScoreSeries& scores, const LabelSeries& labels, const ProtocolConfig& config,
                                const ThresholdGrid& grid) {
    validate(config);
    check_lengths(scores, labels);
    SweepResult r;
    r.thresholds = candidate_thresholds(scores, grid);
    r.metrics.reserve(r.thresholds.size());
    r.counts.reserve(r.thresholds.size());
    for (double delta : r.thresholds) {
        r.counts.push_back(evaluate_counts(scores, labels, delta, config));
        r.metrics.push_back(prf1(r.counts.back()));
    }
    pick_best(r);
    return r;
}

SweepResult sweep_best_f1(const ScoreSeries& scores, const LabelSeries& labels, const ProtocolConfig& config,
                          const ThresholdGrid& grid) {
    validate(config);
    check_lengths(scores, labels);
    const auto& s = scores.scores;
    const std::size_t n = s.size();
    const auto segments = extract_segments(labels);
    const std::size_t m_count = segments.count();

    std::vector<std::uint32_t> seg_of(n, UINT32_MAX);
    std::vector<double> fire_at(m_count, -std::numeric_limits<double>::infinity());
    std::vector<double> buf;
    std::uint64_t positives = 0;
    for (std::size_t m = 0; m < m_count; ++m) {
        const auto& seg = segments.segments[m];
        positives += seg.length();
        for (std::size_t t = seg.start; t < seg.end; ++t) seg_of[t] = static_cast<std::uint32_t>(m);
        const std::size_t need = min_firing_count(seg.length(), config);
        if (need == 0) {
            fire_at[m] = std::numeric_limits<double>::infinity();
        } else if (need <= seg.length()) {
            // Fires iff the need-th largest in-segment score exceeds delta.
            buf.assign(s.begin() + static_cast<std::ptrdiff_t>(seg.start),
                       s.begin() + static_cast<std::ptrdiff_t>(seg.end));
            std::nth_element(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(need - 1), buf.end(),
                             std::greater<>());
            fire_at[m] = buf[need - 1];
        }
    }
    const std::uint64_t negatives = n - positives;

    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0U);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return s[a] > s[b]; });
    std::vector<std::uint32_t> seg_order(m_count);
    std::iota(seg_order.begin(), seg_order.end(), 0U);
    std::sort(seg_order.begin(), seg_order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return fire_at[a] > fire_at[b]; });

    SweepResult r;
    r.thresholds = candidate_thresholds(scores, grid);
    const std::size_t c = r.thresholds.size();
    r.metrics.resize(c);
    r.counts.resize(c);

    std::vector<std::uint64_t> seg_detected(m_count, 0);
    std::vector<std::uint8_t> fired(m_count, 0);
    std::uint64_t point_tp = 0;
    std::uint64_t point_fp = 0;
    std::uint64_t fired_len = 0;
    std::uint64_t fired_detected = 0;
    std::size_t next_point = 0;
    std::size_t next_seg = 0;

    for (std::size_t ci = c; ci-- > 0;) {
        const double delta = r.thresholds[ci];
        while (next_point < n && s[order[next_point]] > delta) {
            const auto t = order[next_point++];
            const auto m = seg_of[t];
            if (m == UINT32_MAX) {
                ++point_fp;
            } else {
                ++point_tp;
                ++seg_detected[m];
                if (fired[m]) ++fired_detected;
            }
        }
        while (next_seg < m_count && fire_at[seg_order[next_seg]] > delta) {
            const auto m = seg_order[next_seg++];
            fired[m] = 1;
            fired_len += segments.segments[m].length();
            fired_detected += seg_detected[m];
        }
        ConfusionCounts cc;
        cc.tp = point_tp + (fired_len - fired_detected);
        cc.fn = positives - cc.tp;
        cc.fp = point_fp;
        cc.tn = negatives - point_fp;
        r.counts[ci] = cc;
        r.metrics[ci] = prf1(cc);
    }
    pick_best(r);
    return r;
}

std::vector<double> default_k_grid() {
    std::vector<double> k;
    for (int i = 0; i <= 100; i += 10) k.push_back(static_cast<double>(i));
    return k;
}

double k_curve_auc(const std::vector<double>& k_values, const std::vector<double>& f1_values) {
    double auc = 0.0;
    for (std::size_t i = 1; i < k_values.size(); ++i)
        auc += (k_values[i] - k_values[i - 1]) / 100.0 * (f1_values[i] + f1_values[i - 1]) / 2.0;
    return auc;
}

KSweepCurve k_sweep(const ScoreSeries& scores, const LabelSeries& labels, double delta,
                    const std::vector<double>& k_grid) {
    if (k_grid.empty()) throw UsageError("K grid is empty");
    for (std::size_t i = 0; i < k_grid.size(); ++i) {
        validate(ProtocolConfig::pa_percent_k(k_grid[i]));
        if (i > 0 && k_grid[i] < k_grid[i - 1]) throw UsageError("K grid must be sorted");
    }
    check_lengths(scores, labels);
    const auto pred = threshold_predictions(scores, delta);
    const auto segments = extract_segments(labels);
    KSweepCurve curve;
    curve.k_values = k_grid;
    for (double k : k_grid) {
        const auto adjusted = adjust_pa_percent_k(pred, segments, k);
        curve.f1_values.push_back(prf1(confusion(adjusted, labels)).f1);
    }
    curve.auc = k_curve_auc(curve.k_values, curve.f1_values);
    return curve;
}

RocPrCurves roc_pr(const ScoreSeries& scores, const LabelSeries& labels) {
    check_lengths(scores, labels);
    const auto& s = scores.scores;
    const std::size_t n = s.size();
    std::uint64_t pos = 0;
    for (auto y : labels.labels) pos += y;
    const std::uint64_t neg = n - pos;
    if (pos == 0 || neg == 0) throw DataError("ROC/PR curves need both positive and negative labels");

    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0U);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return s[a] > s[b]; });

    RocPrCurves out;
    out.roc_points.emplace_back(0.0, 0.0);
    out.pr_points.emplace_back(0.0, 1.0);
    const auto P = static_cast<double>(pos);
    const auto N = static_cast<double>(neg);
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    double prev_recall = 0.0;
    std::size_t i = 0;
    while (i < n) {
        const double v = s[order[i]];
        // Tied scores enter together: a single threshold cannot split them.
        while (i < n && s[order[i]] == v) {
            if (labels.labels[order[i]]) ++tp;
            else ++fp;
            ++i;
        }
        const double tpr = static_cast<double>(tp) / P;
        const double fpr = static_cast<double>(fp) / N;
        const auto& [fpr0, tpr0] = out.roc_points.back();
        out.auroc += (fpr - fpr0) * (tpr + tpr0) / 2.0;
        out.roc_points.emplace_back(fpr, tpr);

        const double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
        out.aupr += (tpr - prev_recall) * precision;
        prev_recall = tpr;
        out.pr_points.emplace_back(tpr, precision);
    }
    return out;
}

}  // namespace tadeval
