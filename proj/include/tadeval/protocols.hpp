#pragma once

// Point-adjusted labelling (PA, PA%K), protocol-aware metrics, best-F1
// threshold sweeps, the F1-vs-K curve and threshold-free ROC/PR curves.

#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "tadeval/core.hpp"

namespace tadeval {

struct ProtocolConfig {
    Protocol protocol = Protocol::Point;
    double k_percent = 0.0;  // only read for PAPercentK

    static ProtocolConfig point() { return {Protocol::Point, 0.0}; }
    static ProtocolConfig pa() { return {Protocol::PA, 0.0}; }
    static ProtocolConfig pa_percent_k(double k) { return {Protocol::PAPercentK, k}; }
};

void validate(const ProtocolConfig& config);

// Sets every step of a segment to 1 when any step inside it is 1.
PredictionSeries adjust_pa(const PredictionSeries& pred, const SegmentSet& segments);

// Sets a segment to all 1s only when its detected fraction strictly exceeds k_percent / 100.
// Non-adjusted segments keep their raw predictions.
PredictionSeries adjust_pa_percent_k(const PredictionSeries& pred, const SegmentSet& segments, double k_percent);

PredictionSeries apply_protocol(const PredictionSeries& pred, const SegmentSet& segments,
                                const ProtocolConfig& config);

ConfusionCounts evaluate_counts(const ScoreSeries& scores, const LabelSeries& labels, double delta,
                                const ProtocolConfig& config);

MetricsTriple evaluate(const ScoreSeries& scores, const LabelSeries& labels, double delta,
                       const ProtocolConfig& config);

struct ThresholdGrid {
    enum class Kind { AllUniqueScores, Quantiles, Explicit };

    Kind kind = Kind::AllUniqueScores;
    std::size_t quantiles = 2000;
    std::vector<double> values;

    static ThresholdGrid all_unique() { return {}; }
    static ThresholdGrid quantile(std::size_t n) { return {Kind::Quantiles, n, {}}; }
    static ThresholdGrid explicit_values(std::vector<double> v) { return {Kind::Explicit, 0, std::move(v)}; }
};

// Strictly increasing candidate thresholds. AllUniqueScores and Quantiles start with -inf.
std::vector<double> candidate_thresholds(const ScoreSeries& scores, const ThresholdGrid& grid);

struct SweepResult {
    std::vector<double> thresholds;
    std::vector<MetricsTriple> metrics;
    std::vector<ConfusionCounts> counts;
    std::size_t best_index = 0;
    double best_threshold = -std::numeric_limits<double>::infinity();
    double best_f1 = 0.0;

    MetricsTriple best() const { return metrics.at(best_index); }
};

// O((T + sum |S_m|) log T): one descending pass over sorted scores, with each
// segment's firing threshold precomputed from its own sorted scores.
SweepResult sweep_best_f1(const ScoreSeries& scores, const LabelSeries& labels, const ProtocolConfig& config,
                          const ThresholdGrid& grid = ThresholdGrid::all_unique());

// Reference path: full evaluate() per candidate. O(T x candidates).
SweepResult sweep_best_f1_naive(const ScoreSeries& scores, const LabelSeries& labels, const ProtocolConfig& config,
                                const ThresholdGrid& grid = ThresholdGrid::all_unique());

struct KSweepCurve {
    std::vector<double> k_values;
    std::vector<double> f1_values;
    double auc = 0.0;
};

std::vector<double> default_k_grid();  // 0, 10, ..., 100

KSweepCurve k_sweep(const ScoreSeries& scores, const LabelSeries& labels, double delta,
                    const std::vector<double>& k_grid = default_k_grid());

// Trapezoidal area on the K / 100 axis.
double k_curve_auc(const std::vector<double>& k_values, const std::vector<double>& f1_values);

struct RocPrCurves {
    std::vector<std::pair<double, double>> roc_points;  // (fpr, tpr)
    std::vector<std::pair<double, double>> pr_points;   // (recall, precision)
    double auroc = 0.0;
    double aupr = 0.0;
};

RocPrCurves roc_pr(const ScoreSeries& scores, const LabelSeries& labels);

}  // namespace tadeval
