#pragma once

// Closed-form precision/recall of point adjustment under U(0,1) scores and a
// Monte Carlo simulator that checks them.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tadeval/core.hpp"
#include "tadeval/protocols.hpp"

namespace tadeval {

struct AnalyticParams {
    double gamma = 0.05;            // anomaly ratio, (0, 1)
    std::size_t segment_length = 1; // L, steps in the single anomaly segment
    double delta_prime = 0.5;       // threshold on U(0,1) scores, [0, 1]
};

void validate(const AnalyticParams& p);

// 1 - delta'^L
double expected_recall_pa(const AnalyticParams& p);

enum class PrecisionForm : std::uint8_t {
    BayesConsistent,  // gamma R / (gamma R + (1 - gamma)(1 - delta'))
    AsPrinted,        // gamma R / ((gamma - delta'^L) + (1 - gamma)(1 - delta')); can leave [0, 1]
};

double expected_precision_pa(const AnalyticParams& p, PrecisionForm form = PrecisionForm::BayesConsistent);

struct ExpectedF1Curve {
    std::vector<double> deltas;
    std::vector<double> precision;
    std::vector<double> recall;
    std::vector<double> f1;
    double max_f1 = 0.0;
    double argmax_delta = 0.0;
};

// F1 of expected P and R at each grid point.
ExpectedF1Curve expected_f1_pa_curve(double gamma, std::size_t segment_length, const std::vector<double>& delta_grid,
                                     PrecisionForm form = PrecisionForm::BayesConsistent);

// points evenly spaced values covering [0, 1] inclusive.
std::vector<double> unit_grid(std::size_t points);

struct SegmentLayout {
    SegmentSet segments;

    std::size_t total_length() const noexcept { return segments.total_length; }
    double gamma() const noexcept;
};

// One segment of length L centred in a series of round(L / gamma) steps.
SegmentLayout single_segment_layout(double gamma, std::size_t segment_length);

// Length-weighted per-segment recall: sum_m |S_m| (1 - delta'^|S_m|) / sum_m |S_m|.
double expected_recall_pa(const SegmentLayout& layout, double delta_prime);

// E[TP] / (E[TP] + E[FP]) for the layout.
double expected_precision_pa(const SegmentLayout& layout, double delta_prime);

struct MonteCarloReport {
    std::size_t trials = 0;

    // Averages of per-trial metrics.
    double mean_precision = 0.0;
    double mean_recall = 0.0;
    double mean_f1 = 0.0;
    double stderr_precision = 0.0;
    double stderr_recall = 0.0;
    double stderr_f1 = 0.0;

    // Ratios of summed counts (sum TP / sum (TP + FP) etc.), the estimators of
    // the closed forms; standard errors by the delta method.
    double pooled_precision = 0.0;
    double pooled_recall = 0.0;
    double pooled_f1 = 0.0;
    double stderr_pooled_precision = 0.0;
    double stderr_pooled_recall = 0.0;
};

MonteCarloReport monte_carlo_pa(const SegmentLayout& layout, double delta_prime, std::size_t trials,
                                std::uint64_t seed, const ProtocolConfig& protocol = ProtocolConfig::pa());

}  // namespace tadeval
