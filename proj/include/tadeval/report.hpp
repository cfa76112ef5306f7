#pragma once

// Table-style comparison of detectors against the no-learning baselines.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tadeval/core.hpp"

namespace tadeval {

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;  // sample standard deviation; 0 for a single run
    std::size_t n = 0;
};

MeanStd summarize(std::span<const double> values);

// Threshold-optimal metrics of one score series.
struct ScoreSummary {
    double f1 = 0.0;          // best point-wise F1
    double f1_pa = 0.0;       // best F1 after PA
    double f1_pak_auc = 0.0;  // area under best-F1(PA%K) over K = 0..100 step 10
    double auroc = 0.0;
    double aupr = 0.0;
};

ScoreSummary summarize_scores(const ScoreSeries& scores, const LabelSeries& labels);

enum class RowKind { Case1, Case2, Case3, Method };

struct ReportRow {
    std::string name;
    RowKind kind = RowKind::Method;
    MeanStd f1, f1_pa, f1_pak_auc, auroc, aupr;
    std::optional<bool> improved;  // methods only, when the needed baselines are present
};

ReportRow make_row(std::string name, RowKind kind, std::span<const ScoreSeries> runs, const LabelSeries& labels);

// A method counts as an improvement only if its F1 beats both Case 2 and Case 3
// and its F1_PA beats Case 1 (strictly).
std::optional<bool> beats_baselines(const ReportRow& method, const std::vector<ReportRow>& rows);

void mark_improvements(std::vector<ReportRow>& rows);

std::string render_markdown(const std::vector<ReportRow>& rows);
std::string render_csv(const std::vector<ReportRow>& rows);

}  // namespace tadeval
