#include "tadeval/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "tadeval/io.hpp"
#include "tadeval/protocols.hpp"

namespace tadeval {

namespace {

const ReportRow* find_kind(const std::vector<ReportRow>& rows, RowKind kind) {
    for (const auto& r : rows)
        if (r.kind == kind) return &r;
    return nullptr;
}

std::string cell(const MeanStd& m) {
    char buf[64];
    if (m.n > 1) std::snprintf(buf, sizeof buf, "%.3f ± %.3f", m.mean, m.std);
    else std::snprintf(buf, sizeof buf, "%.3f", m.mean);
    return buf;
}

}  // namespace

MeanStd summarize(std::span<const double> values) {
    MeanStd m;
    m.n = values.size();
    if (values.empty()) return m;
    for (double v : values) m.mean += v;
    m.mean /= static_cast<double>(m.n);
    if (m.n > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - m.mean) * (v - m.mean);
        m.std = std::sqrt(ss / static_cast<double>(m.n - 1));
    }
    return m;
}

ScoreSummary summarize_scores(const ScoreSeries& scores, const LabelSeries& labels) {
    ScoreSummary s;
    s.f1 = sweep_best_f1(scores, labels, ProtocolConfig::point()).best_f1;
    s.f1_pa = sweep_best_f1(scores, labels, ProtocolConfig::pa()).best_f1;
    const auto ks = default_k_grid();
    std::vector<double> best;
    for (double k : ks) best.push_back(sweep_best_f1(scores, labels, ProtocolConfig::pa_percent_k(k)).best_f1);
    s.f1_pak_auc = k_curve_auc(ks, best);
    const auto curves = roc_pr(scores, labels);
    s.auroc = curves.auroc;
    s.aupr = curves.aupr;
    return s;
}

ReportRow make_row(std::string name, RowKind kind, std::span<const ScoreSeries> runs, const LabelSeries& labels) {
    if (runs.empty()) throw UsageError("report row '" + name + "' has no score runs");
    std::vector<double> f1, pa, pak, auroc, aupr;
    for (const auto& r : runs) {
        const auto s = summarize_scores(r, labels);
        f1.push_back(s.f1);
        pa.push_back(s.f1_pa);
        pak.push_back(s.f1_pak_auc);
        auroc.push_back(s.auroc);
        aupr.push_back(s.aupr);
    }
    ReportRow row;
    row.name = std::move(name);
    row.kind = kind;
    row.f1 = summarize(f1);
    row.f1_pa = summarize(pa);
    row.f1_pak_auc = summarize(pak);
    row.auroc = summarize(auroc);
    row.aupr = summarize(aupr);
    return row;
}

std::optional<bool> beats_baselines(const ReportRow& method, const std::vector<ReportRow>& rows) {
    const auto* c1 = find_kind(rows, RowKind::Case1);
    const auto* c2 = find_kind(rows, RowKind::Case2);
    const auto* c3 = find_kind(rows, RowKind::Case3);
    if (!c1 || !c2 || !c3) return std::nullopt;
    return method.f1.mean > std::max(c2->f1.mean, c3->f1.mean) && method.f1_pa.mean > c1->f1_pa.mean;
}

void mark_improvements(std::vector<ReportRow>& rows) {
    for (auto& r : rows)
        if (r.kind == RowKind::Method) r.improved = beats_baselines(r, rows);
}

std::string render_markdown(const std::vector<ReportRow>& rows) {
    std::string out = "| Method | F1 | F1_PA | F1_PA%K AUC | AUROC | AUPR | vs. baselines |\n"
                      "|---|---|---|---|---|---|---|\n";
    for (const auto& r : rows) {
        std::string mark = "";
        if (r.kind == RowKind::Method) mark = !r.improved ? "n/a" : (*r.improved ? "↑" : "↓");
        out += "| " + r.name + " | " + cell(r.f1) + " | " + cell(r.f1_pa) + " | " + cell(r.f1_pak_auc) + " | " +
               cell(r.auroc) + " | " + cell(r.aupr) + " | " + mark + " |\n";
    }
    return out;
}

std::string render_csv(const std::vector<ReportRow>& rows) {
    std::string out =
        "method,kind,runs,f1_mean,f1_std,f1_pa_mean,f1_pa_std,f1_pak_auc_mean,f1_pak_auc_std,auroc_mean,auroc_std,"
        "aupr_mean,aupr_std,improved\n";
    for (const auto& r : rows) {
        const char* kind = r.kind == RowKind::Case1   ? "case1"
                           : r.kind == RowKind::Case2 ? "case2"
                           : r.kind == RowKind::Case3 ? "case3"
                                                      : "method";
        out += r.name + "," + kind + "," + std::to_string(r.f1.n);
        for (const auto* m : {&r.f1, &r.f1_pa, &r.f1_pak_auc, &r.auroc, &r.aupr})
            out += "," + io::format_number(m->mean) + "," + io::format_number(m->std);
        out += ",";
        if (r.improved) out += *r.improved ? "1" : "0";
        out += "\n";
    }
    return out;
}

}  // namespace tadeval
