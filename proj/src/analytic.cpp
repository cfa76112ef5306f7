#include "tadeval/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "tadeval/parallel.hpp"

namespace tadeval {

namespace {

double f1_of(double p, double r) { return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

struct MeanVar {
    double mean = 0.0;
    double stderr_ = 0.0;
};

MeanVar mean_and_stderr(const std::vector<double>& xs) {
    MeanVar out;
    const auto n = static_cast<double>(xs.size());
    for (double x : xs) out.mean += x;
    out.mean /= n;
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - out.mean) * (x - out.mean);
        out.stderr_ = std::sqrt(ss / (n - 1.0) / n);
    }
    return out;
}

// Ratio estimator sum(num) / sum(den) and its delta-method standard error.
MeanVar ratio_and_stderr(const std::vector<double>& num, const std::vector<double>& den) {
    MeanVar out;
    const auto n = static_cast<double>(num.size());
    double sn = 0.0;
    double sd = 0.0;
    for (std::size_t i = 0; i < num.size(); ++i) {
        sn += num[i];
        sd += den[i];
    }
    if (sd <= 0.0) return out;
    out.mean = sn / sd;
    if (num.size() > 1) {
        double ss = 0.0;
        for (std::size_t i = 0; i < num.size(); ++i) {
            const double r = num[i] - out.mean * den[i];
            ss += r * r;
        }
        const double dbar = sd / n;
        out.stderr_ = std::sqrt(ss / (n - 1.0) / n) / dbar;
    }
    return out;
}

}  // namespace

void validate(const AnalyticParams& p) {
    if (!(p.gamma > 0.0 && p.gamma < 1.0)) throw UsageError("gamma must lie in (0, 1)");
    if (p.segment_length < 1) throw UsageError("segment length must be at least 1");
    if (!(p.delta_prime >= 0.0 && p.delta_prime <= 1.0)) throw UsageError("delta' must lie in [0, 1]");
}

double expected_recall_pa(const AnalyticParams& p) {
    validate(p);
    return 1.0 - std::pow(p.delta_prime, static_cast<double>(p.segment_length));
}

double expected_precision_pa(const AnalyticParams& p, PrecisionForm form) {
    const double recall = expected_recall_pa(p);
    const double hit = p.gamma * recall;
    const double false_alarm = (1.0 - p.gamma) * (1.0 - p.delta_prime);
    if (hit == 0.0) return 0.0;
    if (form == PrecisionForm::AsPrinted) {
        const double decay = std::pow(p.delta_prime, static_cast<double>(p.segment_length));
        return hit / ((p.gamma - decay) + false_alarm);
    }
    return hit / (hit + false_alarm);
}

ExpectedF1Curve expected_f1_pa_curve(double gamma, std::size_t segment_length, const std::vector<double>& delta_grid,
                                     PrecisionForm form) {
    if (delta_grid.empty()) throw UsageError("delta grid is empty");
    ExpectedF1Curve c;
    c.deltas = delta_grid;
    for (double d : delta_grid) {
        const AnalyticParams p{gamma, segment_length, d};
        const double r = expected_recall_pa(p);
        const double pr = expected_precision_pa(p, form);
        c.recall.push_back(r);
        c.precision.push_back(pr);
        c.f1.push_back(f1_of(pr, r));
    }
    const auto it = std::max_element(c.f1.begin(), c.f1.end());
    c.max_f1 = *it;
    c.argmax_delta = c.deltas[static_cast<std::size_t>(it - c.f1.begin())];
    return c;
}

std::vector<double> unit_grid(std::size_t points) {
    if (points < 2) throw UsageError("unit grid needs at least two points");
    std::vector<double> g(points);
    for (std::size_t i = 0; i < points; ++i) g[i] = static_cast<double>(i) / static_cast<double>(points - 1);
    return g;
}

double SegmentLayout::gamma() const noexcept {
    if (segments.total_length == 0) return 0.0;
    return static_cast<double>(segments.covered()) / static_cast<double>(segments.total_length);
}

SegmentLayout single_segment_layout(double gamma, std::size_t segment_length) {
    validate(AnalyticParams{gamma, segment_length, 0.5});
    const auto total = static_cast<std::size_t>(std::llround(static_cast<double>(segment_length) / gamma));
    if (total <= segment_length) throw UsageError("layout leaves no normal steps; lower gamma");
    SegmentLayout layout;
    layout.segments.total_length = total;
    const std::size_t start = (total - segment_length) / 2;
    layout.segments.segments.push_back({start, start + segment_length});
    return layout;
}

double expected_recall_pa(const SegmentLayout& layout, double delta_prime) {
    validate(layout.segments);
    const double covered = static_cast<double>(layout.segments.covered());
    if (covered == 0.0) return 0.0;
    double hit = 0.0;
    for (const auto& s : layout.segments.segments) {
        const auto len = static_cast<double>(s.length());
        hit += len * (1.0 - std::pow(delta_prime, len));
    }
    return hit / covered;
}

double expected_precision_pa(const SegmentLayout& layout, double delta_prime) {
    const double covered = static_cast<double>(layout.segments.covered());
    const double hit = covered * expected_recall_pa(layout, delta_prime);
    const double false_alarm = static_cast<double>(layout.segments.total_length - layout.segments.covered()) *
                               (1.0 - delta_prime);
    if (hit == 0.0) return 0.0;
    return hit / (hit + false_alarm);
}

MonteCarloReport monte_carlo_pa(const SegmentLayout& layout, double delta_prime, std::size_t trials,
                                std::uint64_t seed, const ProtocolConfig& protocol) {
    if (trials < 1) throw UsageError("Monte Carlo needs at least one trial");
    if (!(delta_prime >= 0.0 && delta_prime <= 1.0)) throw UsageError("delta' must lie in [0, 1]");
    validate(protocol);
    const auto labels = paint_segments(layout.segments);
    const std::size_t n = labels.size();

    std::vector<ConfusionCounts> counts(trials);
    parallel_for(trials, 64, [&](std::size_t trial) {
        // Each trial owns a generator derived from (seed, trial), independent of scheduling.
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
        std::mt19937_64 rng(seq);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<double> s(n);
        for (auto& v : s) v = u(rng);
        counts[trial] = evaluate_counts(ScoreSeries(std::move(s), "case1"), labels, delta_prime, protocol);
    });

    std::vector<double> p(trials), r(trials), f(trials), tp(trials), pred_pos(trials), real_pos(trials);
    for (std::size_t i = 0; i < trials; ++i) {
        const auto m = prf1(counts[i]);
        p[i] = m.precision;
        r[i] = m.recall;
        f[i] = m.f1;
        tp[i] = static_cast<double>(counts[i].tp);
        pred_pos[i] = static_cast<double>(counts[i].tp + counts[i].fp);
        real_pos[i] = static_cast<double>(counts[i].tp + counts[i].fn);
    }

    MonteCarloReport rep;
    rep.trials = trials;
    const auto mp = mean_and_stderr(p);
    const auto mr = mean_and_stderr(r);
    const auto mf = mean_and_stderr(f);
    rep.mean_precision = mp.mean;
    rep.stderr_precision = mp.stderr_;
    rep.mean_recall = mr.mean;
    rep.stderr_recall = mr.stderr_;
    rep.mean_f1 = mf.mean;
    rep.stderr_f1 = mf.stderr_;
    const auto pp = ratio_and_stderr(tp, pred_pos);
    const auto pr = ratio_and_stderr(tp, real_pos);
    rep.pooled_precision = pp.mean;
    rep.stderr_pooled_precision = pp.stderr_;
    rep.pooled_recall = pr.mean;
    rep.stderr_pooled_recall = pr.stderr_;
    rep.pooled_f1 = f1_of(rep.pooled_precision, rep.pooled_recall);
    return rep;
}

}  // namespace tadeval
