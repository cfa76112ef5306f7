#include "tadeval/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tadeval/analytic.hpp"
#include "tadeval/baselines.hpp"
#include "tadeval/correlation.hpp"
#include "tadeval/io.hpp"
#include "tadeval/protocols.hpp"
#include "tadeval/report.hpp"
#include "tadeval/synth.hpp"

namespace tadeval {

namespace {

using io::format_number;

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

double to_double(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw UsageError("cannot parse " + what + " '" + s + "'");
    }
}

std::size_t to_size(const std::string& s, const std::string& what) {
    const double v = to_double(s, what);
    if (v < 0 || v != std::floor(v)) throw UsageError(what + " must be a non-negative integer");
    return static_cast<std::size_t>(v);
}

// "0:100:10" (start:stop:step, inclusive) or "0,25,50".
std::vector<double> parse_k_grid(const std::string& spec) {
    std::vector<double> ks;
    if (spec.find(':') != std::string::npos) {
        const auto parts = split_on(spec, ':');
        if (parts.size() != 3) throw UsageError("K range must be start:stop:step");
        const double a = to_double(parts[0], "K start");
        const double b = to_double(parts[1], "K stop");
        const double step = to_double(parts[2], "K step");
        if (!(step > 0)) throw UsageError("K step must be positive");
        const auto n = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9));
        for (std::size_t i = 0; i <= n; ++i) ks.push_back(a + static_cast<double>(i) * step);
    } else {
        for (const auto& p : split_on(spec, ',')) ks.push_back(to_double(p, "K value"));
    }
    return ks;
}

ThresholdGrid parse_grid(const std::string& spec) {
    if (spec == "unique") return ThresholdGrid::all_unique();
    if (spec.rfind("quantile:", 0) == 0) return ThresholdGrid::quantile(to_size(spec.substr(9), "quantile count"));
    if (spec.rfind("values:", 0) == 0) {
        std::vector<double> v;
        for (const auto& p : split_on(spec.substr(7), ',')) v.push_back(to_double(p, "threshold"));
        return ThresholdGrid::explicit_values(std::move(v));
    }
    throw UsageError("threshold grid must be 'unique', 'quantile:N' or 'values:a,b,...'");
}

ProtocolConfig make_protocol(const std::string& name, double k) {
    ProtocolConfig c{parse_protocol(name), k};
    validate(c);
    return c;
}

NormMethod parse_norm(const std::string& s) {
    if (s == "minmax") return NormMethod::MinMax;
    if (s == "zscore") return NormMethod::ZScore;
    if (s == "none") return NormMethod::None;
    throw UsageError("normalization must be minmax, zscore or none");
}

std::string pm(const MeanStd& m) { return format_number(m.mean) + " ± " + format_number(m.std); }

void check_repeats(std::size_t repeats) {
    if (repeats < 1) throw UsageError("--repeats must be at least 1");
}

struct BaselineOptions {
    int which = 2;
    std::string test_path, train_path, labels_path, out_path, taus;
    std::size_t length = 0;
    std::size_t tau = 120;
    std::string alignment = "last", norm = "minmax", form = "l2";
    std::size_t hidden = 64;
    double sigma = std::sqrt(0.02);
    std::uint64_t seed = 0;
    std::size_t repeats = 5;
};

WindowSpec window_spec(const BaselineOptions& o) {
    WindowSpec w;
    w.tau = o.tau;
    if (o.alignment == "last") w.alignment = Alignment::Last;
    else if (o.alignment == "first") w.alignment = Alignment::First;
    else throw UsageError("alignment must be last or first");
    if (o.form == "l2") w.form = ScoreForm::ScaledL2;
    else if (o.form == "mse") w.form = ScoreForm::MeanSquare;
    else throw UsageError("score form must be l2 or mse");
    return w;
}

void add_baseline_model_flags(CLI::App* cmd, BaselineOptions& o) {
    cmd->add_option("--tau", o.tau, "Window length")->capture_default_str();
    cmd->add_option("--alignment", o.alignment, "Window score alignment: last|first")->capture_default_str();
    cmd->add_option("--norm", o.norm, "Normalization: minmax|zscore|none")->capture_default_str();
    cmd->add_option("--form", o.form, "Window score: l2 (scaled L2) | mse")->capture_default_str();
    cmd->add_option("--hidden", o.hidden, "Hidden size of the random encoder-decoder")->capture_default_str();
    cmd->add_option("--sigma", o.sigma, "Weight standard deviation of the random encoder-decoder")
        ->capture_default_str();
    cmd->add_option("--seed", o.seed, "Base seed; repeat i uses seed + i")->capture_default_str();
    cmd->add_option("--repeats", o.repeats, "Number of seeds")->capture_default_str();
}

ScoreSeries baseline_scores(int which, const TimeSeries* test, const TimeSeries* train, std::size_t length,
                            const BaselineOptions& o, std::uint64_t seed) {
    if (which == 1) return case1_random_scores(length, seed);
    if (!test) throw UsageError("case 2 and 3 need --test");
    const auto& ref = train ? *train : *test;
    const NormalizationSpec ns{parse_norm(o.norm)};
    if (which == 2) return case2_input_norm_scores(*test, ref, window_spec(o), ns);
    if (which == 3) return case3_untrained_model_scores(*test, ref, window_spec(o), ns, {o.hidden, o.sigma, seed});
    throw UsageError("--case must be 1, 2 or 3");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Evaluation toolkit for time-series anomaly detection scores", "tadeval"};
    app.set_config("--config", "", "TOML/INI file, one [subcommand] section of flags; give it before the subcommand");
    app.require_subcommand(1);
    std::function<void()> action;

    // eval
    std::string scores_path, labels_path, protocol = "point", out_path;
    double delta = 0.5, k = 0.0;
    auto* eval = app.add_subcommand("eval", "Metrics for one protocol and threshold");
    eval->add_option("--scores", scores_path, "Score CSV")->required();
    eval->add_option("--labels", labels_path, "Label CSV")->required();
    eval->add_option("--protocol", protocol, "point|pa|pak")->capture_default_str();
    eval->add_option("--delta", delta, "Threshold; a step is positive when score > delta")->required();
    eval->add_option("--k", k, "PA%K threshold K in [0,100]")->capture_default_str();
    eval->callback([&] {
        action = [&] {
            const auto scores = io::load_scores(scores_path);
            const auto labels = io::load_labels(labels_path);
            const auto cfg = make_protocol(protocol, k);
            const auto c = evaluate_counts(scores, labels, delta, cfg);
            const auto m = prf1(c);
            out << "protocol,delta,k,tp,fp,fn,tn,precision,recall,f1\n"
                << to_string(cfg.protocol) << ',' << format_number(delta) << ',' << format_number(k) << ',' << c.tp
                << ',' << c.fp << ',' << c.fn << ',' << c.tn << ',' << format_number(m.precision) << ','
                << format_number(m.recall) << ',' << format_number(m.f1) << '\n';
        };
    });

    // sweep
    std::string grid = "unique";
    auto* sweep = app.add_subcommand("sweep", "Best-F1 threshold sweep");
    sweep->add_option("--scores", scores_path, "Score CSV")->required();
    sweep->add_option("--labels", labels_path, "Label CSV")->required();
    sweep->add_option("--protocol", protocol, "point|pa|pak")->capture_default_str();
    sweep->add_option("--k", k, "PA%K threshold K")->capture_default_str();
    sweep->add_option("--grid", grid, "unique | quantile:N | values:a,b,...")->capture_default_str();
    sweep->add_option("--out", out_path, "Per-threshold curve CSV");
    sweep->callback([&] {
        action = [&] {
            const auto scores = io::load_scores(scores_path);
            const auto labels = io::load_labels(labels_path);
            const auto r = sweep_best_f1(scores, labels, make_protocol(protocol, k), parse_grid(grid));
            if (!out_path.empty()) {
                std::string csv = "threshold,precision,recall,f1\n";
                for (std::size_t i = 0; i < r.thresholds.size(); ++i)
                    csv += format_number(r.thresholds[i]) + "," + format_number(r.metrics[i].precision) + "," +
                           format_number(r.metrics[i].recall) + "," + format_number(r.metrics[i].f1) + "\n";
                io::write_file_atomic(out_path, csv);
            }
            const auto b = r.best();
            out << "candidates,best_threshold,precision,recall,f1\n"
                << r.thresholds.size() << ',' << format_number(r.best_threshold) << ','
                << format_number(b.precision) << ',' << format_number(b.recall) << ',' << format_number(b.f1) << '\n';
        };
    });

    // ksweep
    std::string k_spec = "0:100:10";
    auto* ksweep = app.add_subcommand("ksweep", "F1 under PA%K as K varies, with its area");
    ksweep->add_option("--scores", scores_path, "Score CSV")->required();
    ksweep->add_option("--labels", labels_path, "Label CSV")->required();
    ksweep->add_option("--delta", delta, "Threshold")->required();
    ksweep->add_option("--k", k_spec, "K grid start:stop:step or a,b,c")->capture_default_str();
    ksweep->add_option("--out", out_path, "Curve CSV");
    ksweep->callback([&] {
        action = [&] {
            const auto scores = io::load_scores(scores_path);
            const auto labels = io::load_labels(labels_path);
            const auto curve = k_sweep(scores, labels, delta, parse_k_grid(k_spec));
            std::string csv = "k,f1\n";
            for (std::size_t i = 0; i < curve.k_values.size(); ++i)
                csv += format_number(curve.k_values[i]) + "," + format_number(curve.f1_values[i]) + "\n";
            if (!out_path.empty()) {
                io::write_file_atomic(out_path, csv);
            } else {
                out << csv << '\n';
            }
            out << "auc," << format_number(curve.auc) << '\n';
        };
    });

    // roc
    std::string roc_out, pr_out;
    auto* roc = app.add_subcommand("roc", "AUROC and AUPR");
    roc->add_option("--scores", scores_path, "Score CSV")->required();
    roc->add_option("--labels", labels_path, "Label CSV")->required();
    roc->add_option("--out-roc", roc_out, "ROC curve CSV (fpr,tpr)");
    roc->add_option("--out-pr", pr_out, "PR curve CSV (recall,precision)");
    roc->callback([&] {
        action = [&] {
            const auto c = roc_pr(io::load_scores(scores_path), io::load_labels(labels_path));
            auto dump = [](const auto& pts, const char* header) {
                std::string csv = header;
                for (const auto& [a, b] : pts) csv += format_number(a) + "," + format_number(b) + "\n";
                return csv;
            };
            const std::string roc_csv = roc_out.empty() ? "" : dump(c.roc_points, "fpr,tpr\n");
            const std::string pr_csv = pr_out.empty() ? "" : dump(c.pr_points, "recall,precision\n");
            if (!roc_out.empty()) io::write_file_atomic(roc_out, roc_csv);
            if (!pr_out.empty()) io::write_file_atomic(pr_out, pr_csv);
            out << "auroc,aupr\n" << format_number(c.auroc) << ',' << format_number(c.aupr) << '\n';
        };
    });

    // baseline
    BaselineOptions bo;
    auto* baseline = app.add_subcommand("baseline", "Emit Case 1/2/3 baseline scores");
    baseline->add_option("--case", bo.which, "1 (uniform random), 2 (input norm), 3 (untrained model)")
        ->required()
        ->check(CLI::Range(1, 3));
    baseline->add_option("--test", bo.test_path, "Test series CSV");
    baseline->add_option("--train", bo.train_path, "Reference series for normalization (defaults to --test)");
    baseline->add_option("--labels", bo.labels_path, "Labels; enables the best-F1 summary over repeats");
    baseline->add_option("--length", bo.length, "Case 1 length when no --test/--labels is given");
    baseline->add_option("--taus", bo.taus, "Comma-separated window lengths: run a window-size sweep");
    baseline->add_option("--out", bo.out_path, "Score CSV (first repeat)");
    add_baseline_model_flags(baseline, bo);
    baseline->callback([&] {
        action = [&] {
            check_repeats(bo.repeats);
            std::optional<TimeSeries> test, train;
            std::optional<LabelSeries> labels;
            if (!bo.test_path.empty()) test = io::load_series(bo.test_path);
            if (!bo.train_path.empty()) train = io::load_series(bo.train_path);
            if (!bo.labels_path.empty()) labels = io::load_labels(bo.labels_path);
            std::size_t length = bo.length;
            if (test) length = test->rows();
            else if (labels && length == 0) length = labels->size();
            if (length == 0) throw UsageError("case 1 needs --length, --test or --labels");
            if (labels && labels->size() != length) throw DataError("labels and series differ in length");

            if (!bo.taus.empty()) {
                if (!labels) throw UsageError("--taus needs --labels");
                if (!test) throw UsageError("--taus needs --test");
                std::vector<std::size_t> taus;
                for (const auto& p : split_on(bo.taus, ',')) taus.push_back(to_size(p, "tau"));
                out << "tau,best_f1_mean,best_f1_std,runs\n";
                const std::size_t runs = bo.which == 3 ? bo.repeats : 1;
                std::vector<std::vector<double>> per_tau(taus.size());
                for (std::size_t r = 0; r < runs; ++r) {
                    const auto rows = window_size_sweep(
                        *test, train ? *train : *test, *labels, taus,
                        bo.which == 2 ? BaselineCase::Case2 : BaselineCase::Case3, {parse_norm(bo.norm)},
                        {bo.hidden, bo.sigma, bo.seed + r});
                    for (std::size_t i = 0; i < rows.size(); ++i) per_tau[i].push_back(rows[i].best_f1);
                }
                for (std::size_t i = 0; i < taus.size(); ++i) {
                    const auto m = summarize(per_tau[i]);
                    out << taus[i] << ',' << format_number(m.mean) << ',' << format_number(m.std) << ',' << m.n
                        << '\n';
                }
                return;
            }

            const std::size_t runs = bo.which == 2 ? 1 : bo.repeats;
            std::vector<double> f1, f1_pa;
            std::optional<ScoreSeries> first;
            for (std::size_t r = 0; r < runs; ++r) {
                auto s = baseline_scores(bo.which, test ? &*test : nullptr, train ? &*train : nullptr, length, bo,
                                         bo.seed + r);
                if (labels) {
                    f1.push_back(sweep_best_f1(s, *labels, ProtocolConfig::point()).best_f1);
                    f1_pa.push_back(sweep_best_f1(s, *labels, ProtocolConfig::pa()).best_f1);
                }
                if (!first) first = std::move(s);
            }
            if (!bo.out_path.empty()) io::write_file_atomic(bo.out_path, io::to_csv(*first));
            out << "case,runs,length";
            if (labels) out << ",best_f1,best_f1_pa";
            out << '\n' << bo.which << ',' << runs << ',' << length;
            if (labels) out << ',' << pm(summarize(f1)) << ',' << pm(summarize(f1_pa));
            out << '\n';
        };
    });

    // analytic
    double gamma = 0.05;
    std::size_t seg_len = 100, points = 10001;
    std::optional<double> point_delta;
    std::string form = "bayes";
    auto* analytic = app.add_subcommand("analytic", "Closed-form PA recall/precision under uniform random scores");
    analytic->add_option("--gamma", gamma, "Anomaly ratio in (0,1)")->capture_default_str();
    analytic->add_option("--L", seg_len, "Segment length")->capture_default_str();
    analytic->add_option("--delta", point_delta, "Evaluate a single threshold delta' in [0,1]");
    analytic->add_option("--points", points, "Grid points over [0,1] for the F1 curve")->capture_default_str();
    analytic->add_option("--form", form, "Precision form: bayes|printed")->capture_default_str();
    analytic->add_option("--out", out_path, "Curve CSV (delta,precision,recall,f1)");
    analytic->callback([&] {
        action = [&] {
            PrecisionForm pf;
            if (form == "bayes") pf = PrecisionForm::BayesConsistent;
            else if (form == "printed") pf = PrecisionForm::AsPrinted;
            else throw UsageError("--form must be bayes or printed");
            if (point_delta) {
                const AnalyticParams p{gamma, seg_len, *point_delta};
                const double r = expected_recall_pa(p);
                const double pr = expected_precision_pa(p, pf);
                out << "gamma,L,delta,recall,precision,f1\n"
                    << format_number(gamma) << ',' << seg_len << ',' << format_number(*point_delta) << ','
                    << format_number(r) << ',' << format_number(pr) << ','
                    << format_number(pr + r > 0 ? 2 * pr * r / (pr + r) : 0.0) << '\n';
                return;
            }
            const auto c = expected_f1_pa_curve(gamma, seg_len, unit_grid(points), pf);
            if (!out_path.empty()) {
                std::string csv = "delta,precision,recall,f1\n";
                for (std::size_t i = 0; i < c.deltas.size(); ++i)
                    csv += format_number(c.deltas[i]) + "," + format_number(c.precision[i]) + "," +
                           format_number(c.recall[i]) + "," + format_number(c.f1[i]) + "\n";
                io::write_file_atomic(out_path, csv);
            }
            out << "gamma,L,max_f1_pa,argmax_delta\n"
                << format_number(gamma) << ',' << seg_len << ',' << format_number(c.max_f1) << ','
                << format_number(c.argmax_delta) << '\n';
        };
    });

    // simulate
    std::size_t sim_T = 0, sim_M = 0, trials = 10000;
    std::uint64_t seed = 0;
    std::size_t repeats = 5;
    double delta_prime = 0.9;
    std::string sim_protocol = "pa";
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo PA metrics for uniform random scores");
    simulate->add_option("--gamma", gamma, "Anomaly ratio")->capture_default_str();
    simulate->add_option("--L", seg_len, "Single-segment length (ignored when --M is given)")->capture_default_str();
    simulate->add_option("--T", sim_T, "Series length for a multi-segment layout");
    simulate->add_option("--M", sim_M, "Segment count for a multi-segment layout");
    simulate->add_option("--delta", delta_prime, "Threshold delta' in [0,1]")->capture_default_str();
    simulate->add_option("--trials", trials, "Trials per repeat")->capture_default_str();
    simulate->add_option("--protocol", sim_protocol, "point|pa|pak")->capture_default_str();
    simulate->add_option("--k", k, "PA%K threshold K")->capture_default_str();
    simulate->add_option("--seed", seed, "Base seed; repeat i uses seed + i")->capture_default_str();
    simulate->add_option("--repeats", repeats, "Number of seeds")->capture_default_str();
    simulate->callback([&] {
        action = [&] {
            check_repeats(repeats);
            const auto layout = sim_M > 0 ? layout_from_stats(sim_T, gamma, sim_M, seed)
                                          : single_segment_layout(gamma, seg_len);
            const auto cfg = make_protocol(sim_protocol, k);
            std::vector<double> pp, prr, pf, mp, mr, mf;
            for (std::size_t r = 0; r < repeats; ++r) {
                const auto rep = monte_carlo_pa(layout, delta_prime, trials, seed + r, cfg);
                pp.push_back(rep.pooled_precision);
                prr.push_back(rep.pooled_recall);
                pf.push_back(rep.pooled_f1);
                mp.push_back(rep.mean_precision);
                mr.push_back(rep.mean_recall);
                mf.push_back(rep.mean_f1);
            }
            out << "estimator,precision,recall,f1\n";
            out << "pooled," << pm(summarize(pp)) << ',' << pm(summarize(prr)) << ',' << pm(summarize(pf)) << '\n';
            out << "per_trial_mean," << pm(summarize(mp)) << ',' << pm(summarize(mr)) << ',' << pm(summarize(mf))
                << '\n';
            if (cfg.protocol == Protocol::PA) {
                const double r = expected_recall_pa(layout, delta_prime);
                const double p = expected_precision_pa(layout, delta_prime);
                out << "closed_form," << format_number(p) << ',' << format_number(r) << ','
                    << format_number(p + r > 0 ? 2 * p * r / (p + r) : 0.0) << '\n';
            }
            out << "# T=" << layout.total_length() << " M=" << layout.segments.count()
                << " gamma=" << format_number(layout.gamma()) << " trials=" << trials << " repeats=" << repeats
                << '\n';
        };
    });

    // synth
    SynthSpec sspec;
    std::string base = "sine", prefix;
    std::vector<std::string> injects;
    std::size_t auto_segments = 0, inject_channels = 1;
    double auto_gamma = 0.0, magnitude = 8.0;
    auto* synth = app.add_subcommand("synth", "Generate a labelled synthetic dataset");
    synth->add_option("--length", sspec.length, "Total length (train half + test half)")->capture_default_str();
    synth->add_option("--channels", sspec.channels, "Channel count")->capture_default_str();
    synth->add_option("--base", base, "Base signal: sine|walk")->capture_default_str();
    synth->add_option("--noise", sspec.noise_std, "Gaussian noise std")->capture_default_str();
    synth->add_option("--seed", sspec.seed, "Seed")->capture_default_str();
    synth->add_option("--inject", injects, "kind:start:end:ch[;ch...]:magnitude, kind in point|contextual|collective");
    synth->add_option("--gamma", auto_gamma, "Random point-injection layout: anomaly ratio of the test half");
    synth->add_option("--segments", auto_segments, "Random point-injection layout: segment count");
    synth->add_option("--magnitude", magnitude, "Random layout magnitude (channel std units)")->capture_default_str();
    synth->add_option("--inject-channels", inject_channels, "Random layout channels per segment")
        ->capture_default_str();
    synth->add_option("--out-prefix", prefix, "Writes <prefix>_train.csv, _test.csv, _labels.csv")->required();
    synth->callback([&] {
        action = [&] {
            if (base == "sine") sspec.base = BaseSignal::SineMix;
            else if (base == "walk") sspec.base = BaseSignal::RandomWalk;
            else throw UsageError("--base must be sine or walk");
            for (const auto& spec : injects) {
                const auto parts = split_on(spec, ':');
                if (parts.size() != 5) throw UsageError("--inject expects kind:start:end:channels:magnitude");
                InjectionSpec inj;
                if (parts[0] == "point") inj.kind = InjectionKind::Point;
                else if (parts[0] == "contextual") inj.kind = InjectionKind::Contextual;
                else if (parts[0] == "collective") inj.kind = InjectionKind::Collective;
                else throw UsageError("unknown injection kind '" + parts[0] + "'");
                inj.start = to_size(parts[1], "injection start");
                inj.end = to_size(parts[2], "injection end");
                for (const auto& c : split_on(parts[3], ';')) inj.channels.push_back(to_size(c, "channel"));
                inj.magnitude = to_double(parts[4], "magnitude");
                sspec.injections.push_back(std::move(inj));
            }
            if (auto_segments > 0) {
                const auto layout = layout_from_stats(test_length(sspec), auto_gamma, auto_segments, sspec.seed + 1);
                for (auto& inj : point_injections(layout, sspec.channels, magnitude, inject_channels, sspec.seed + 2))
                    sspec.injections.push_back(std::move(inj));
            }
            const auto ds = generate(sspec);
            const auto train_csv = io::to_csv(ds.train);
            const auto test_csv = io::to_csv(ds.test);
            const auto labels_csv = io::to_csv(ds.test_labels);
            io::write_file_atomic(prefix + "_train.csv", train_csv);
            io::write_file_atomic(prefix + "_test.csv", test_csv);
            io::write_file_atomic(prefix + "_labels.csv", labels_csv);
            const auto st = dataset_stats(ds.test_labels);
            out << "train_rows,test_rows,channels,gamma,segments\n"
                << ds.train.rows() << ',' << ds.test.rows() << ',' << ds.test.cols() << ','
                << format_number(st.anomaly_ratio_gamma) << ',' << st.segment_count << '\n';
        };
    });

    // stats
    auto* stats = app.add_subcommand("stats", "Anomaly ratio and segment statistics of a label file");
    stats->add_option("--labels", labels_path, "Label CSV")->required();
    stats->callback([&] {
        action = [&] {
            const auto labels = io::load_labels(labels_path);
            const auto st = dataset_stats(labels);
            out << "length,gamma,segments,mean_segment_length,min_segment_length,max_segment_length\n"
                << labels.size() << ',' << format_number(st.anomaly_ratio_gamma) << ',' << st.segment_count << ','
                << format_number(st.mean_segment_length) << ',';
            if (st.segment_count > 0) {
                out << *std::min_element(st.segment_lengths.begin(), st.segment_lengths.end()) << ','
                    << *std::max_element(st.segment_lengths.begin(), st.segment_lengths.end());
            } else {
                out << "0,0";
            }
            out << '\n';
        };
    });

    // correlate
    std::string x_path, y_path;
    auto* corr = app.add_subcommand("correlate", "Pearson and Kendall tau-b between two single-column files");
    corr->add_option("--x", x_path, "First column CSV")->required();
    corr->add_option("--y", y_path, "Second column CSV")->required();
    corr->callback([&] {
        action = [&] {
            const auto xs = io::load_scores(x_path);
            const auto ys = io::load_scores(y_path);
            const auto r = correlate(xs.scores, ys.scores);
            out << "n,pcc,krc\n"
                << r.n_points << ',' << (r.pearson_pcc ? format_number(*r.pearson_pcc) : "nan") << ','
                << (r.kendall_krc ? format_number(*r.kendall_krc) : "nan") << '\n';
            if (!r.note.empty()) err << "tadeval: note: " << r.note << '\n';
        };
    });

    // report
    BaselineOptions ro;
    std::vector<std::string> methods;
    std::string report_prefix;
    auto* report = app.add_subcommand("report", "Markdown + CSV comparison against the three baselines");
    report->add_option("--labels", ro.labels_path, "Label CSV")->required();
    report->add_option("--test", ro.test_path, "Test series CSV (for Case 2 and 3)")->required();
    report->add_option("--train", ro.train_path, "Reference series for normalization");
    report->add_option("--method", methods, "NAME=scores.csv, repeatable");
    report->add_option("--out-prefix", report_prefix, "Writes <prefix>.md and <prefix>.csv");
    add_baseline_model_flags(report, ro);
    report->callback([&] {
        action = [&] {
            check_repeats(ro.repeats);
            const auto labels = io::load_labels(ro.labels_path);
            const auto test = io::load_series(ro.test_path);
            std::optional<TimeSeries> train;
            if (!ro.train_path.empty()) train = io::load_series(ro.train_path);
            if (test.rows() != labels.size()) throw DataError("test series and labels differ in length");

            std::vector<ReportRow> rows;
            auto runs_of = [&](int which, std::size_t n) {
                std::vector<ScoreSeries> runs;
                for (std::size_t r = 0; r < n; ++r)
                    runs.push_back(
                        baseline_scores(which, &test, train ? &*train : nullptr, test.rows(), ro, ro.seed + r));
                return runs;
            };
            rows.push_back(make_row("Case 1", RowKind::Case1, runs_of(1, ro.repeats), labels));
            rows.push_back(make_row("Case 2", RowKind::Case2, runs_of(2, 1), labels));
            rows.push_back(make_row("Case 3", RowKind::Case3, runs_of(3, ro.repeats), labels));
            for (const auto& spec : methods) {
                const auto eq = spec.find('=');
                if (eq == std::string::npos || eq == 0) throw UsageError("--method expects NAME=path");
                std::vector<ScoreSeries> runs{io::load_scores(spec.substr(eq + 1))};
                rows.push_back(make_row(spec.substr(0, eq), RowKind::Method, runs, labels));
            }
            mark_improvements(rows);
            const auto md = render_markdown(rows);
            if (!report_prefix.empty()) {
                const auto csv = render_csv(rows);
                io::write_file_atomic(report_prefix + ".md", md);
                io::write_file_atomic(report_prefix + ".csv", csv);
            }
            out << md;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        std::string msg = e.what();
        for (auto& ch : msg)
            if (ch == '\n') ch = ' ';
        err << "tadeval: usage error: " << msg << '\n';
        return 1;
    } catch (const UsageError& e) {
        err << "tadeval: usage error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (action) action();
    } catch (const UsageError& e) {
        err << "tadeval: usage error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "tadeval: error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

}  // namespace tadeval
