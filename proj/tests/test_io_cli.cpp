#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <unistd.h>

#include "oracles.hpp"
#include "tadeval/cli.hpp"
#include "tadeval/correlation.hpp"
#include "tadeval/io.hpp"
#include "tadeval/protocols.hpp"
#include "tadeval/report.hpp"

using namespace tadeval;
namespace fs = std::filesystem;

namespace {

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("tadeval_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    fs::path file(const std::string& name, const std::string& contents) const {
        const auto p = path_ / name;
        std::ofstream(p) << contents;
        return p;
    }
    fs::path operator/(const std::string& name) const { return path_ / name; }
    const fs::path& path() const { return path_; }

private:
    static inline int counter_ = 0;
    fs::path path_;
};

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli(std::vector<std::string> args) {
    args.insert(args.begin(), "tadeval");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);)
        if (!l.empty()) v.push_back(l);
    return v;
}

std::string last_field(const std::string& line) { return line.substr(line.rfind(',') + 1); }

}  // namespace

TEST(Parse, LabelsWithoutHeader) {
    const auto y = io::parse_labels("0\n1\n1\n");
    EXPECT_EQ(y.labels, (std::vector<std::uint8_t>{0, 1, 1}));
}

TEST(Parse, SeriesHeaderDetected) {
    const auto s = io::parse_series("ch0,ch1\n1,2\n3,4\n");
    EXPECT_EQ(s.rows(), 2u);
    EXPECT_EQ(s.cols(), 2u);
    EXPECT_EQ(s(1, 0), 3.0);
    ASSERT_EQ(s.channel_names().size(), 2u);
    EXPECT_EQ(s.channel_names()[1], "ch1");
}

TEST(Parse, ErrorsNameTheLine) {
    try {
        io::parse_scores("0.5\nabc\n", "s.csv");
        FAIL();
    } catch (const DataError& e) {
        EXPECT_NE(std::string(e.what()).find("s.csv:2"), std::string::npos) << e.what();
    }
    try {
        io::parse_labels("label\n0\n2\n", "y.csv");
        FAIL();
    } catch (const DataError& e) {
        EXPECT_NE(std::string(e.what()).find("y.csv:3"), std::string::npos) << e.what();
    }
    EXPECT_THROW(io::parse_series("1,2\n3\n"), DataError);
    EXPECT_THROW(io::parse_scores(""), DataError);
    EXPECT_THROW(io::load_scores("/nonexistent/file.csv"), DataError);
}

TEST(Parse, RoundTrip) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n(0.0, 100.0);
    std::vector<double> v(300);
    for (auto& x : v) x = n(rng);
    const TimeSeries s(100, 3, v);
    const auto back = io::parse_series(io::to_csv(s));
    ASSERT_EQ(back.rows(), 100u);
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(back.values()[i], v[i], 1e-8 * std::max(1.0, std::abs(v[i])));
    const ScoreSeries sc(std::vector<double>(v.begin(), v.begin() + 50));
    const auto sb = io::parse_scores(io::to_csv(sc));
    for (std::size_t i = 0; i < 50; ++i) EXPECT_NEAR(sb.scores[i], v[i], 1e-8 * std::max(1.0, std::abs(v[i])));
    const LabelSeries y({0, 1, 1, 0});
    EXPECT_EQ(io::parse_labels(io::to_csv(y)), y);
}

TEST(WriteAtomic, NoPartialLeftBehind) {
    TempDir d;
    io::write_file_atomic(d / "a.csv", "x\n1\n");
    EXPECT_TRUE(fs::exists(d / "a.csv"));
    EXPECT_FALSE(fs::exists(d / "a.csv.partial"));
    EXPECT_THROW(io::write_file_atomic(d / "missing_dir" / "b.csv", "x"), DataError);
}

TEST(Correlation, PerfectAndInverse) {
    const std::vector<double> x{1, 2, 3, 4, 5};
    const std::vector<double> up{2, 4, 6, 8, 10};
    const std::vector<double> down{5, 4, 3, 2, 1};
    EXPECT_NEAR(pearson(x, up), 1.0, 1e-15);
    EXPECT_NEAR(kendall_tau_b(x, up), 1.0, 1e-15);
    EXPECT_NEAR(pearson(x, down), -1.0, 1e-15);
    EXPECT_NEAR(kendall_tau_b(x, down), -1.0, 1e-15);
}

TEST(Correlation, KendallMatchesPairwiseOracle) {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> q(0, 12);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<double> x(200), y(200);
        for (std::size_t i = 0; i < 200; ++i) {
            x[i] = q(rng);
            y[i] = q(rng) + 0.5 * x[i];
        }
        EXPECT_NEAR(kendall_tau_b(x, y), oracle::pairwise_kendall_tau_b(x, y), 1e-12);
    }
}

TEST(Correlation, ZeroVarianceFlagged) {
    const std::vector<double> x{1, 2, 3};
    const std::vector<double> c{4, 4, 4};
    const auto r = correlate(x, c);
    EXPECT_FALSE(r.pearson_pcc.has_value());
    EXPECT_FALSE(r.kendall_krc.has_value());
    EXPECT_FALSE(r.note.empty());
    EXPECT_EQ(r.n_points, 3u);
    EXPECT_THROW(correlate(x, std::vector<double>{1, 2}), DataError);
}

TEST(Report, ArrowRule) {
    auto row = [](const char* name, RowKind k, double f1, double f1_pa) {
        ReportRow r;
        r.name = name;
        r.kind = k;
        r.f1 = {f1, 0, 1};
        r.f1_pa = {f1_pa, 0, 1};
        return r;
    };
    std::vector<ReportRow> rows{row("Case 1", RowKind::Case1, 0.1, 0.9), row("Case 2", RowKind::Case2, 0.4, 0.8),
                                row("Case 3", RowKind::Case3, 0.45, 0.85), row("good", RowKind::Method, 0.5, 0.95),
                                row("pa_only", RowKind::Method, 0.3, 0.99), row("f1_only", RowKind::Method, 0.6, 0.9)};
    mark_improvements(rows);
    EXPECT_EQ(rows[3].improved, std::optional<bool>(true));
    EXPECT_EQ(rows[4].improved, std::optional<bool>(false));
    EXPECT_EQ(rows[5].improved, std::optional<bool>(false));
    EXPECT_FALSE(rows[0].improved.has_value());
    const auto md = render_markdown(rows);
    EXPECT_NE(md.find("good"), std::string::npos);
    EXPECT_NE(md.find("↑"), std::string::npos);
    EXPECT_NE(md.find("↓"), std::string::npos);
    std::vector<ReportRow> partial{row("Case 1", RowKind::Case1, 0.1, 0.9), row("m", RowKind::Method, 0.5, 0.95)};
    EXPECT_FALSE(beats_baselines(partial[1], partial).has_value());
}

TEST(Report, SummaryOfPerfectScores) {
    const LabelSeries y({0, 0, 1, 1, 0, 1, 0});
    const ScoreSeries s({0.1, 0.2, 0.9, 0.8, 0.3, 0.7, 0.0});
    const auto sm = summarize_scores(s, y);
    EXPECT_DOUBLE_EQ(sm.f1, 1.0);
    EXPECT_DOUBLE_EQ(sm.f1_pa, 1.0);
    EXPECT_DOUBLE_EQ(sm.f1_pak_auc, 1.0);
    EXPECT_DOUBLE_EQ(sm.auroc, 1.0);
    EXPECT_DOUBLE_EQ(sm.aupr, 1.0);
    const std::vector<double> v{1, 2, 3};
    const auto ms = summarize(v);
    EXPECT_DOUBLE_EQ(ms.mean, 2.0);
    EXPECT_DOUBLE_EQ(ms.std, 1.0);
}

TEST(Cli, EvalPointAdjusted) {
    TempDir d;
    const auto s = d.file("s.csv", "0.1\n0.2\n0.9\n0.3\n0.1\n");
    const auto y = d.file("y.csv", "0\n1\n1\n1\n0\n");
    const auto r = cli({"eval", "--scores", s.string(), "--labels", y.string(), "--protocol", "pa", "--delta", "0.5"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 2u);
    EXPECT_EQ(ls[0], "protocol,delta,k,tp,fp,fn,tn,precision,recall,f1");
    EXPECT_EQ(last_field(ls[1]), "1");
    const auto p = cli({"eval", "--scores", s.string(), "--labels", y.string(), "--delta", "0.5"});
    EXPECT_EQ(last_field(lines(p.out)[1]), "0.5");
}

TEST(Cli, KSweepEndpointsMatchEval) {
    TempDir d;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u;
    const auto yv = oracle::random_run_labels(400, rng, 0.05, 20);
    std::string sc, yc;
    for (std::size_t i = 0; i < yv.size(); ++i) {
        sc += io::format_number(u(rng)) + "\n";
        yc += std::to_string(yv[i]) + "\n";
    }
    const auto s = d.file("s.csv", sc);
    const auto y = d.file("y.csv", yc);
    const auto r = cli({"ksweep", "--scores", s.string(), "--labels", y.string(), "--delta", "0.8"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 13u);  // header, 11 rows, auc
    EXPECT_EQ(ls[0], "k,f1");
    EXPECT_EQ(ls[12].rfind("auc,", 0), 0u);
    const auto pa = cli({"eval", "--scores", s.string(), "--labels", y.string(), "--protocol", "pa", "--delta", "0.8"});
    const auto pt = cli({"eval", "--scores", s.string(), "--labels", y.string(), "--delta", "0.8"});
    EXPECT_EQ(last_field(ls[1]), last_field(lines(pa.out)[1]));
    EXPECT_EQ(last_field(ls[11]), last_field(lines(pt.out)[1]));
}

TEST(Cli, Analytic) {
    const auto r = cli({"analytic", "--gamma", "0.05", "--L", "5000"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 2u);
    const double max_f1 = std::stod(ls[1].substr(ls[1].find(',', ls[1].find(',') + 1) + 1));
    EXPECT_NEAR(max_f1, 0.98763, 1e-4);
}

TEST(Cli, SimulateDefaultsToPA) {
    const auto r = cli({"simulate", "--gamma", "0.05", "--L", "100", "--delta", "0.9", "--trials", "500", "--repeats", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto ls = lines(r.out);
    ASSERT_GE(ls.size(), 4u);
    EXPECT_EQ(ls[3].rfind("closed_form,", 0), 0u);
    const auto pooled = ls[1];
    const double recall = std::stod(pooled.substr(pooled.find(',', pooled.find(',') + 1) + 1));
    EXPECT_GT(recall, 0.99);
}

TEST(Cli, ExitCodes) {
    TempDir d;
    const auto s = d.file("s.csv", "0.1\nzz\n");
    const auto y = d.file("y.csv", "0\n1\n");
    auto r = cli({"eval", "--scores", s.string(), "--labels", y.string(), "--delta", "0.5"});
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(r.err.rfind("tadeval: error: ", 0), 0u) << r.err;
    EXPECT_NE(r.err.find(":2"), std::string::npos);
    EXPECT_EQ(cli({"eval", "--labels", y.string()}).code, 1);
    EXPECT_EQ(cli({"nonsense"}).code, 1);
    EXPECT_EQ(cli({"analytic", "--gamma", "1.5"}).code, 1);
    EXPECT_EQ(cli({"eval", "--scores", (d / "nope.csv").string(), "--labels", y.string(), "--delta", "0"}).code, 2);
    EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, ConfigFileMirrorsFlags) {
    TempDir d;
    const auto s = d.file("s.csv", "0.1\n0.2\n0.9\n0.3\n0.1\n");
    const auto y = d.file("y.csv", "0\n1\n1\n1\n0\n");
    const auto cfg = d.file("run.toml", "[eval]\nscores = \"" + s.string() + "\"\nlabels = \"" + y.string() +
                                            "\"\nprotocol = \"pa\"\ndelta = 0.5\n");
    const auto r = cli({"--config", cfg.string(), "eval"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(last_field(lines(r.out)[1]), "1");
}

TEST(Cli, SynthThenBaselineThenReport) {
    TempDir d;
    const auto prefix = (d / "ds").string();
    auto r = cli({"synth", "--length", "1200", "--channels", "3", "--seed", "4", "--gamma", "0.1", "--segments", "3",
                  "--out-prefix", prefix});
    ASSERT_EQ(r.code, 0) << r.err;
    for (const char* suffix : {"_train.csv", "_test.csv", "_labels.csv"}) EXPECT_TRUE(fs::exists(prefix + suffix));
    const auto labels = io::load_labels(prefix + "_labels.csv");
    EXPECT_EQ(labels.size(), 600u);
    EXPECT_EQ(dataset_stats(labels).segment_count, 3u);

    const auto scores = (d / "c2.csv").string();
    r = cli({"baseline", "--case", "2", "--test", prefix + "_test.csv", "--train", prefix + "_train.csv", "--tau",
             "20", "--out", scores});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(io::load_scores(scores).size(), 600u);

    r = cli({"report", "--labels", prefix + "_labels.csv", "--test", prefix + "_test.csv", "--train",
             prefix + "_train.csv", "--tau", "20", "--hidden", "8", "--repeats", "2", "--method", "mine=" + scores,
             "--out-prefix", (d / "rep").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("Case 3"), std::string::npos);
    EXPECT_NE(r.out.find("mine"), std::string::npos);
    EXPECT_TRUE(fs::exists(d / "rep.md"));
    EXPECT_TRUE(fs::exists(d / "rep.csv"));
    for (const auto& e : fs::directory_iterator(d.path()))
        EXPECT_EQ(e.path().string().find(".partial"), std::string::npos);
}

TEST(Cli, FailedRunLeavesNoOutput) {
    TempDir d;
    const auto s = d.file("s.csv", "0.1\n0.2\n");
    const auto y = d.file("y.csv", "0\n1\n0\n");
    const auto out = d / "curve.csv";
    const auto r = cli({"sweep", "--scores", s.string(), "--labels", y.string(), "--out", out.string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_FALSE(fs::exists(out));
    EXPECT_FALSE(fs::exists(out.string() + ".partial"));
}
