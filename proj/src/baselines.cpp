#include "tadeval/baselines.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "tadeval/parallel.hpp"
#include "tadeval/protocols.hpp"

namespace tadeval {

namespace {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const Matrix>;

// Windows per batched forward pass. Fixed so results never depend on thread count.
constexpr std::size_t kBatch = 256;

void check_tau(const TimeSeries& series, const WindowSpec& spec) {
    if (spec.tau < 1 || spec.tau > series.rows())
        throw UsageError("window length " + std::to_string(spec.tau) + " must lie in [1, " +
                         std::to_string(series.rows()) + "]");
}

std::vector<double> draw_gaussian(std::mt19937_64& rng, std::size_t n, double sigma) {
    std::normal_distribution<double> dist(0.0, sigma);
    std::vector<double> w(n);
    for (auto& v : w) v = dist(rng);
    return w;
}

template <class Derived>
auto sigmoid(const Eigen::ArrayBase<Derived>& x) {
    return (1.0 + (-x).exp()).inverse();
}

// One LSTM step for a batch: columns are windows. Gate rows ordered input, forget, candidate, output.
// tanh is written as 2 sigmoid(2x) - 1 so every nonlinearity goes through the vectorized exp.
void lstm_step(const ConstMap& w_in, const ConstMap& w_hid, const Matrix& x, Matrix& h, Matrix& c) {
    const auto hidden = h.rows();
    Matrix gates = w_in * x;
    gates.noalias() += w_hid * h;
    const auto in_gate = sigmoid(gates.topRows(hidden).array());
    const auto forget = sigmoid(gates.middleRows(hidden, hidden).array());
    const auto candidate = 2.0 * sigmoid(2.0 * gates.middleRows(2 * hidden, hidden).array()) - 1.0;
    const auto out_gate = sigmoid(gates.bottomRows(hidden).array());
    c.array() = forget * c.array() + in_gate * candidate;
    h.array() = out_gate * (2.0 * sigmoid(2.0 * c.array()) - 1.0);
}

}  // namespace

std::vector<WindowView> make_windows(const TimeSeries& series, const WindowSpec& spec) {
    check_tau(series, spec);
    const std::size_t count = series.rows() - spec.tau + 1;
    const std::size_t n = series.cols();
    std::vector<WindowView> out;
    out.reserve(count);
    const double* base = series.values().data();
    for (std::size_t t = 0; t < count; ++t) out.push_back({{base + t * n, spec.tau * n}, spec.tau, n, t});
    return out;
}

NormalizationParams fit_normalization(const TimeSeries& reference, const NormalizationSpec& spec) {
    NormalizationParams p;
    p.method = spec.method;
    const std::size_t n = reference.cols();
    p.offset.assign(n, 0.0);
    p.gain.assign(n, 1.0);
    if (spec.method == NormMethod::None) return p;
    const auto rows = static_cast<double>(reference.rows());
    for (std::size_t c = 0; c < n; ++c) {
        if (spec.method == NormMethod::MinMax) {
            double lo = reference(0, c);
            double hi = lo;
            for (std::size_t t = 1; t < reference.rows(); ++t) {
                lo = std::min(lo, reference(t, c));
                hi = std::max(hi, reference(t, c));
            }
            p.offset[c] = lo;
            p.gain[c] = hi > lo ? 1.0 / (hi - lo) : 0.0;
        } else {
            double mean = 0.0;
            for (std::size_t t = 0; t < reference.rows(); ++t) mean += reference(t, c);
            mean /= rows;
            double var = 0.0;
            for (std::size_t t = 0; t < reference.rows(); ++t) var += (reference(t, c) - mean) * (reference(t, c) - mean);
            const double sd = std::sqrt(var / rows);
            p.offset[c] = mean;
            p.gain[c] = sd > 0.0 ? 1.0 / sd : 0.0;
        }
    }
    return p;
}

TimeSeries apply_normalization(const TimeSeries& series, const NormalizationParams& params) {
    if (params.offset.size() != series.cols())
        throw DataError("normalization fitted on " + std::to_string(params.offset.size()) +
                        " channels, series has " + std::to_string(series.cols()));
    if (params.method == NormMethod::None) return series;
    std::vector<double> v(series.values().size());
    const std::size_t n = series.cols();
    for (std::size_t t = 0; t < series.rows(); ++t)
        for (std::size_t c = 0; c < n; ++c) v[t * n + c] = (series(t, c) - params.offset[c]) * params.gain[c];
    return TimeSeries(series.rows(), n, std::move(v), series.channel_names());
}

TimeSeries normalize(const TimeSeries& series, const TimeSeries& reference, const NormalizationSpec& spec) {
    if (series.cols() != reference.cols())
        throw DataError("series has " + std::to_string(series.cols()) + " channels, reference has " +
                        std::to_string(reference.cols()));
    return apply_normalization(series, fit_normalization(reference, spec));
}

ScoreSeries case1_random_scores(std::size_t length, std::uint64_t seed) {
    if (length == 0) throw UsageError("case 1 length must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> s(length);
    for (auto& v : s) v = u(rng);
    return ScoreSeries(std::move(s), "case1");
}

std::vector<double> align_window_scores(std::span<const double> window_scores, std::size_t length,
                                        const WindowSpec& spec) {
    if (window_scores.empty() || window_scores.size() + spec.tau - 1 != length)
        throw DataError("window score count does not match series length and tau");
    std::vector<double> out(length);
    const std::size_t pad = spec.tau - 1;
    if (spec.alignment == Alignment::Last) {
        std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(pad), window_scores.front());
        std::copy(window_scores.begin(), window_scores.end(), out.begin() + static_cast<std::ptrdiff_t>(pad));
    } else {
        std::copy(window_scores.begin(), window_scores.end(), out.begin());
        std::fill(out.end() - static_cast<std::ptrdiff_t>(pad), out.end(), window_scores.back());
    }
    return out;
}

double window_score(const WindowView& w, std::span<const double> reconstruction, ScoreForm form) {
    double ss = 0.0;
    if (reconstruction.empty()) {
        for (double v : w.data) ss += v * v;
    } else {
        for (std::size_t i = 0; i < w.data.size(); ++i) {
            const double d = w.data[i] - reconstruction[i];
            ss += d * d;
        }
    }
    const auto tau = static_cast<double>(w.tau);
    if (form == ScoreForm::MeanSquare) return ss / (tau * static_cast<double>(w.channels));
    return std::sqrt(ss) / tau;
}

ScoreSeries case2_input_norm_scores(const TimeSeries& series, const TimeSeries& reference, const WindowSpec& wspec,
                                    const NormalizationSpec& nspec) {
    check_tau(series, wspec);
    const auto normed = normalize(series, reference, nspec);
    const auto windows = make_windows(normed, wspec);
    std::vector<double> ws(windows.size());
    parallel_for(windows.size(), 4096, [&](std::size_t i) { ws[i] = window_score(windows[i], {}, wspec.form); });
    return ScoreSeries(align_window_scores(ws, series.rows(), wspec), "case2");
}

RandomEncoderDecoder::RandomEncoderDecoder(std::size_t channels, const RandomModelConfig& config)
    : channels_(channels), hidden_(config.hidden_size) {
    if (channels_ == 0 || hidden_ == 0) throw UsageError("model needs positive channel count and hidden size");
    if (!(config.weight_sigma > 0.0)) throw UsageError("weight sigma must be positive");
    std::mt19937_64 rng(config.seed);
    const std::size_t g = 4 * hidden_;
    enc_input_ = draw_gaussian(rng, g * channels_, config.weight_sigma);
    enc_hidden_ = draw_gaussian(rng, g * hidden_, config.weight_sigma);
    dec_input_ = draw_gaussian(rng, g * channels_, config.weight_sigma);
    dec_hidden_ = draw_gaussian(rng, g * hidden_, config.weight_sigma);
    readout_ = draw_gaussian(rng, channels_ * hidden_, config.weight_sigma);
}

std::vector<std::vector<double>> RandomEncoderDecoder::reconstruct(std::span<const WindowView> windows) const {
    std::vector<std::vector<double>> out;
    if (windows.empty()) return out;
    const auto tau = windows.front().tau;
    const auto n = static_cast<Eigen::Index>(channels_);
    const auto hid = static_cast<Eigen::Index>(hidden_);
    const auto batch = static_cast<Eigen::Index>(windows.size());
    for (const auto& w : windows)
        if (w.tau != tau || w.channels != channels_) throw DataError("window shape does not match model");

    const ConstMap enc_in(enc_input_.data(), 4 * hid, n);
    const ConstMap enc_hid(enc_hidden_.data(), 4 * hid, hid);
    const ConstMap dec_in(dec_input_.data(), 4 * hid, n);
    const ConstMap dec_hid(dec_hidden_.data(), 4 * hid, hid);
    const ConstMap read(readout_.data(), n, hid);

    Matrix h = Matrix::Zero(hid, batch);
    Matrix c = Matrix::Zero(hid, batch);
    Matrix x(n, batch);
    for (std::size_t step = 0; step < tau; ++step) {
        for (Eigen::Index b = 0; b < batch; ++b)
            for (Eigen::Index k = 0; k < n; ++k)
                x(k, b) = windows[static_cast<std::size_t>(b)].data[step * channels_ + static_cast<std::size_t>(k)];
        lstm_step(enc_in, enc_hid, x, h, c);
    }

    out.assign(windows.size(), std::vector<double>(tau * channels_));
    // Decoder is seeded with the encoder state and fed its own previous output.
    x.setZero();
    for (std::size_t step = 0; step < tau; ++step) {
        lstm_step(dec_in, dec_hid, x, h, c);
        x.noalias() = read * h;
        for (Eigen::Index b = 0; b < batch; ++b)
            for (Eigen::Index k = 0; k < n; ++k)
                out[static_cast<std::size_t>(b)][step * channels_ + static_cast<std::size_t>(k)] = x(k, b);
    }
    return out;
}

ScoreSeries case3_untrained_model_scores(const TimeSeries& series, const TimeSeries& reference,
                                         const WindowSpec& wspec, const NormalizationSpec& nspec,
                                         const RandomModelConfig& mconfig) {
    check_tau(series, wspec);
    const auto normed = normalize(series, reference, nspec);
    const auto windows = make_windows(normed, wspec);
    const RandomEncoderDecoder model(series.cols(), mconfig);
    std::vector<double> ws(windows.size());
    const std::size_t chunks = (windows.size() + kBatch - 1) / kBatch;
    parallel_for(chunks, 1, [&](std::size_t ci) {
        const std::size_t lo = ci * kBatch;
        const std::size_t hi = std::min(windows.size(), lo + kBatch);
        const std::span<const WindowView> batch(windows.data() + lo, hi - lo);
        const auto recon = model.reconstruct(batch);
        for (std::size_t i = lo; i < hi; ++i) ws[i] = window_score(windows[i], recon[i - lo], wspec.form);
    });
    return ScoreSeries(align_window_scores(ws, series.rows(), wspec), "case3");
}

std::vector<WindowSweepRow> window_size_sweep(const TimeSeries& series, const TimeSeries& reference,
                                              const LabelSeries& labels, const std::vector<std::size_t>& taus,
                                              BaselineCase which, const NormalizationSpec& nspec,
                                              const RandomModelConfig& mconfig) {
    if (which == BaselineCase::Case1) throw UsageError("window sweep applies to case 2 and case 3 only");
    std::vector<WindowSweepRow> rows;
    for (std::size_t tau : taus) {
        WindowSpec w;
        w.tau = tau;
        const auto scores = which == BaselineCase::Case2
                                ? case2_input_norm_scores(series, reference, w, nspec)
                                : case3_untrained_model_scores(series, reference, w, nspec, mconfig);
        const auto sweep = sweep_best_f1(scores, labels, ProtocolConfig::point());
        rows.push_back({tau, sweep.best_f1, sweep.best_threshold});
    }
    return rows;
}

}  // namespace tadeval
