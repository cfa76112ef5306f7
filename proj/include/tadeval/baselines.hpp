#pragma once

// Reference anomaly scores that involve no learning:
//   Case 1  i.i.d. U(0,1) per time step
//   Case 2  scaled L2 norm of each normalized input window
//   Case 3  reconstruction error of a frozen, randomly initialized LSTM encoder-decoder

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tadeval/core.hpp"

namespace tadeval {

enum class Alignment : std::uint8_t { Last, First };

// (1/tau) * ||w - w_hat||_2 by default; MeanSquare is ||w - w_hat||^2 / (tau * N).
enum class ScoreForm : std::uint8_t { ScaledL2, MeanSquare };

struct WindowSpec {
    std::size_t tau = 120;
    Alignment alignment = Alignment::Last;
    ScoreForm form = ScoreForm::ScaledL2;
};

// Rows [start, start + tau) of a series; stride is always 1.
struct WindowView {
    std::span<const double> data;  // tau * channels, row-major
    std::size_t tau = 0;
    std::size_t channels = 0;
    std::size_t start = 0;
};

std::vector<WindowView> make_windows(const TimeSeries& series, const WindowSpec& spec);

enum class NormMethod : std::uint8_t { MinMax, ZScore, None };

struct NormalizationSpec {
    NormMethod method = NormMethod::MinMax;
};

// Per-channel affine map x -> (x - offset) * gain, fitted on a reference series.
struct NormalizationParams {
    NormMethod method = NormMethod::None;
    std::vector<double> offset;
    std::vector<double> gain;  // 0 for degenerate (constant) channels
};

NormalizationParams fit_normalization(const TimeSeries& reference, const NormalizationSpec& spec);
TimeSeries apply_normalization(const TimeSeries& series, const NormalizationParams& params);

// Test values outside the reference range pass through unclamped.
TimeSeries normalize(const TimeSeries& series, const TimeSeries& reference, const NormalizationSpec& spec);

struct RandomModelConfig {
    std::size_t hidden_size = 64;
    double weight_sigma = 0.1414213562373095;  // sqrt(0.02)
    std::uint64_t seed = 0;
};

ScoreSeries case1_random_scores(std::size_t length, std::uint64_t seed);

// Spreads T - tau + 1 window scores over T time steps by edge replication.
std::vector<double> align_window_scores(std::span<const double> window_scores, std::size_t length,
                                        const WindowSpec& spec);

// Score of a window against a reconstruction; an empty reconstruction means zeros.
double window_score(const WindowView& w, std::span<const double> reconstruction, ScoreForm form);

// `reference` supplies the normalization statistics (normally the training split).
ScoreSeries case2_input_norm_scores(const TimeSeries& series, const TimeSeries& reference, const WindowSpec& wspec,
                                    const NormalizationSpec& nspec);

// Frozen single-layer LSTM encoder and decoder with a linear read-out; all biases zero,
// every weight drawn once from N(0, sigma^2).
class RandomEncoderDecoder {
public:
    RandomEncoderDecoder(std::size_t channels, const RandomModelConfig& config);

    std::size_t channels() const noexcept { return channels_; }
    std::size_t hidden_size() const noexcept { return hidden_; }

    // Reconstructions for a batch of windows, each tau x channels row-major.
    std::vector<std::vector<double>> reconstruct(std::span<const WindowView> windows) const;

private:
    std::size_t channels_;
    std::size_t hidden_;
    std::vector<double> enc_input_;   // 4H x N
    std::vector<double> enc_hidden_;  // 4H x H
    std::vector<double> dec_input_;   // 4H x N
    std::vector<double> dec_hidden_;  // 4H x H
    std::vector<double> readout_;     // N x H
};

ScoreSeries case3_untrained_model_scores(const TimeSeries& series, const TimeSeries& reference,
                                         const WindowSpec& wspec, const NormalizationSpec& nspec,
                                         const RandomModelConfig& mconfig);

enum class BaselineCase : std::uint8_t { Case1, Case2, Case3 };

struct WindowSweepRow {
    std::size_t tau = 0;
    double best_f1 = 0.0;
    double best_threshold = 0.0;
};

std::vector<WindowSweepRow> window_size_sweep(const TimeSeries& series, const TimeSeries& reference,
                                              const LabelSeries& labels, const std::vector<std::size_t>& taus,
                                              BaselineCase which, const NormalizationSpec& nspec = {},
                                              const RandomModelConfig& mconfig = {});

}  // namespace tadeval
