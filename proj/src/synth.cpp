#include "tadeval/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

namespace tadeval {

namespace {

struct ChannelWave {
    double period[3];
    double phase[3];
    double amplitude[3];
};

void check_injections(const SynthSpec& spec) {
    const std::size_t tl = test_length(spec);
    std::vector<const InjectionSpec*> sorted;
    for (const auto& inj : spec.injections) {
        if (inj.start >= inj.end || inj.end > tl)
            throw UsageError("injection [" + std::to_string(inj.start) + ", " + std::to_string(inj.end) +
                             ") lies outside the test half of length " + std::to_string(tl));
        if (inj.channels.empty()) throw UsageError("injection has no channels");
        for (auto c : inj.channels)
            if (c >= spec.channels) throw UsageError("injection channel " + std::to_string(c) + " out of range");
        sorted.push_back(&inj);
    }
    std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->start < b->start; });
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i]->start < sorted[i - 1]->end) throw UsageError("injections overlap");
}

}  // namespace

std::size_t test_length(const SynthSpec& spec) noexcept { return spec.length - spec.length / 2; }

SynthDataset generate(const SynthSpec& spec) {
    if (spec.length < 2) throw UsageError("synthetic length must be at least 2");
    if (spec.channels < 1) throw UsageError("synthetic data needs at least one channel");
    if (!(spec.noise_std >= 0.0)) throw UsageError("noise std must be non-negative");
    check_injections(spec);

    const std::size_t T = spec.length;
    const std::size_t N = spec.channels;
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    // Periods are scaled by irrational-ish factors so the three components never lock.
    std::vector<ChannelWave> waves(N);
    for (auto& w : waves) {
        const double base = 40.0 + 160.0 * unif(rng);
        const double factors[3] = {1.0, std::numbers::sqrt2 * 1.7, std::numbers::pi * 1.3};
        for (int k = 0; k < 3; ++k) {
            w.period[k] = base * factors[k];
            w.phase[k] = 2.0 * std::numbers::pi * unif(rng);
            w.amplitude[k] = 1.0 / static_cast<double>(1 << k);
        }
    }

    std::vector<double> clean(T * N);
    for (std::size_t c = 0; c < N; ++c) {
        double walk = 0.0;
        for (std::size_t t = 0; t < T; ++t) {
            double v = 0.0;
            if (spec.base == BaseSignal::SineMix) {
                const auto& w = waves[c];
                for (int k = 0; k < 3; ++k)
                    v += w.amplitude[k] * std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / w.period[k] + w.phase[k]);
            } else {
                walk += 0.1 * gauss(rng);
                v = walk;
            }
            clean[t * N + c] = v;
        }
    }
    std::vector<double> values(T * N);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = clean[i] + spec.noise_std * gauss(rng);

    const std::size_t train_len = T / 2;
    const std::size_t tl = T - train_len;
    std::vector<double> ch_std(N, 0.0);
    for (std::size_t c = 0; c < N; ++c) {
        double mean = 0.0;
        for (std::size_t t = 0; t < train_len; ++t) mean += values[t * N + c];
        mean /= static_cast<double>(train_len);
        double ss = 0.0;
        for (std::size_t t = 0; t < train_len; ++t) ss += (values[t * N + c] - mean) * (values[t * N + c] - mean);
        ch_std[c] = std::sqrt(ss / static_cast<double>(train_len));
        if (ch_std[c] == 0.0) ch_std[c] = 1.0;
    }

    std::vector<double> test(values.begin() + static_cast<std::ptrdiff_t>(train_len * N), values.end());
    std::vector<std::uint8_t> labels(tl, 0);
    for (const auto& inj : spec.injections) {
        std::fill(labels.begin() + static_cast<std::ptrdiff_t>(inj.start),
                  labels.begin() + static_cast<std::ptrdiff_t>(inj.end), 1);
        const double len = static_cast<double>(inj.end - inj.start);
        for (auto c : inj.channels) {
            double drift = 0.0;
            for (std::size_t t = inj.start; t < inj.end; ++t) {
                double& x = test[t * N + c];
                const double base = clean[(train_len + t) * N + c];
                switch (inj.kind) {
                    case InjectionKind::Point:
                        x += inj.magnitude * ch_std[c];
                        break;
                    case InjectionKind::Contextual: {
                        // Same standard deviation as the clean channel, different shape.
                        const double phase = 2.0 * std::numbers::pi * static_cast<double>(train_len + t) /
                                             waves[c].period[0];
                        const double square = std::sin(phase) >= 0.0 ? 1.0 : -1.0;
                        x += square * ch_std[c] - base;
                        break;
                    }
                    case InjectionKind::Collective:
                        drift += inj.magnitude * ch_std[c] / std::sqrt(len) * gauss(rng);
                        x += drift;
                        break;
                }
            }
        }
    }

    std::vector<double> train(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(train_len * N));
    std::vector<std::string> names(N);
    for (std::size_t c = 0; c < N; ++c) names[c] = "ch" + std::to_string(c);
    return {TimeSeries(train_len, N, std::move(train), names), TimeSeries(tl, N, std::move(test), names),
            LabelSeries(std::move(labels))};
}

SegmentLayout layout_from_stats(std::size_t total_length, double gamma, std::size_t segment_count,
                                std::uint64_t seed) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw UsageError("gamma must lie in [0, 1]");
    const auto covered = static_cast<std::size_t>(std::llround(gamma * static_cast<double>(total_length)));
    if (segment_count == 0) {
        if (covered != 0) throw UsageError("non-zero gamma needs at least one segment");
        return SegmentLayout{SegmentSet{{}, total_length}};
    }
    if (covered < segment_count)
        throw UsageError("gamma * T = " + std::to_string(covered) + " cannot hold " + std::to_string(segment_count) +
                         " segments");
    // Segments must be separated by at least one normal step.
    if (covered + (segment_count - 1) > total_length) throw UsageError("segments cannot be packed into the series");
    const std::size_t slack = total_length - covered - (segment_count - 1);

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> lengths(segment_count, covered / segment_count);
    for (std::size_t i = 0; i < covered % segment_count; ++i) ++lengths[i];
    std::shuffle(lengths.begin(), lengths.end(), rng);

    std::uniform_int_distribution<std::size_t> pick(0, slack);
    std::vector<std::size_t> cuts(segment_count);
    for (auto& c : cuts) c = pick(rng);
    std::sort(cuts.begin(), cuts.end());

    SegmentLayout layout;
    layout.segments.total_length = total_length;
    std::size_t pos = 0;
    std::size_t prev_cut = 0;
    for (std::size_t m = 0; m < segment_count; ++m) {
        pos += cuts[m] - prev_cut + (m > 0 ? 1 : 0);
        prev_cut = cuts[m];
        layout.segments.segments.push_back({pos, pos + lengths[m]});
        pos += lengths[m];
    }
    validate(layout.segments);
    return layout;
}

std::vector<InjectionSpec> point_injections(const SegmentLayout& layout, std::size_t channels, double magnitude,
                                            std::size_t channels_per_injection, std::uint64_t seed) {
    if (channels_per_injection < 1 || channels_per_injection > channels)
        throw UsageError("channels per injection must lie in [1, N]");
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> all(channels);
    std::iota(all.begin(), all.end(), 0);
    std::vector<InjectionSpec> out;
    for (const auto& s : layout.segments.segments) {
        std::shuffle(all.begin(), all.end(), rng);
        std::vector<std::size_t> chosen(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(channels_per_injection));
        std::sort(chosen.begin(), chosen.end());
        out.push_back({InjectionKind::Point, s.start, s.end, std::move(chosen), magnitude});
    }
    return out;
}

}  // namespace tadeval
