#pragma once

// Deterministic multivariate series with labelled anomaly injections.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tadeval/analytic.hpp"
#include "tadeval/core.hpp"

namespace tadeval {

enum class BaseSignal : std::uint8_t { SineMix, RandomWalk };

enum class InjectionKind : std::uint8_t {
    Point,       // offset of magnitude * channel std on every step of the segment
    Contextual,  // waveform replaced by a square wave of the same amplitude; magnitude unused
    Collective,  // accumulated low-level noise reaching about magnitude * channel std
};

struct InjectionSpec {
    InjectionKind kind = InjectionKind::Point;
    std::size_t start = 0;  // test-series index, inclusive
    std::size_t end = 0;    // exclusive
    std::vector<std::size_t> channels;
    double magnitude = 1.0;
};

struct SynthSpec {
    std::size_t length = 2000;  // train + test; the test half is the trailing length / 2 rows
    std::size_t channels = 4;
    BaseSignal base = BaseSignal::SineMix;
    double noise_std = 0.1;
    std::uint64_t seed = 0;
    std::vector<InjectionSpec> injections;
};

struct SynthDataset {
    TimeSeries train;
    TimeSeries test;
    LabelSeries test_labels;
};

std::size_t test_length(const SynthSpec& spec) noexcept;

SynthDataset generate(const SynthSpec& spec);

// M near-equal disjoint, non-adjacent segments totalling round(gamma * T), placed uniformly at random.
SegmentLayout layout_from_stats(std::size_t total_length, double gamma, std::size_t segment_count,
                                std::uint64_t seed);

// Point-injection spec over the given layout (indices are test-series indices).
std::vector<InjectionSpec> point_injections(const SegmentLayout& layout, std::size_t channels, double magnitude,
                                            std::size_t channels_per_injection, std::uint64_t seed);

}  // namespace tadeval
