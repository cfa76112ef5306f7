#include "tadeval/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "tadeval/core.hpp"

namespace tadeval {

namespace {

void check_inputs(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw DataError("correlation inputs differ in length");
    if (xs.size() < 2) throw DataError("correlation needs at least two points");
}

// Sum over runs of equal adjacent values of k(k-1)/2.
template <class Eq>
std::uint64_t tied_pairs(std::size_t n, Eq&& equal_to_prev) {
    std::uint64_t total = 0;
    std::uint64_t run = 1;
    for (std::size_t i = 1; i < n; ++i) {
        if (equal_to_prev(i)) {
            ++run;
        } else {
            total += run * (run - 1) / 2;
            run = 1;
        }
    }
    return total + run * (run - 1) / 2;
}

// Stable bottom-up merge sort of v, returning the number of inversions.
std::uint64_t sort_counting_swaps(std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<double> buf(n);
    std::uint64_t swaps = 0;
    for (std::size_t width = 1; width < n; width *= 2) {
        for (std::size_t lo = 0; lo < n; lo += 2 * width) {
            const std::size_t mid = std::min(lo + width, n);
            const std::size_t hi = std::min(lo + 2 * width, n);
            std::size_t i = lo, j = mid, k = lo;
            while (i < mid && j < hi) {
                if (v[j] < v[i]) {
                    swaps += mid - i;
                    buf[k++] = v[j++];
                } else {
                    buf[k++] = v[i++];
                }
            }
            while (i < mid) buf[k++] = v[i++];
            while (j < hi) buf[k++] = v[j++];
        }
        std::swap(v, buf);
    }
    return swaps;
}

}  // namespace

double pearson(std::span<const double> xs, std::span<const double> ys) {
    check_inputs(xs, ys);
    const auto n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw DataError("Pearson correlation undefined: zero variance");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double kendall_tau_b(std::span<const double> xs, std::span<const double> ys) {
    check_inputs(xs, ys);
    const std::size_t n = xs.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return xs[a] < xs[b] || (xs[a] == xs[b] && ys[a] < ys[b]);
    });
    const std::uint64_t x_ties = tied_pairs(n, [&](std::size_t i) { return xs[idx[i]] == xs[idx[i - 1]]; });
    const std::uint64_t joint_ties = tied_pairs(n, [&](std::size_t i) {
        return xs[idx[i]] == xs[idx[i - 1]] && ys[idx[i]] == ys[idx[i - 1]];
    });
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = ys[idx[i]];
    const std::uint64_t swaps = sort_counting_swaps(y);
    const std::uint64_t y_ties = tied_pairs(n, [&](std::size_t i) { return y[i] == y[i - 1]; });

    const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    if (x_ties == pairs || y_ties == pairs) throw DataError("Kendall tau-b undefined: constant input");
    const double numer = static_cast<double>(pairs) - static_cast<double>(x_ties) - static_cast<double>(y_ties) +
                         static_cast<double>(joint_ties) - 2.0 * static_cast<double>(swaps);
    const double denom = std::sqrt(static_cast<double>(pairs - x_ties) * static_cast<double>(pairs - y_ties));
    return std::clamp(numer / denom, -1.0, 1.0);
}

CorrelationReport correlate(std::span<const double> xs, std::span<const double> ys) {
    check_inputs(xs, ys);
    CorrelationReport r;
    r.n_points = xs.size();
    try {
        r.pearson_pcc = pearson(xs, ys);
    } catch (const DataError& e) {
        r.note += e.what();
    }
    try {
        r.kendall_krc = kendall_tau_b(xs, ys);
    } catch (const DataError& e) {
        if (!r.note.empty()) r.note += "; ";
        r.note += e.what();
    }
    return r;
}

}  // namespace tadeval
