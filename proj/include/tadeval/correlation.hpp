#pragma once

#include <optional>
#include <span>
#include <string>

namespace tadeval {

struct CorrelationReport {
    std::optional<double> pearson_pcc;  // empty when either input has zero variance
    std::optional<double> kendall_krc;  // tau-b; empty when either input is constant
    std::size_t n_points = 0;
    std::string note;                   // why a coefficient is missing
};

double pearson(std::span<const double> xs, std::span<const double> ys);

// Tau-b via Knight's O(n log n) merge-sort inversion count.
double kendall_tau_b(std::span<const double> xs, std::span<const double> ys);

CorrelationReport correlate(std::span<const double> xs, std::span<const double> ys);

}  // namespace tadeval
