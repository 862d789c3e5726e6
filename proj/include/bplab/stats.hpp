#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bplab {

/// Sampled partial derivatives for one configuration.
struct DerivativeSampleSet {
    std::vector<double> samples; // signed, index-ordered by sample number
    std::string config_label;
    std::uint64_t master_seed = 0;
    /// Toy landscapes only: the sampled point with the lowest cost.
    std::optional<std::pair<double, double>> anchor;
};

/// Throws std::invalid_argument if the set is empty or holds a non-finite value.
void validate_samples(const DerivativeSampleSet& set);

struct StatsSummary {
    double mean = 0.0;
    double variance = 0.0;        // population convention (divide by n)
    double threshold_prob = 0.0;  // fraction with |d| >= delta
    double chebyshev_bound = 0.0; // variance / delta^2
    double delta = 0.0;
    std::size_t n_samples = 0;
    double max_abs = 0.0;
    double median_abs = 0.0;
};

/// Moments and tail statistics. Reductions run in sample-index order, so the
/// result depends only on the samples, not on how they were produced.
StatsSummary summarize(const DerivativeSampleSet& set, double delta);
StatsSummary summarize(std::span<const double> samples, double delta);

struct SlopeFit {
    double slope = 0.0;     // d ln(value) / dN
    double intercept = 0.0; // ln(value) at N = 0
    double r_squared = 0.0;
    std::vector<std::pair<double, double>> points;
};

/// OLS of ln(value) on N. Throws NumericalError on a nonpositive value and
/// std::invalid_argument on fewer than two points or a single distinct N.
/// r_squared is 1 when the log-values are constant.
SlopeFit fit_log_slope(std::span<const std::pair<double, double>> points);

} // namespace bplab
