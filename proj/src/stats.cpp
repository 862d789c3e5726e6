#include "bplab/stats.hpp"

#include "bplab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bplab {

void validate_samples(const DerivativeSampleSet& set) {
    if (set.samples.empty()) throw std::invalid_argument("empty derivative sample set");
    for (double v : set.samples) {
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite derivative sample in '" + set.config_label + "'");
    }
}

StatsSummary summarize(std::span<const double> samples, double delta) {
    if (samples.empty()) throw std::invalid_argument("cannot summarize an empty sample set");
    if (!(delta > 0.0)) throw std::invalid_argument("threshold delta must be > 0");

    const double n = static_cast<double>(samples.size());
    double sum = 0.0;
    for (double v : samples) {
        if (!std::isfinite(v)) throw std::invalid_argument("sample set holds a non-finite value");
        sum += v;
    }
    const double mean = sum / n;

    double ss = 0.0;
    std::size_t exceed = 0;
    double max_abs = 0.0;
    std::vector<double> abs_values;
    abs_values.reserve(samples.size());
    for (double v : samples) {
        const double d = v - mean;
        ss += d * d;
        const double a = std::abs(v);
        if (a >= delta) ++exceed;
        max_abs = std::max(max_abs, a);
        abs_values.push_back(a);
    }

    const std::size_t mid = abs_values.size() / 2;
    std::nth_element(abs_values.begin(), abs_values.begin() + static_cast<std::ptrdiff_t>(mid), abs_values.end());
    double median = abs_values[mid];
    if (abs_values.size() % 2 == 0) {
        const double below = *std::max_element(abs_values.begin(), abs_values.begin() + static_cast<std::ptrdiff_t>(mid));
        median = 0.5 * (median + below);
    }

    StatsSummary s;
    s.mean = mean;
    s.variance = ss / n;
    s.threshold_prob = static_cast<double>(exceed) / n;
    s.chebyshev_bound = s.variance / (delta * delta);
    s.delta = delta;
    s.n_samples = samples.size();
    s.max_abs = max_abs;
    s.median_abs = median;
    return s;
}

StatsSummary summarize(const DerivativeSampleSet& set, double delta) {
    validate_samples(set);
    return summarize(std::span<const double>(set.samples), delta);
}

SlopeFit fit_log_slope(std::span<const std::pair<double, double>> points) {
    if (points.size() < 2) throw std::invalid_argument("slope fit needs at least two points");
    SlopeFit fit;
    fit.points.assign(points.begin(), points.end());

    double mean_n = 0.0;
    double mean_y = 0.0;
    std::vector<double> logs;
    logs.reserve(points.size());
    for (const auto& [n, v] : points) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw NumericalError("slope fit needs strictly positive values; got " + std::to_string(v) + " at N=" +
                                 std::to_string(n));
        }
        logs.push_back(std::log(v));
        mean_n += n;
    }
    const double count = static_cast<double>(points.size());
    mean_n /= count;
    for (double y : logs) mean_y += y;
    mean_y /= count;

    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double dx = points[i].first - mean_n;
        const double dy = logs[i] - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) throw std::invalid_argument("slope fit needs at least two distinct N values");

    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_n;
    if (syy == 0.0) {
        fit.r_squared = 1.0;
    } else {
        double ss_res = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const double r = logs[i] - (fit.intercept + fit.slope * points[i].first);
            ss_res += r * r;
        }
        fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    }
    return fit;
}

} // namespace bplab
