#pragma once

#include "bplab/gaussian.hpp"
#include "bplab/stats.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace bplab {

enum class BpVerdict { LocalizedDip, LocalizedGorge, EverywhereFlat, NoPlateau };

std::string_view to_string(BpVerdict v);

/// Decision thresholds. Tuned on the three isotropic Gaussian regimes
/// (sigma = 0.01, 1, 100 on [-20, 20]^2 at delta = 0.01).
struct ClassifierThresholds {
    /// threshold_prob at or above this means gradients are not suppressed.
    double no_plateau_prob = 0.01;
    /// max|d| / median|d| at or above this means rare large derivatives survive a collapsed bulk.
    double tail_ratio = 1e3;
    /// Floor for the median in the tail ratio (medians can underflow to 0).
    double machine_floor = std::numeric_limits<double>::min();
};

/// Raw evidence behind a verdict.
struct ClassificationEvidence {
    StatsSummary primary;
    double primary_tail_ratio = 0.0;
    std::optional<StatsSummary> second;
    std::optional<double> second_tail_ratio;
};

struct BpClassification {
    BpVerdict verdict = BpVerdict::NoPlateau;
    ClassificationEvidence evidence;
};

/// Raised when the primary direction shows a localized signature and no
/// second direction was supplied to tell a dip from a gorge.
class IndistinguishableWithoutSecondDirection : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

double tail_ratio(const StatsSummary& s, const ClassifierThresholds& t = {});

/**
 * 1. threshold_prob >= no_plateau_prob                      -> NoPlateau
 * 2. tail ratio >= tail_ratio: localized; the second direction decides:
 *    second also localized (fails 1, passes 2)              -> LocalizedDip
 *    otherwise                                              -> LocalizedGorge
 * 3. otherwise                                              -> EverywhereFlat
 */
BpClassification classify_landscape(const StatsSummary& primary, const std::optional<StatsSummary>& second,
                                    const ClassifierThresholds& thresholds = {});

/// Point-wise classification of a scan; `second`, when given, must match `primary` in length.
std::vector<BpClassification> classify_scan(std::span<const StatsSummary> primary,
                                            std::span<const StatsSummary> second = {},
                                            const ClassifierThresholds& thresholds = {});

struct ToyClassifyOptions {
    double delta = 0.01;
    std::size_t n_samples = 100000;
    double halfwidth = 20.0;
    std::uint64_t master_seed = 0;
    ClassifierThresholds thresholds{};
};

/**
 * Samples d/dx over the square, then d/dy along the line x = x* through the
 * lowest-cost sample, and classifies. A dip stays contracted along that line;
 * a gorge floor does not.
 */
BpClassification classify_toy(const GaussianModel& model, const ToyClassifyOptions& options);

} // namespace bplab
