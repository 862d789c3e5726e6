#include "bplab/classify.hpp"

#include "bplab/rng.hpp"
#include "bplab/sampling.hpp"

#include <algorithm>

namespace bplab {

std::string_view to_string(BpVerdict v) {
    switch (v) {
    case BpVerdict::LocalizedDip: return "LOCALIZED_DIP";
    case BpVerdict::LocalizedGorge: return "LOCALIZED_GORGE";
    case BpVerdict::EverywhereFlat: return "EVERYWHERE_FLAT";
    case BpVerdict::NoPlateau: return "NO_PLATEAU";
    }
    return "?";
}

double tail_ratio(const StatsSummary& s, const ClassifierThresholds& t) {
    return s.max_abs / std::max(s.median_abs, t.machine_floor);
}

namespace {

bool no_plateau(const StatsSummary& s, const ClassifierThresholds& t) { return s.threshold_prob >= t.no_plateau_prob; }

bool localized(const StatsSummary& s, const ClassifierThresholds& t) {
    return !no_plateau(s, t) && tail_ratio(s, t) >= t.tail_ratio;
}

} // namespace

BpClassification classify_landscape(const StatsSummary& primary, const std::optional<StatsSummary>& second,
                                    const ClassifierThresholds& thresholds) {
    BpClassification out;
    out.evidence.primary = primary;
    out.evidence.primary_tail_ratio = tail_ratio(primary, thresholds);
    if (second) {
        out.evidence.second = second;
        out.evidence.second_tail_ratio = tail_ratio(*second, thresholds);
    }

    if (no_plateau(primary, thresholds)) {
        out.verdict = BpVerdict::NoPlateau;
    } else if (out.evidence.primary_tail_ratio >= thresholds.tail_ratio) {
        if (!second) {
            throw IndistinguishableWithoutSecondDirection(
                "localized plateau signature: dip and gorge are indistinguishable without a second direction");
        }
        out.verdict = localized(*second, thresholds) ? BpVerdict::LocalizedDip : BpVerdict::LocalizedGorge;
    } else {
        out.verdict = BpVerdict::EverywhereFlat;
    }
    return out;
}

std::vector<BpClassification> classify_scan(std::span<const StatsSummary> primary, std::span<const StatsSummary> second,
                                            const ClassifierThresholds& thresholds) {
    if (primary.empty()) throw std::invalid_argument("classification scan is empty");
    if (!second.empty() && second.size() != primary.size()) {
        throw std::invalid_argument("second-direction scan must match the primary scan");
    }
    std::vector<BpClassification> out;
    out.reserve(primary.size());
    for (std::size_t i = 0; i < primary.size(); ++i) {
        std::optional<StatsSummary> s2;
        if (!second.empty()) s2 = second[i];
        out.push_back(classify_landscape(primary[i], s2, thresholds));
    }
    return out;
}

BpClassification classify_toy(const GaussianModel& model, const ToyClassifyOptions& options) {
    const auto primary_set = sample_toy_derivatives(model, Axis::X, options.n_samples, options.halfwidth,
                                                    derive_seed(options.master_seed, "toy-primary", 0));
    const StatsSummary primary = summarize(primary_set, options.delta);
    const auto slice_set = sample_toy_slice(model, Axis::Y, *primary_set.anchor, options.n_samples, options.halfwidth,
                                            derive_seed(options.master_seed, "toy-slice", 0));
    const StatsSummary second = summarize(slice_set, options.delta);
    return classify_landscape(primary, second, options.thresholds);
}

} // namespace bplab
