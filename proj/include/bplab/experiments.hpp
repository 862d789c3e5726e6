#pragma once

#include "bplab/circuit.hpp"
#include "bplab/classify.hpp"
#include "bplab/stats.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace bplab {

inline constexpr int kManifestSchemaVersion = 1;
inline constexpr int kResultSchemaVersion = 1;

/// Column layout of the per-configuration statistics CSV.
inline constexpr std::string_view kStatsCsvSchema = "stats-v1";
std::vector<std::string> stats_csv_columns();

const std::vector<std::string>& experiment_names();

/// Every key an experiment reads, with its default. Throws ConfigError for an unknown experiment.
nlohmann::json default_parameters(std::string_view experiment);

/**
 * defaults <- file <- overrides, key by key. Unknown keys and values of the
 * wrong kind raise ConfigError. Derived values (a sigma grid built from its
 * bounds, for instance) are materialized so the result holds no hidden defaults.
 */
nlohmann::json resolve_parameters(std::string_view experiment, const nlohmann::json& file,
                                  const nlohmann::json& overrides);

/// 16 hex digits of FNV-1a over the experiment name and the resolved parameters.
std::string config_hash(std::string_view experiment, const nlohmann::json& resolved);

struct RunOptions {
    std::filesystem::path output_dir = ".";
    std::size_t workers = 1;
};

struct RunResult {
    std::string hash;
    std::vector<std::filesystem::path> files;
    nlohmann::json results;
};

/// Runs one experiment on already-resolved parameters and writes its artifacts.
RunResult run_experiment(std::string_view experiment, const nlohmann::json& resolved, const RunOptions& options);

/// n points geometrically spaced over [lo, hi], endpoints exact.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

/// Master seed of the VQE sample set at (N, L, slot); shared by every experiment
/// so the same point is the same sample set wherever it appears.
std::uint64_t vqe_point_seed(std::uint64_t master, std::size_t n_qubits, std::size_t layers, std::size_t slot);

struct VqePoint {
    std::size_t n_qubits = 0;
    std::size_t layers = 0;
    std::size_t slot = 0;
    DerivativeSampleSet set;
    StatsSummary stats;
};

VqePoint sample_vqe_point(AnsatzFamily family, std::size_t n_qubits, std::size_t layers, std::size_t slot,
                          std::size_t n_samples, double delta, std::uint64_t master, std::string_view observable,
                          std::size_t workers);

/// First N (ascending) whose threshold_prob is exactly 0, if any.
std::optional<std::size_t> first_zero_prob(const std::vector<VqePoint>& points);

/// Trend summary of a curve sampled on an ordered grid, used for depth scans.
struct TrendSummary {
    std::vector<double> block_means;  // four consecutive quarter blocks
    double last_quarter_change = 0.0; // |fitted change across the last quarter| / its mean
    double saturation = 0.0;          // mean over the last quarter
};

/// Splits `values` into four near-equal consecutive blocks (at least 4 values required).
TrendSummary summarize_trend(std::span<const double> grid, std::span<const double> values);

} // namespace bplab
