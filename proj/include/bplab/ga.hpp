#pragma once

#include "bplab/circuit.hpp"
#include "bplab/parallel.hpp"

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include <json.hpp>

namespace bplab {

struct GaConfig {
    std::size_t n_qubits = 4;
    std::size_t layers = 20;
    std::size_t population_size = 20;
    std::size_t generations = 200;
    double mutation_rate = 0.05;
    double p = 1.0;
    double epsilon = 0.05;
    std::size_t theta_samples_per_eval = 20;
    std::uint64_t master_seed = 0;
    /// Early stop: best is feasible and improved by less than plateau_tolerance
    /// (relative) over the last plateau_window generations.
    std::size_t plateau_window = 10;
    double plateau_tolerance = 1e-3;
    std::size_t workers = 1;
};

/// Throws std::invalid_argument on out-of-range fields.
void validate(const GaConfig& config);

struct Individual {
    RpaStructure structure;
    double fitness = 0.0;
    bool constraint_ok = false;
    double min_abs_gradient = 0.0;
    std::uint64_t eval_seed = 0;
};

struct FitnessEvaluation {
    double fitness = 0.0;
    bool constraint_ok = false;
    double min_abs_gradient = 0.0;
    std::size_t n_theta = 0;
    std::size_t n_params = 0;
    std::vector<double> abs_gradients; // n_theta x n_params, row-major
};

/// (sum_i |g_i|^p)^(1/p).
double lp_norm(std::span<const double> gradient, double p);

/**
 * Mean over theta-samples (uniform on [0, 2 pi)^d, stream `eval_seed`) of the
 * L^p norm of the gradient. constraint_ok iff every sampled |dC/dtheta_i| >= epsilon.
 */
FitnessEvaluation fitness(const RpaStructure& structure, const GaConfig& config, const PauliObservable& obs,
                          std::uint64_t eval_seed);

/// Indices of the two fittest individuals, highest first; ties go to the lower index.
std::pair<std::size_t, std::size_t> select_parents(std::span<const double> fitnesses);
std::pair<std::size_t, std::size_t> select_parents(std::span<const Individual> population);

/// Layers [0, cut) from a, [cut, L) from b.
RpaStructure crossover_at(const RpaStructure& a, const RpaStructure& b, std::size_t cut);

/// Single-point layer crossover with cut uniform in {1, ..., L-1}; a copy of `a` when L = 1.
RpaStructure crossover(const RpaStructure& a, const RpaStructure& b, std::uint64_t seed);

/// Each entry, with probability `rate`, becomes one of the two other labels (uniformly).
RpaStructure mutate(const RpaStructure& s, double rate, std::uint64_t seed);

struct GaResult {
    std::vector<Individual> best_per_generation;
    std::vector<double> fitness_history;
    Individual best;
    Circuit final_circuit;
    bool stopped_early = false;
};

/**
 * Steady-state GA with elitism: each generation keeps the best individual
 * (with its recorded fitness) and refills the population with mutated
 * crossovers of the two fittest. fitness_history is nondecreasing.
 */
GaResult evolve(const GaConfig& config, const PauliObservable& obs);

/// Mean of |dC/dtheta_i| over slots and n_theta samples for one structure.
double average_abs_gradient(const RpaStructure& structure, const PauliObservable& obs, std::size_t n_theta,
                            std::uint64_t seed);

/// Same average for unoptimized RPAs: every sample draws fresh axes and angles.
double average_abs_gradient_random_rpa(std::size_t n_qubits, std::size_t layers, const PauliObservable& obs,
                                       std::size_t n_samples, std::uint64_t seed);

inline constexpr int kGaSchemaVersion = 1;

nlohmann::json to_json(const GaConfig& config);
nlohmann::json ga_result_to_json(const GaConfig& config, const GaResult& result);

} // namespace bplab
