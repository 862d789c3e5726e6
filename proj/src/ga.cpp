#include "bplab/ga.hpp"

#include "bplab/gradients.hpp"
#include "bplab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace bplab {

void validate(const GaConfig& c) {
    if (c.n_qubits < 1 || c.n_qubits > kMaxQubits) throw std::invalid_argument("GA n_qubits out of range");
    if (c.layers < 1) throw std::invalid_argument("GA layers must be >= 1");
    if (c.population_size < 2) throw std::invalid_argument("GA population_size must be >= 2");
    if (c.generations < 1) throw std::invalid_argument("GA generations must be >= 1");
    if (!(c.mutation_rate >= 0.0 && c.mutation_rate <= 1.0)) throw std::invalid_argument("mutation_rate must be in [0, 1]");
    if (!(c.p >= 1.0)) throw std::invalid_argument("norm order p must be >= 1");
    if (!(c.epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
    if (c.theta_samples_per_eval < 1) throw std::invalid_argument("theta_samples_per_eval must be >= 1");
    if (c.plateau_window < 1) throw std::invalid_argument("plateau_window must be >= 1");
}

double lp_norm(std::span<const double> gradient, double p) {
    double acc = 0.0;
    if (p == 1.0) {
        for (double g : gradient) acc += std::abs(g);
        return acc;
    }
    for (double g : gradient) acc += std::pow(std::abs(g), p);
    return std::pow(acc, 1.0 / p);
}

FitnessEvaluation fitness(const RpaStructure& structure, const GaConfig& config, const PauliObservable& obs,
                          std::uint64_t eval_seed) {
    if (structure.layers() != config.layers || structure.n_qubits() != config.n_qubits) {
        throw std::invalid_argument("structure shape does not match GA config");
    }
    const Circuit circuit = build_rpa(structure);
    GradientWorkspace ws(circuit, obs);
    const std::size_t d = circuit.param_count;

    FitnessEvaluation out;
    out.n_theta = config.theta_samples_per_eval;
    out.n_params = d;
    out.abs_gradients.resize(out.n_theta * d);
    out.min_abs_gradient = std::numeric_limits<double>::infinity();

    std::vector<double> theta(d);
    double total = 0.0;
    for (std::size_t s = 0; s < out.n_theta; ++s) {
        Rng rng = make_stream(eval_seed, s);
        draw_angles(rng, theta);
        const std::span<double> row(out.abs_gradients.data() + s * d, d);
        ws.gradient(theta, row);
        for (double& g : row) {
            g = std::abs(g);
            out.min_abs_gradient = std::min(out.min_abs_gradient, g);
        }
        total += lp_norm(row, config.p);
    }
    out.fitness = total / static_cast<double>(out.n_theta);
    out.constraint_ok = out.min_abs_gradient >= config.epsilon;
    return out;
}

std::pair<std::size_t, std::size_t> select_parents(std::span<const double> fitnesses) {
    if (fitnesses.size() < 2) throw std::invalid_argument("selection needs a population of at least 2");
    std::size_t first = 0;
    for (std::size_t i = 1; i < fitnesses.size(); ++i) {
        if (fitnesses[i] > fitnesses[first]) first = i;
    }
    std::size_t second = first == 0 ? 1 : 0;
    for (std::size_t i = 0; i < fitnesses.size(); ++i) {
        if (i != first && fitnesses[i] > fitnesses[second]) second = i;
    }
    return {first, second};
}

std::pair<std::size_t, std::size_t> select_parents(std::span<const Individual> population) {
    std::vector<double> f;
    f.reserve(population.size());
    for (const auto& ind : population) f.push_back(ind.fitness);
    return select_parents(f);
}

RpaStructure crossover_at(const RpaStructure& a, const RpaStructure& b, std::size_t cut) {
    if (a.layers() != b.layers() || a.n_qubits() != b.n_qubits()) {
        throw std::invalid_argument("crossover parents have different shapes");
    }
    if (cut > a.layers()) throw std::invalid_argument("crossover cut beyond last layer");
    std::vector<Pauli> child(a.flat().begin(), a.flat().end());
    std::copy(b.flat().begin() + static_cast<std::ptrdiff_t>(cut * b.n_qubits()), b.flat().end(),
              child.begin() + static_cast<std::ptrdiff_t>(cut * a.n_qubits()));
    return RpaStructure(a.layers(), a.n_qubits(), std::move(child));
}

RpaStructure crossover(const RpaStructure& a, const RpaStructure& b, std::uint64_t seed) {
    if (a.layers() != b.layers() || a.n_qubits() != b.n_qubits()) {
        throw std::invalid_argument("crossover parents have different shapes");
    }
    if (a.layers() < 2) return a;
    Rng rng(seed);
    std::uniform_int_distribution<std::size_t> cut(1, a.layers() - 1);
    return crossover_at(a, b, cut(rng));
}

RpaStructure mutate(const RpaStructure& s, double rate, std::uint64_t seed) {
    if (!(rate >= 0.0 && rate <= 1.0)) throw std::invalid_argument("mutation rate must be in [0, 1]");
    Rng rng(seed);
    std::bernoulli_distribution flip(rate);
    std::uniform_int_distribution<int> other(1, 2);
    std::vector<Pauli> out(s.flat().begin(), s.flat().end());
    for (auto& p : out) {
        if (flip(rng)) p = static_cast<Pauli>((static_cast<int>(p) + other(rng)) % 3);
    }
    return RpaStructure(s.layers(), s.n_qubits(), std::move(out));
}

namespace {

void evaluate(std::vector<Individual>& pop, std::size_t from, const GaConfig& config, const PauliObservable& obs,
              std::uint64_t eval_seed) {
    parallel_for(
        pop.size() - from, config.workers, [] { return 0; },
        [&](int&, std::size_t k) {
            Individual& ind = pop[from + k];
            const FitnessEvaluation e = fitness(ind.structure, config, obs, eval_seed);
            ind.fitness = e.fitness;
            ind.constraint_ok = e.constraint_ok;
            ind.min_abs_gradient = e.min_abs_gradient;
            ind.eval_seed = eval_seed;
        });
}

std::size_t fittest(const std::vector<Individual>& pop) { return select_parents(std::span<const Individual>(pop)).first; }

} // namespace

GaResult evolve(const GaConfig& config, const PauliObservable& obs) {
    validate(config);
    if (obs.min_qubits() > config.n_qubits) throw std::invalid_argument("observable addresses qubits outside the register");
    const std::size_t pop_size = config.population_size;
    const std::uint64_t seed = config.master_seed;

    // One theta-sample set for the whole run: the elite's recorded fitness stays
    // comparable with every later child (fresh sets per generation let a lucky
    // draw lock the elite in place).
    const std::uint64_t eval_seed = derive_seed(seed, "ga-eval", 0);
    std::vector<Individual> pop(pop_size);
    for (std::size_t i = 0; i < pop_size; ++i) {
        pop[i].structure = RpaStructure::random(config.layers, config.n_qubits, derive_seed(seed, "ga-init", i));
    }
    evaluate(pop, 0, config, obs, eval_seed);

    GaResult result;
    for (std::size_t g = 0; g < config.generations; ++g) {
        if (g > 0) {
            const auto [pa, pb] = select_parents(std::span<const Individual>(pop));
            std::vector<Individual> next;
            next.reserve(pop_size);
            next.push_back(pop[pa]); // elite keeps its recorded fitness
            for (std::size_t k = 1; k < pop_size; ++k) {
                const std::uint64_t tag = g * pop_size + k;
                Individual child;
                child.structure = mutate(crossover(pop[pa].structure, pop[pb].structure, derive_seed(seed, "ga-cross", tag)),
                                         config.mutation_rate, derive_seed(seed, "ga-mutate", tag));
                next.push_back(std::move(child));
            }
            evaluate(next, 1, config, obs, eval_seed);
            pop = std::move(next);
        }

        const Individual& best = pop[fittest(pop)];
        result.best_per_generation.push_back(best);
        result.fitness_history.push_back(best.fitness);

        if (best.constraint_ok && g >= config.plateau_window) {
            const double then = result.fitness_history[g - config.plateau_window];
            if (best.fitness - then <= config.plateau_tolerance * std::abs(then)) {
                result.stopped_early = g + 1 < config.generations;
                break;
            }
        }
    }
    result.best = result.best_per_generation.back();
    result.final_circuit = build_rpa(result.best.structure);
    return result;
}

double average_abs_gradient(const RpaStructure& structure, const PauliObservable& obs, std::size_t n_theta,
                            std::uint64_t seed) {
    if (n_theta < 1) throw std::invalid_argument("need at least one theta sample");
    const Circuit circuit = build_rpa(structure);
    GradientWorkspace ws(circuit, obs);
    std::vector<double> theta(circuit.param_count);
    std::vector<double> grad(circuit.param_count);
    double total = 0.0;
    for (std::size_t s = 0; s < n_theta; ++s) {
        Rng rng = make_stream(seed, s);
        draw_angles(rng, theta);
        ws.gradient(theta, grad);
        for (double g : grad) total += std::abs(g);
    }
    return total / static_cast<double>(n_theta * circuit.param_count);
}

double average_abs_gradient_random_rpa(std::size_t n_qubits, std::size_t layers, const PauliObservable& obs,
                                       std::size_t n_samples, std::uint64_t seed) {
    if (n_samples < 1) throw std::invalid_argument("need at least one sample");
    const std::size_t d = n_qubits * layers;
    std::vector<double> theta(d);
    std::vector<double> grad(d);
    double total = 0.0;
    for (std::size_t s = 0; s < n_samples; ++s) {
        Rng rng = make_stream(seed, s);
        const Circuit c = build_rpa(n_qubits, layers, rng());
        draw_angles(rng, theta);
        GradientWorkspace ws(c, obs);
        ws.gradient(theta, grad);
        for (double g : grad) total += std::abs(g);
    }
    return total / static_cast<double>(n_samples * d);
}

nlohmann::json to_json(const GaConfig& c) {
    return {
        {"n_qubits", c.n_qubits},
        {"layers", c.layers},
        {"population_size", c.population_size},
        {"generations", c.generations},
        {"mutation_rate", c.mutation_rate},
        {"p", c.p},
        {"epsilon", c.epsilon},
        {"theta_samples_per_eval", c.theta_samples_per_eval},
        {"master_seed", c.master_seed},
        {"plateau_window", c.plateau_window},
        {"plateau_tolerance", c.plateau_tolerance},
    };
}

nlohmann::json ga_result_to_json(const GaConfig& config, const GaResult& result) {
    nlohmann::json per_gen = nlohmann::json::array();
    for (std::size_t g = 0; g < result.best_per_generation.size(); ++g) {
        const auto& ind = result.best_per_generation[g];
        per_gen.push_back({{"generation", g},
                           {"fitness", ind.fitness},
                           {"constraint_ok", ind.constraint_ok},
                           {"min_abs_gradient", ind.min_abs_gradient},
                           {"eval_seed", ind.eval_seed}});
    }
    return {
        {"schema_version", kGaSchemaVersion},
        {"config", to_json(config)},
        {"fitness_history", result.fitness_history},
        {"best_per_generation", per_gen},
        {"stopped_early", result.stopped_early},
        {"best",
         {{"fitness", result.best.fitness},
          {"constraint_ok", result.best.constraint_ok},
          {"min_abs_gradient", result.best.min_abs_gradient},
          {"eval_seed", result.best.eval_seed},
          {"structure", result.best.structure.to_rows()}}},
        {"final_circuit", circuit_to_json(result.final_circuit)},
    };
}

} // namespace bplab
