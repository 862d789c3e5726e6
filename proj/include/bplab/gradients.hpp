#pragma once

#include "bplab/circuit.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace bplab {

/// dC/dtheta_i for every slot of one circuit at one point (signed, cost per radian).
struct GradientVector {
    std::vector<double> values;
    const Circuit* circuit = nullptr;
    std::vector<double> params;
};

/// [C(theta + pi/2 e_i) - C(theta - pi/2 e_i)] / 2; exact for exp(-i theta/2 P) gates.
double parameter_shift(const Circuit& circuit, std::span<const double> params, const PauliObservable& obs,
                       std::size_t index);

/// Central difference [C(theta + h e_i) - C(theta - h e_i)] / (2h). Test oracle only.
double finite_difference(const Circuit& circuit, std::span<const double> params, const PauliObservable& obs,
                         std::size_t index, double step);

GradientVector full_gradient(const Circuit& circuit, std::span<const double> params, const PauliObservable& obs);

/**
 * Per-worker scratch space for parameter-shift gradients of one
 * (circuit, observable) pair. `gradient` walks the circuit once, branching
 * the two shifted evaluations off the running prefix state at each
 * parameterized gate, so the prefix is never recomputed.
 */
class GradientWorkspace {
  public:
    GradientWorkspace(const Circuit& circuit, const PauliObservable& obs);

    /// Single slot; two cost evaluations.
    double partial(std::span<const double> params, std::size_t index);

    /// All slots, written into `out` (size param_count).
    void gradient(std::span<const double> params, std::span<double> out);

    [[nodiscard]] const Circuit& circuit() const noexcept { return *circuit_; }

  private:
    double shifted_suffix(std::size_t gate_index, double angle);

    const Circuit* circuit_;
    const PauliObservable* obs_;
    std::span<const double> params_;
    StateVector running_;
    StateVector branch_;
    std::vector<double> shifted_;
    CostEvaluator evaluator_;
};

} // namespace bplab
