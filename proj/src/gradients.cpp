#include "bplab/gradients.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace bplab {

namespace {

void check_index(const Circuit& circuit, std::size_t index) {
    if (index >= circuit.param_count) {
        throw std::out_of_range("parameter index " + std::to_string(index) + " >= param_count " +
                                std::to_string(circuit.param_count));
    }
}

void apply_one(StateVector& psi, const Gate& g, std::span<const double> params) {
    if (g.kind == GateKind::CZ) {
        psi.apply_cz(g.target, g.control);
    } else {
        psi.apply_rotation(g.kind, g.target, g.param_slot ? params[*g.param_slot] : *g.fixed_angle);
    }
}

} // namespace

double parameter_shift(const Circuit& circuit, std::span<const double> params, const PauliObservable& obs,
                       std::size_t index) {
    GradientWorkspace ws(circuit, obs);
    return ws.partial(params, index);
}

double finite_difference(const Circuit& circuit, std::span<const double> params, const PauliObservable& obs,
                         std::size_t index, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("finite-difference step must be > 0");
    check_index(circuit, index);
    std::vector<double> shifted(params.begin(), params.end());
    CostEvaluator eval(circuit, obs);
    shifted[index] = params[index] + step;
    const double plus = eval(shifted);
    shifted[index] = params[index] - step;
    const double minus = eval(shifted);
    return (plus - minus) / (2 * step);
}

GradientVector full_gradient(const Circuit& circuit, std::span<const double> params, const PauliObservable& obs) {
    GradientVector g;
    g.circuit = &circuit;
    g.params.assign(params.begin(), params.end());
    g.values.resize(circuit.param_count);
    if (circuit.param_count == 0) {
        if (!params.empty()) throw std::invalid_argument("parameter vector length mismatch");
        return g;
    }
    GradientWorkspace ws(circuit, obs);
    ws.gradient(params, g.values);
    return g;
}

GradientWorkspace::GradientWorkspace(const Circuit& circuit, const PauliObservable& obs)
    : circuit_(&circuit), obs_(&obs), running_(circuit.n_qubits), branch_(circuit.n_qubits),
      evaluator_(circuit, obs) {}

double GradientWorkspace::partial(std::span<const double> params, std::size_t index) {
    check_index(*circuit_, index);
    if (params.size() != circuit_->param_count) throw std::invalid_argument("parameter vector length mismatch");
    shifted_.assign(params.begin(), params.end());
    constexpr double kShift = std::numbers::pi / 2;
    shifted_[index] = params[index] + kShift;
    const double plus = evaluator_(shifted_);
    shifted_[index] = params[index] - kShift;
    const double minus = evaluator_(shifted_);
    return (plus - minus) / 2;
}

double GradientWorkspace::shifted_suffix(std::size_t gate_index, double angle) {
    const auto& gates = circuit_->gates;
    branch_ = running_;
    branch_.apply_rotation(gates[gate_index].kind, gates[gate_index].target, angle);
    for (std::size_t k = gate_index + 1; k < gates.size(); ++k) apply_one(branch_, gates[k], params_);
    return expectation(branch_, *obs_);
}

void GradientWorkspace::gradient(std::span<const double> params, std::span<double> out) {
    if (params.size() != circuit_->param_count) throw std::invalid_argument("parameter vector length mismatch");
    if (out.size() != circuit_->param_count) throw std::invalid_argument("gradient output length mismatch");
    params_ = params;
    running_.reset();
    constexpr double kShift = std::numbers::pi / 2;
    const auto& gates = circuit_->gates;
    for (std::size_t k = 0; k < gates.size(); ++k) {
        const Gate& g = gates[k];
        if (g.param_slot) {
            const double theta = params[*g.param_slot];
            const double plus = shifted_suffix(k, theta + kShift);
            const double minus = shifted_suffix(k, theta - kShift);
            out[*g.param_slot] = (plus - minus) / 2;
        }
        apply_one(running_, g, params);
    }
}

} // namespace bplab
