#include "bplab/state_vector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace bplab {

std::string_view to_string(GateKind kind) {
    switch (kind) {
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::CZ: return "CZ";
    }
    return "?";
}

GateKind gate_kind_from_string(std::string_view name) {
    if (name == "RX") return GateKind::RX;
    if (name == "RY") return GateKind::RY;
    if (name == "RZ") return GateKind::RZ;
    if (name == "CZ") return GateKind::CZ;
    throw std::invalid_argument("unknown gate kind '" + std::string(name) + "'");
}

Gate Gate::rotation(GateKind kind, std::size_t qubit, std::size_t slot) {
    Gate g;
    g.kind = kind;
    g.target = qubit;
    g.control = qubit;
    g.param_slot = slot;
    return g;
}

Gate Gate::fixed_rotation(GateKind kind, std::size_t qubit, double angle) {
    Gate g;
    g.kind = kind;
    g.target = qubit;
    g.control = qubit;
    g.fixed_angle = angle;
    return g;
}

Gate Gate::cz(std::size_t a, std::size_t b) {
    Gate g;
    g.kind = GateKind::CZ;
    g.target = a;
    g.control = b;
    return g;
}

void validate_gate(const Gate& gate, std::size_t n_qubits) {
    if (gate.target >= n_qubits) {
        throw std::invalid_argument("gate target " + std::to_string(gate.target) + " out of range for " +
                                    std::to_string(n_qubits) + " qubits");
    }
    if (gate.kind == GateKind::CZ) {
        if (gate.control >= n_qubits) {
            throw std::invalid_argument("CZ qubit " + std::to_string(gate.control) + " out of range");
        }
        if (gate.control == gate.target) throw std::invalid_argument("CZ targets must be distinct");
        if (gate.param_slot || gate.fixed_angle) {
            throw std::invalid_argument("CZ takes neither a parameter slot nor a fixed angle");
        }
        return;
    }
    if (gate.param_slot.has_value() == gate.fixed_angle.has_value()) {
        throw std::invalid_argument("rotation needs exactly one of parameter slot / fixed angle");
    }
}

StateVector::StateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("n_qubits must be in [1, " + std::to_string(kMaxQubits) + "], got " +
                                    std::to_string(n_qubits));
    }
    amps_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) throw std::invalid_argument("n_qubits out of range");
    if (amps_.size() != (std::size_t{1} << n_qubits)) {
        throw std::invalid_argument("amplitude count must be 2^n_qubits");
    }
}

double StateVector::norm_squared() const noexcept {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
}

void StateVector::reset() {
    std::fill(amps_.begin(), amps_.end(), Complex{0.0, 0.0});
    amps_[0] = 1.0;
}

namespace {

// Calls `kernel(a0, a1)` on every amplitude pair that differs only in bit `qubit`.
template <typename Kernel>
inline void for_each_pair(std::vector<Complex>& amps, std::size_t qubit, Kernel&& kernel) {
    const std::size_t stride = std::size_t{1} << qubit;
    const std::size_t dim = amps.size();
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t i = base; i < base + stride; ++i) {
            kernel(amps[i], amps[i + stride]);
        }
    }
}

} // namespace

void StateVector::apply_rx(std::size_t qubit, double theta) noexcept {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    // [[c, -is], [-is, c]]
    for_each_pair(amps_, qubit, [c, s](Complex& a0, Complex& a1) {
        const Complex v0 = a0;
        const Complex v1 = a1;
        a0 = {c * v0.real() + s * v1.imag(), c * v0.imag() - s * v1.real()};
        a1 = {c * v1.real() + s * v0.imag(), c * v1.imag() - s * v0.real()};
    });
}

void StateVector::apply_ry(std::size_t qubit, double theta) noexcept {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    // [[c, -s], [s, c]]
    for_each_pair(amps_, qubit, [c, s](Complex& a0, Complex& a1) {
        const Complex v0 = a0;
        const Complex v1 = a1;
        a0 = c * v0 - s * v1;
        a1 = s * v0 + c * v1;
    });
}

void StateVector::apply_rz(std::size_t qubit, double theta) noexcept {
    const Complex lo = std::polar(1.0, -theta / 2);
    const Complex hi = std::polar(1.0, theta / 2);
    for_each_pair(amps_, qubit, [lo, hi](Complex& a0, Complex& a1) {
        a0 *= lo;
        a1 *= hi;
    });
}

void StateVector::apply_cz(std::size_t a, std::size_t b) noexcept {
    const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & mask) == mask) amps_[i] = -amps_[i];
    }
}

void StateVector::apply_rotation(GateKind kind, std::size_t qubit, double theta) {
    switch (kind) {
    case GateKind::RX: apply_rx(qubit, theta); return;
    case GateKind::RY: apply_ry(qubit, theta); return;
    case GateKind::RZ: apply_rz(qubit, theta); return;
    case GateKind::CZ: break;
    }
    throw std::invalid_argument("apply_rotation called with CZ");
}

void StateVector::apply(const Gate& gate, std::optional<double> angle) {
    validate_gate(gate, n_qubits_);
    if (gate.kind == GateKind::CZ) {
        if (angle) throw std::invalid_argument("CZ takes no angle");
        apply_cz(gate.target, gate.control);
        return;
    }
    if (gate.param_slot) {
        if (!angle) throw std::invalid_argument("parameterized gate requires an angle");
        apply_rotation(gate.kind, gate.target, *angle);
    } else {
        if (angle) throw std::invalid_argument("fixed-angle gate takes no external angle");
        apply_rotation(gate.kind, gate.target, *gate.fixed_angle);
    }
}

StateVector init_zero_state(std::size_t n_qubits) { return StateVector(n_qubits); }

StateVector apply_gate(StateVector state, const Gate& gate, std::optional<double> angle) {
    state.apply(gate, angle);
    return state;
}

} // namespace bplab
