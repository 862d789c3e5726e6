#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace bplab {

using Complex = std::complex<double>;

/// Largest register the dense simulator accepts (2^20 amplitudes, 16 MiB).
inline constexpr std::size_t kMaxQubits = 20;

enum class GateKind { RX, RY, RZ, CZ };

std::string_view to_string(GateKind kind);
GateKind gate_kind_from_string(std::string_view name);

/**
 * A single gate of a circuit. Rotations R_P(theta) = exp(-i theta/2 P) carry
 * either a parameter slot (angle read from the parameter vector) or a fixed
 * angle, never both. CZ carries neither.
 */
struct Gate {
    GateKind kind = GateKind::RY;
    std::size_t target = 0;
    std::size_t control = 0; // second qubit; only meaningful for CZ
    std::optional<std::size_t> param_slot;
    std::optional<double> fixed_angle;

    static Gate rotation(GateKind kind, std::size_t qubit, std::size_t slot);
    static Gate fixed_rotation(GateKind kind, std::size_t qubit, double angle);
    static Gate cz(std::size_t a, std::size_t b);

    [[nodiscard]] bool is_rotation() const noexcept { return kind != GateKind::CZ; }

    friend bool operator==(const Gate&, const Gate&) = default;
};

/// Throws std::invalid_argument if the gate violates its shape invariants for
/// an n-qubit register.
void validate_gate(const Gate& gate, std::size_t n_qubits);

/**
 * Dense amplitude vector over 2^n computational basis states. Qubit 0 is the
 * least significant bit of the basis index.
 */
class StateVector {
  public:
    explicit StateVector(std::size_t n_qubits);
    StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes);

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const noexcept { return amps_; }
    [[nodiscard]] std::span<Complex> amplitudes() noexcept { return amps_; }
    [[nodiscard]] const Complex& operator[](std::size_t i) const { return amps_[i]; }
    [[nodiscard]] Complex& operator[](std::size_t i) { return amps_[i]; }

    [[nodiscard]] double norm_squared() const noexcept;

    /// Resets to |0...0> without reallocating.
    void reset();

    /// In-place gate application. `angle` must be present iff the gate has a
    /// parameter slot.
    void apply(const Gate& gate, std::optional<double> angle = std::nullopt);

    void apply_rx(std::size_t qubit, double theta) noexcept;
    void apply_ry(std::size_t qubit, double theta) noexcept;
    void apply_rz(std::size_t qubit, double theta) noexcept;
    void apply_cz(std::size_t a, std::size_t b) noexcept;

    /// Rotation about the given axis; `kind` must not be CZ.
    void apply_rotation(GateKind kind, std::size_t qubit, double theta);

  private:
    std::size_t n_qubits_;
    std::vector<Complex> amps_;
};

StateVector init_zero_state(std::size_t n_qubits);

/// Value-returning form of StateVector::apply.
StateVector apply_gate(StateVector state, const Gate& gate, std::optional<double> angle = std::nullopt);

} // namespace bplab
