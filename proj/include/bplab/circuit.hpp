#pragma once

#include "bplab/pauli.hpp"
#include "bplab/state_vector.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace bplab {

enum class AnsatzFamily { HEA, RPA, CUSTOM };

std::string_view to_string(AnsatzFamily family);
AnsatzFamily ansatz_family_from_string(std::string_view name);

/// Per-layer, per-qubit rotation axes of a random Pauli ansatz (layers x qubits).
class RpaStructure {
  public:
    RpaStructure() = default;
    RpaStructure(std::size_t layers, std::size_t n_qubits, std::vector<Pauli> choices);

    /// Axes drawn i.i.d. uniformly from {X, Y, Z} by a generator seeded with `seed`.
    static RpaStructure random(std::size_t layers, std::size_t n_qubits, std::uint64_t seed);

    [[nodiscard]] std::size_t layers() const noexcept { return layers_; }
    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] Pauli at(std::size_t layer, std::size_t qubit) const { return choices_.at(layer * n_qubits_ + qubit); }
    void set(std::size_t layer, std::size_t qubit, Pauli p) { choices_.at(layer * n_qubits_ + qubit) = p; }
    [[nodiscard]] std::span<const Pauli> row(std::size_t layer) const;
    [[nodiscard]] const std::vector<Pauli>& flat() const noexcept { return choices_; }

    /// One string per layer, e.g. {"XZY", "ZZX"}.
    [[nodiscard]] std::vector<std::string> to_rows() const;
    static RpaStructure from_rows(const std::vector<std::string>& rows);

    friend bool operator==(const RpaStructure&, const RpaStructure&) = default;

  private:
    std::size_t layers_ = 0;
    std::size_t n_qubits_ = 0;
    std::vector<Pauli> choices_;
};

/**
 * Ordered gate list U(theta) = G_last ... G_1 G_0 acting on |0...0>, with
 * parameter-slot metadata. Immutable after construction; safe to share.
 */
struct Circuit {
    std::size_t n_qubits = 0;
    std::size_t layers = 0;
    std::vector<Gate> gates;
    std::size_t param_count = 0;
    AnsatzFamily family = AnsatzFamily::CUSTOM;
    std::optional<std::uint64_t> structure_seed;
    std::optional<RpaStructure> structure;

    /// Index into `gates` of the gate reading parameter `slot`.
    [[nodiscard]] std::size_t gate_index_of_slot(std::size_t slot) const;

    friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Checks gate invariants and that slots form a bijection onto [0, param_count).
void validate_circuit(const Circuit& circuit);

/// Layers of RY-RX-RY on every qubit (slots in application order), each followed by
/// CZ on the open chain (0,1), (1,2), ..., (N-2,N-1). param_count = 3 N L.
Circuit build_hea(std::size_t n_qubits, std::size_t layers);

/// Fixed RY(pi/4) on every qubit, then L layers of R_P(theta) per qubit with axes drawn
/// from `structure_seed`, each followed by the CZ chain. param_count = N L.
Circuit build_rpa(std::size_t n_qubits, std::size_t layers, std::uint64_t structure_seed);

/// Same assembly as build_rpa with explicitly given axes.
Circuit build_rpa(const RpaStructure& structure);

void apply_circuit(StateVector& state, const Circuit& circuit, std::span<const double> params);

/// C(theta) = <0|U(theta)^dagger H U(theta)|0>.
double cost(const Circuit& circuit, std::span<const double> params, const PauliObservable& obs);

/**
 * Reusable scratch state for repeated cost evaluations of one circuit and
 * observable. Not thread-safe; use one per worker.
 */
class CostEvaluator {
  public:
    CostEvaluator(const Circuit& circuit, const PauliObservable& obs);

    double operator()(std::span<const double> params);

    [[nodiscard]] const Circuit& circuit() const noexcept { return *circuit_; }
    [[nodiscard]] const PauliObservable& observable() const noexcept { return *obs_; }
    [[nodiscard]] StateVector& scratch() noexcept { return scratch_; }

  private:
    const Circuit* circuit_;
    const PauliObservable* obs_;
    StateVector scratch_;
};

inline constexpr int kCircuitSchemaVersion = 1;

nlohmann::json circuit_to_json(const Circuit& circuit);
/// Throws std::invalid_argument on malformed documents or violated invariants.
Circuit circuit_from_json(const nlohmann::json& doc);

} // namespace bplab
