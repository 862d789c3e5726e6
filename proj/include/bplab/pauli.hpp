#pragma once

#include "bplab/state_vector.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace bplab {

enum class Pauli { X, Y, Z };

char to_char(Pauli p);
Pauli pauli_from_char(char c);

/// One weighted Pauli string; identity factors are omitted from `factors`.
struct PauliTerm {
    double coefficient = 1.0;
    std::map<std::size_t, Pauli> factors;

    friend bool operator==(const PauliTerm&, const PauliTerm&) = default;
};

/// H = sum_k c_k H_k over Pauli strings H_k.
class PauliObservable {
  public:
    PauliObservable() = default;
    explicit PauliObservable(std::vector<PauliTerm> terms);

    PauliObservable& add(double coefficient, std::map<std::size_t, Pauli> factors);

    [[nodiscard]] const std::vector<PauliTerm>& terms() const noexcept { return terms_; }

    /// Smallest register the observable fits on (max qubit index + 1; 0 for pure identity).
    [[nodiscard]] std::size_t min_qubits() const noexcept;

    /// Parses "1.0*Z0 Z1 + -0.5*X2" style text. Qubit indices are 0-based.
    static PauliObservable parse(std::string_view text);
    [[nodiscard]] std::string to_string() const;

  private:
    std::vector<PauliTerm> terms_;
};

/// Z on qubits 0 and 1 (Z_1 Z_2 in one-based notation).
PauliObservable zz_benchmark();

/// Z on qubits n-2 and n-1: the pair at the far end of the entangling chain from qubit 0.
PauliObservable zz_benchmark_far(std::size_t n_qubits);

/**
 * Named or literal observable for an n-qubit register:
 *   "zz_far"  -> zz_benchmark_far(n)
 *   "zz_near" -> zz_benchmark()
 *   anything else is parsed as Pauli text.
 * Throws std::invalid_argument if the result does not fit on n qubits.
 */
PauliObservable resolve_observable(std::string_view name, std::size_t n_qubits);

/// <psi|H|psi>. Throws std::invalid_argument if a factor addresses a qubit
/// outside the state, or if the result carries a non-negligible imaginary part.
double expectation(const StateVector& state, const PauliObservable& obs);

/// Single-term expectation with unit coefficient.
double expectation(const StateVector& state, const PauliTerm& term);

} // namespace bplab
