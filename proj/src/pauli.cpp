#include "bplab/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <utility>

namespace bplab {

char to_char(Pauli p) {
    switch (p) {
    case Pauli::X: return 'X';
    case Pauli::Y: return 'Y';
    case Pauli::Z: return 'Z';
    }
    return '?';
}

Pauli pauli_from_char(char c) {
    switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: break;
    }
    throw std::invalid_argument(std::string("not a Pauli label: '") + c + "'");
}

PauliObservable::PauliObservable(std::vector<PauliTerm> terms) : terms_(std::move(terms)) {}

PauliObservable& PauliObservable::add(double coefficient, std::map<std::size_t, Pauli> factors) {
    terms_.push_back(PauliTerm{coefficient, std::move(factors)});
    return *this;
}

std::size_t PauliObservable::min_qubits() const noexcept {
    std::size_t n = 0;
    for (const auto& t : terms_) {
        if (!t.factors.empty()) n = std::max(n, t.factors.rbegin()->first + 1);
    }
    return n;
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

PauliTerm parse_term(std::string_view text) {
    PauliTerm term;
    text = trim(text);
    if (text.empty()) throw std::invalid_argument("empty Pauli term");

    std::string_view body = text;
    if (const auto star = text.find('*'); star != std::string_view::npos) {
        const std::string coef(trim(text.substr(0, star)));
        std::size_t used = 0;
        try {
            term.coefficient = std::stod(coef, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad coefficient '" + coef + "'");
        }
        if (used != coef.size()) throw std::invalid_argument("bad coefficient '" + coef + "'");
        body = trim(text.substr(star + 1));
    } else if (std::isdigit(static_cast<unsigned char>(text.front())) || text.front() == '-' || text.front() == '.') {
        // Bare coefficient: identity term.
        const std::string coef(text);
        std::size_t used = 0;
        term.coefficient = std::stod(coef, &used);
        if (used != coef.size()) throw std::invalid_argument("bad identity term '" + coef + "'");
        return term;
    }

    std::size_t i = 0;
    while (i < body.size()) {
        if (std::isspace(static_cast<unsigned char>(body[i]))) {
            ++i;
            continue;
        }
        const char label = body[i++];
        std::size_t start = i;
        while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) ++i;
        if (std::toupper(static_cast<unsigned char>(label)) == 'I') continue;
        const Pauli p = pauli_from_char(label);
        if (start == i) throw std::invalid_argument("Pauli factor without qubit index");
        const std::size_t q = std::stoul(std::string(body.substr(start, i - start)));
        if (!term.factors.emplace(q, p).second) {
            throw std::invalid_argument("qubit " + std::to_string(q) + " repeated in one Pauli term");
        }
    }
    return term;
}

} // namespace

PauliObservable PauliObservable::parse(std::string_view text) {
    PauliObservable obs;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto plus = text.find('+', start);
        const auto piece = text.substr(start, plus == std::string_view::npos ? std::string_view::npos : plus - start);
        obs.terms_.push_back(parse_term(piece));
        if (plus == std::string_view::npos) break;
        start = plus + 1;
    }
    return obs;
}

std::string PauliObservable::to_string() const {
    std::string out;
    for (const auto& t : terms_) {
        if (!out.empty()) out += " + ";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", t.coefficient);
        out += buf;
        if (!t.factors.empty()) {
            out += '*';
            bool first = true;
            for (const auto& [q, p] : t.factors) {
                if (!first) out += ' ';
                first = false;
                out += to_char(p);
                out += std::to_string(q);
            }
        }
    }
    return out;
}

PauliObservable zz_benchmark() {
    PauliObservable h;
    h.add(1.0, {{0, Pauli::Z}, {1, Pauli::Z}});
    return h;
}

PauliObservable zz_benchmark_far(std::size_t n_qubits) {
    if (n_qubits < 2) throw std::invalid_argument("ZZ benchmark needs at least 2 qubits");
    PauliObservable h;
    h.add(1.0, {{n_qubits - 2, Pauli::Z}, {n_qubits - 1, Pauli::Z}});
    return h;
}

PauliObservable resolve_observable(std::string_view name, std::size_t n_qubits) {
    PauliObservable h;
    if (name == "zz_far") {
        h = zz_benchmark_far(n_qubits);
    } else if (name == "zz_near") {
        h = zz_benchmark();
    } else {
        h = PauliObservable::parse(name);
    }
    if (h.min_qubits() > n_qubits) {
        throw std::invalid_argument("observable '" + std::string(name) + "' does not fit on " +
                                    std::to_string(n_qubits) + " qubits");
    }
    return h;
}

double expectation(const StateVector& state, const PauliTerm& term) {
    std::uint64_t flip = 0;  // X or Y
    std::uint64_t phase = 0; // Z or Y
    int n_y = 0;
    for (const auto& [q, p] : term.factors) {
        if (q >= state.n_qubits()) {
            throw std::invalid_argument("Pauli factor on qubit " + std::to_string(q) + " outside " +
                                        std::to_string(state.n_qubits()) + "-qubit state");
        }
        const std::uint64_t bit = std::uint64_t{1} << q;
        if (p != Pauli::Z) flip |= bit;
        if (p != Pauli::X) phase |= bit;
        if (p == Pauli::Y) ++n_y;
    }
    // P|i> = i^{n_y} (-1)^{popcount(i & phase)} |i ^ flip>, with Y = i X Z.
    const auto amps = state.amplitudes();
    Complex acc{0.0, 0.0};
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        const Complex v = std::conj(amps[i ^ flip]) * amps[i];
        if (std::popcount(i & phase) & 1) {
            acc -= v;
        } else {
            acc += v;
        }
    }
    static constexpr Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    acc *= kIPow[n_y % 4];
    if (std::abs(acc.imag()) > 1e-12) {
        throw std::logic_error("Pauli expectation has imaginary residue " + std::to_string(acc.imag()));
    }
    return acc.real();
}

double expectation(const StateVector& state, const PauliObservable& obs) {
    double total = 0.0;
    for (const auto& term : obs.terms()) total += term.coefficient * expectation(state, term);
    return total;
}

} // namespace bplab
