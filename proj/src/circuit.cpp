#include "bplab/circuit.hpp"

#include <algorithm>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>

namespace bplab {

std::string_view to_string(AnsatzFamily family) {
    switch (family) {
    case AnsatzFamily::HEA: return "HEA";
    case AnsatzFamily::RPA: return "RPA";
    case AnsatzFamily::CUSTOM: return "CUSTOM";
    }
    return "?";
}

AnsatzFamily ansatz_family_from_string(std::string_view name) {
    if (name == "HEA" || name == "hea") return AnsatzFamily::HEA;
    if (name == "RPA" || name == "rpa") return AnsatzFamily::RPA;
    if (name == "CUSTOM" || name == "custom") return AnsatzFamily::CUSTOM;
    throw std::invalid_argument("unknown ansatz family '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// RpaStructure

RpaStructure::RpaStructure(std::size_t layers, std::size_t n_qubits, std::vector<Pauli> choices)
    : layers_(layers), n_qubits_(n_qubits), choices_(std::move(choices)) {
    if (choices_.size() != layers_ * n_qubits_) {
        throw std::invalid_argument("RPA structure needs layers * n_qubits entries");
    }
}

RpaStructure RpaStructure::random(std::size_t layers, std::size_t n_qubits, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_int_distribution<int> axis(0, 2);
    std::vector<Pauli> choices(layers * n_qubits);
    for (auto& c : choices) c = static_cast<Pauli>(axis(gen));
    return RpaStructure(layers, n_qubits, std::move(choices));
}

std::span<const Pauli> RpaStructure::row(std::size_t layer) const {
    if (layer >= layers_) throw std::out_of_range("RPA layer out of range");
    return std::span<const Pauli>(choices_).subspan(layer * n_qubits_, n_qubits_);
}

std::vector<std::string> RpaStructure::to_rows() const {
    std::vector<std::string> rows;
    rows.reserve(layers_);
    for (std::size_t l = 0; l < layers_; ++l) {
        std::string r;
        for (Pauli p : row(l)) r += to_char(p);
        rows.push_back(std::move(r));
    }
    return rows;
}

RpaStructure RpaStructure::from_rows(const std::vector<std::string>& rows) {
    if (rows.empty()) throw std::invalid_argument("RPA structure needs at least one layer");
    const std::size_t n = rows.front().size();
    std::vector<Pauli> choices;
    choices.reserve(rows.size() * n);
    for (const auto& r : rows) {
        if (r.size() != n) throw std::invalid_argument("ragged RPA structure rows");
        for (char c : r) choices.push_back(pauli_from_char(c));
    }
    return RpaStructure(rows.size(), n, std::move(choices));
}

// ---------------------------------------------------------------------------
// Circuit

std::size_t Circuit::gate_index_of_slot(std::size_t slot) const {
    for (std::size_t i = 0; i < gates.size(); ++i) {
        if (gates[i].param_slot == slot) return i;
    }
    throw std::out_of_range("parameter slot " + std::to_string(slot) + " not in circuit");
}

void validate_circuit(const Circuit& circuit) {
    if (circuit.n_qubits < 1 || circuit.n_qubits > kMaxQubits) throw std::invalid_argument("circuit n_qubits out of range");
    std::vector<int> seen(circuit.param_count, 0);
    for (const auto& g : circuit.gates) {
        validate_gate(g, circuit.n_qubits);
        if (g.param_slot) {
            if (*g.param_slot >= circuit.param_count) throw std::invalid_argument("parameter slot out of range");
            if (seen[*g.param_slot]++ != 0) throw std::invalid_argument("parameter slot used twice");
        }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
        throw std::invalid_argument("parameter slot never used");
    }
}

namespace {

void check_sizes(std::size_t n_qubits, std::size_t layers) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) throw std::invalid_argument("n_qubits must be in [1, 20]");
    if (layers < 1) throw std::invalid_argument("layers must be >= 1");
}

void append_cz_chain(std::vector<Gate>& gates, std::size_t n_qubits) {
    for (std::size_t j = 0; j + 1 < n_qubits; ++j) gates.push_back(Gate::cz(j, j + 1));
}

GateKind rotation_kind(Pauli p) {
    switch (p) {
    case Pauli::X: return GateKind::RX;
    case Pauli::Y: return GateKind::RY;
    case Pauli::Z: return GateKind::RZ;
    }
    return GateKind::RZ;
}

} // namespace

Circuit build_hea(std::size_t n_qubits, std::size_t layers) {
    check_sizes(n_qubits, layers);
    Circuit c;
    c.n_qubits = n_qubits;
    c.layers = layers;
    c.family = AnsatzFamily::HEA;
    c.gates.reserve(layers * (4 * n_qubits - 1));
    std::size_t slot = 0;
    for (std::size_t l = 0; l < layers; ++l) {
        for (std::size_t j = 0; j < n_qubits; ++j) {
            c.gates.push_back(Gate::rotation(GateKind::RY, j, slot++));
            c.gates.push_back(Gate::rotation(GateKind::RX, j, slot++));
            c.gates.push_back(Gate::rotation(GateKind::RY, j, slot++));
        }
        append_cz_chain(c.gates, n_qubits);
    }
    c.param_count = slot;
    return c;
}

Circuit build_rpa(const RpaStructure& structure) {
    const std::size_t n = structure.n_qubits();
    const std::size_t layers = structure.layers();
    check_sizes(n, layers);
    Circuit c;
    c.n_qubits = n;
    c.layers = layers;
    c.family = AnsatzFamily::RPA;
    c.structure = structure;
    c.gates.reserve(n + layers * (2 * n - 1));
    for (std::size_t j = 0; j < n; ++j) {
        c.gates.push_back(Gate::fixed_rotation(GateKind::RY, j, std::numbers::pi / 4));
    }
    std::size_t slot = 0;
    for (std::size_t l = 0; l < layers; ++l) {
        for (std::size_t j = 0; j < n; ++j) {
            c.gates.push_back(Gate::rotation(rotation_kind(structure.at(l, j)), j, slot++));
        }
        append_cz_chain(c.gates, n);
    }
    c.param_count = slot;
    return c;
}

Circuit build_rpa(std::size_t n_qubits, std::size_t layers, std::uint64_t structure_seed) {
    check_sizes(n_qubits, layers);
    Circuit c = build_rpa(RpaStructure::random(layers, n_qubits, structure_seed));
    c.structure_seed = structure_seed;
    return c;
}

void apply_circuit(StateVector& state, const Circuit& circuit, std::span<const double> params) {
    if (params.size() != circuit.param_count) {
        throw std::invalid_argument("expected " + std::to_string(circuit.param_count) + " parameters, got " +
                                    std::to_string(params.size()));
    }
    if (state.n_qubits() != circuit.n_qubits) throw std::invalid_argument("state/circuit qubit count mismatch");
    for (const auto& g : circuit.gates) {
        if (g.kind == GateKind::CZ) {
            state.apply_cz(g.target, g.control);
        } else {
            state.apply_rotation(g.kind, g.target, g.param_slot ? params[*g.param_slot] : *g.fixed_angle);
        }
    }
}

double cost(const Circuit& circuit, std::span<const double> params, const PauliObservable& obs) {
    StateVector psi(circuit.n_qubits);
    apply_circuit(psi, circuit, params);
    return expectation(psi, obs);
}

CostEvaluator::CostEvaluator(const Circuit& circuit, const PauliObservable& obs)
    : circuit_(&circuit), obs_(&obs), scratch_(circuit.n_qubits) {
    if (obs.min_qubits() > circuit.n_qubits) throw std::invalid_argument("observable addresses qubits outside the circuit");
}

double CostEvaluator::operator()(std::span<const double> params) {
    scratch_.reset();
    apply_circuit(scratch_, *circuit_, params);
    return expectation(scratch_, *obs_);
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json circuit_to_json(const Circuit& circuit) {
    nlohmann::json gates = nlohmann::json::array();
    for (const auto& g : circuit.gates) {
        nlohmann::json jg;
        jg["kind"] = std::string(to_string(g.kind));
        if (g.kind == GateKind::CZ) {
            jg["targets"] = {g.target, g.control};
        } else {
            jg["targets"] = {g.target};
        }
        if (g.param_slot) jg["slot"] = *g.param_slot;
        if (g.fixed_angle) jg["fixed_angle"] = *g.fixed_angle;
        gates.push_back(std::move(jg));
    }
    nlohmann::json doc;
    doc["schema_version"] = kCircuitSchemaVersion;
    doc["n_qubits"] = circuit.n_qubits;
    doc["layers"] = circuit.layers;
    doc["family"] = std::string(to_string(circuit.family));
    doc["seed"] = circuit.structure_seed ? nlohmann::json(*circuit.structure_seed) : nlohmann::json(nullptr);
    doc["param_count"] = circuit.param_count;
    if (circuit.structure) doc["structure"] = circuit.structure->to_rows();
    doc["gates"] = std::move(gates);
    return doc;
}

Circuit circuit_from_json(const nlohmann::json& doc) {
    try {
        if (doc.at("schema_version").get<int>() != kCircuitSchemaVersion) {
            throw std::invalid_argument("unsupported circuit schema_version");
        }
        Circuit c;
        c.n_qubits = doc.at("n_qubits").get<std::size_t>();
        c.layers = doc.at("layers").get<std::size_t>();
        c.family = ansatz_family_from_string(doc.at("family").get<std::string>());
        c.param_count = doc.at("param_count").get<std::size_t>();
        if (!doc.at("seed").is_null()) c.structure_seed = doc.at("seed").get<std::uint64_t>();
        if (doc.contains("structure")) {
            c.structure = RpaStructure::from_rows(doc.at("structure").get<std::vector<std::string>>());
        }
        for (const auto& jg : doc.at("gates")) {
            Gate g;
            g.kind = gate_kind_from_string(jg.at("kind").get<std::string>());
            const auto& targets = jg.at("targets");
            g.target = targets.at(0).get<std::size_t>();
            g.control = g.kind == GateKind::CZ ? targets.at(1).get<std::size_t>() : g.target;
            if (jg.contains("slot")) g.param_slot = jg.at("slot").get<std::size_t>();
            if (jg.contains("fixed_angle")) g.fixed_angle = jg.at("fixed_angle").get<double>();
            c.gates.push_back(g);
        }
        validate_circuit(c);
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed circuit document: ") + e.what());
    }
}

} // namespace bplab
