#include "bplab/circuit.hpp"
#include "bplab/rng.hpp"
#include "bplab/state_vector.hpp"
#include "dense_oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace bplab;

namespace {

StateVector random_state(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::normal_distribution<double> g;
    std::vector<Complex> a(std::size_t{1} << n);
    double norm = 0.0;
    for (auto& z : a) {
        z = {g(rng), g(rng)};
        norm += std::norm(z);
    }
    for (auto& z : a) z /= std::sqrt(norm);
    return StateVector(n, std::move(a));
}

double max_diff(const StateVector& a, const StateVector& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

TEST_CASE("zero state") {
    const auto s1 = init_zero_state(1);
    REQUIRE(s1.dimension() == 2);
    CHECK(s1[0] == Complex(1, 0));
    CHECK(s1[1] == Complex(0, 0));

    const auto s2 = init_zero_state(2);
    REQUIRE(s2.dimension() == 4);
    CHECK(s2[0] == Complex(1, 0));
    for (std::size_t i = 1; i < 4; ++i) CHECK(s2[i] == Complex(0, 0));

    const auto s10 = init_zero_state(10);
    REQUIRE(s10.dimension() == 1024);
    CHECK(s10[0] == Complex(1, 0));
    double rest = 0.0;
    for (std::size_t i = 1; i < 1024; ++i) rest += std::norm(s10[i]);
    CHECK(rest == 0.0);

    CHECK_THROWS_AS(init_zero_state(0), std::invalid_argument);
    CHECK_THROWS_AS(init_zero_state(kMaxQubits + 1), std::invalid_argument);
}

TEST_CASE("single gates match their matrices") {
    SUBCASE("RY(pi/4) on |0>") {
        const auto s = apply_gate(init_zero_state(1), Gate::rotation(GateKind::RY, 0, 0), std::numbers::pi / 4);
        CHECK(std::abs(s[0] - Complex(std::cos(std::numbers::pi / 8), 0)) < 1e-15);
        CHECK(std::abs(s[1] - Complex(std::sin(std::numbers::pi / 8), 0)) < 1e-15);
    }
    SUBCASE("CZ phases only |11>") {
        StateVector s11(2, {0, 0, 0, 1});
        s11.apply(Gate::cz(0, 1));
        CHECK(s11[3] == Complex(-1, 0));
        StateVector s10(2, {0, 0, 1, 0}); // index 2: qubit 1 set
        s10.apply(Gate::cz(0, 1));
        CHECK(s10[2] == Complex(1, 0));
    }
    SUBCASE("RX(2 pi) is -1 times identity") {
        const auto psi = random_state(2, 11);
        const auto out = apply_gate(psi, Gate::rotation(GateKind::RX, 1, 0), 2 * std::numbers::pi);
        for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(out[i] + psi[i]) < 1e-15);
    }
    SUBCASE("kernels agree with embedded dense matrices") {
        for (std::size_t n = 1; n <= 3; ++n) {
            for (auto kind : {GateKind::RX, GateKind::RY, GateKind::RZ}) {
                for (std::size_t q = 0; q < n; ++q) {
                    const auto psi = random_state(n, 100 * n + q);
                    const double t = 0.37 + static_cast<double>(q);
                    const auto got = apply_gate(psi, Gate::rotation(kind, q, 0), t);
                    std::vector<Complex> v(psi.amplitudes().begin(), psi.amplitudes().end());
                    const auto want = oracle::matvec(oracle::gate_matrix(Gate::rotation(kind, q, 0), t, n), v);
                    for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(got[i] - want[i]) < 1e-14);
                }
            }
        }
    }
}

TEST_CASE("gate argument validation") {
    StateVector s(2);
    CHECK_THROWS_AS(s.apply(Gate::rotation(GateKind::RY, 0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(s.apply(Gate::cz(0, 1), 0.3), std::invalid_argument);
    CHECK_THROWS_AS(s.apply(Gate::fixed_rotation(GateKind::RY, 0, 0.1), 0.3), std::invalid_argument);
    CHECK_THROWS_AS(s.apply(Gate::rotation(GateKind::RX, 2, 0), 0.3), std::invalid_argument);
    CHECK_THROWS_AS(s.apply(Gate::cz(0, 0)), std::invalid_argument);
    CHECK_THROWS_AS(s.apply(Gate::cz(1, 5)), std::invalid_argument);
    CHECK_NOTHROW(s.apply(Gate::fixed_rotation(GateKind::RY, 0, 0.1)));
    CHECK_THROWS_AS(StateVector(2, {1, 0, 0}), std::invalid_argument);
}

TEST_CASE("norm is conserved by deep random circuits") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        Rng rng(seed);
        const std::size_t n = 1 + seed % 10;
        const std::size_t layers = 10 + 8 * seed;
        const Circuit c = seed % 2 ? build_hea(n, layers) : build_rpa(n, layers, seed);
        std::vector<double> theta(c.param_count);
        draw_angles(rng, theta);
        StateVector s(n);
        apply_circuit(s, c, theta);
        CHECK(std::abs(s.norm_squared() - 1.0) < 1e-12);
    }
    StateVector s(10);
    const Circuit c = build_hea(10, 50);
    std::vector<double> theta(c.param_count);
    Rng rng(99);
    draw_angles(rng, theta);
    apply_circuit(s, c, theta);
    CHECK(std::abs(s.norm_squared() - 1.0) < 1e-12);
}

TEST_CASE("gate followed by its inverse restores the state") {
    Rng rng(5);
    std::uniform_real_distribution<double> angle(-10.0, 10.0);
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto psi = random_state(n, 40 + n);
        for (auto kind : {GateKind::RX, GateKind::RY, GateKind::RZ}) {
            for (std::size_t q = 0; q < n; ++q) {
                const double t = angle(rng);
                StateVector s = psi;
                s.apply_rotation(kind, q, t);
                s.apply_rotation(kind, q, -t);
                CHECK(max_diff(s, psi) < 1e-12);
            }
        }
        for (std::size_t a = 0; a + 1 < n; ++a) {
            StateVector s = psi;
            s.apply_cz(a, a + 1);
            s.apply_cz(a, a + 1);
            CHECK(max_diff(s, psi) == 0.0);
        }
    }
}

TEST_CASE("gate kind names") {
    for (auto k : {GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::CZ}) {
        CHECK(gate_kind_from_string(to_string(k)) == k);
    }
    CHECK_THROWS_AS(gate_kind_from_string("H"), std::invalid_argument);
}
