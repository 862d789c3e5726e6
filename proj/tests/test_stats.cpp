#include "bplab/errors.hpp"
#include "bplab/parallel.hpp"
#include "bplab/rng.hpp"
#include "bplab/sampling.hpp"
#include "bplab/stats.hpp"
#include "toy_oracle.hpp"

#include <doctest.h>

#include <atomic>
#include <cmath>
#include <cstring>
#include <numbers>

using namespace bplab;

namespace {

double sample_fourth_central(const std::vector<double>& v, double mean) {
    double s = 0;
    for (double x : v) s += std::pow(x - mean, 4);
    return s / static_cast<double>(v.size());
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

} // namespace

TEST_CASE("summary examples") {
    const auto s = summarize(std::vector<double>{0.5, -0.5}, 0.01);
    CHECK(s.mean == 0.0);
    CHECK(s.variance == 0.25);
    CHECK(s.threshold_prob == 1.0);
    CHECK(s.chebyshev_bound == doctest::Approx(2500.0).epsilon(1e-14));
    CHECK(s.n_samples == 2);
    CHECK(s.max_abs == 0.5);
    CHECK(s.median_abs == 0.5);

    const auto z = summarize(std::vector<double>(7, 0.0), 0.1);
    CHECK(z.variance == 0.0);
    CHECK(z.threshold_prob == 0.0);
    CHECK(z.chebyshev_bound == 0.0);

    const double d = 0.01;
    CHECK(summarize(std::vector<double>{d / 2, -d / 2}, d).threshold_prob == 0.0);
    CHECK(summarize(std::vector<double>{d, -d / 2}, d).threshold_prob == 0.5);

    CHECK_THROWS_AS(summarize(std::vector<double>{}, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(summarize(std::vector<double>{1.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(summarize(std::vector<double>{NAN}, 0.1), std::invalid_argument);
}

TEST_CASE("summary invariants on random samples") {
    Rng rng(8);
    std::normal_distribution<double> g(0.1, 0.3);
    std::vector<double> v(1001);
    for (double& x : v) x = g(rng);
    double prev = 2.0;
    for (double delta : {1e-4, 1e-3, 0.01, 0.1, 0.3, 0.5, 1.0, 3.0}) {
        const auto s = summarize(v, delta);
        CHECK(s.threshold_prob >= 0.0);
        CHECK(s.threshold_prob <= 1.0);
        CHECK(s.threshold_prob <= prev);
        CHECK(s.variance >= 0.0);
        CHECK(s.chebyshev_bound == s.variance / (delta * delta));
        prev = s.threshold_prob;
    }
}

TEST_CASE("log-slope fit") {
    std::vector<std::pair<double, double>> pts;
    for (int n = 2; n <= 10; ++n) pts.emplace_back(n, std::exp(-n));
    auto f = fit_log_slope(pts);
    CHECK(f.slope == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(f.points.size() == 9);

    pts.clear();
    for (int n = 2; n <= 10; ++n) pts.emplace_back(n, 3.7 * std::exp(-0.74 * n));
    f = fit_log_slope(pts);
    CHECK(std::abs(f.slope + 0.74) < 1e-12);
    CHECK(std::abs(f.intercept - std::log(3.7)) < 1e-12);

    pts = {{2, 0.3}, {5, 0.3}, {9, 0.3}};
    f = fit_log_slope(pts);
    CHECK(f.slope == 0.0);
    CHECK(f.r_squared == 1.0);

    // scaling values moves only the intercept
    Rng rng(9);
    std::uniform_real_distribution<double> u(0.01, 2.0);
    pts.clear();
    for (int n = 2; n <= 10; ++n) pts.emplace_back(n, u(rng));
    const auto base = fit_log_slope(pts);
    for (auto& p : pts) p.second *= 1234.5;
    const auto scaled = fit_log_slope(pts);
    CHECK(std::abs(scaled.slope - base.slope) < 1e-12);
    CHECK(std::abs(scaled.r_squared - base.r_squared) < 1e-12);

    CHECK_THROWS_AS(fit_log_slope(std::vector<std::pair<double, double>>{{2, 0.1}, {3, 0.0}}), NumericalError);
    CHECK_THROWS_AS(fit_log_slope(std::vector<std::pair<double, double>>{{2, 0.1}, {3, -1.0}}), NumericalError);
    CHECK_THROWS_AS(fit_log_slope(std::vector<std::pair<double, double>>{{2, 0.1}}), std::invalid_argument);
    CHECK_THROWS_AS(fit_log_slope(std::vector<std::pair<double, double>>{{2, 0.1}, {2, 0.2}}), std::invalid_argument);
}

TEST_CASE("toy sampling") {
    const auto wide = GaussianModel::isotropic(1e6);
    const auto set = sample_toy_derivatives(wide, Axis::X, 20000, 20.0, 1);
    for (double d : set.samples) CHECK(std::abs(d) <= 20.0 / (1e6 * 1e6));

    const auto m = GaussianModel::isotropic(1.0);
    const auto a = sample_toy_derivatives(m, Axis::X, 1000, 20.0, 77);
    const auto b = sample_toy_derivatives(m, Axis::X, 1000, 20.0, 77);
    CHECK(bitwise_equal(a.samples, b.samples));
    CHECK(a.anchor == b.anchor);
    CHECK(!bitwise_equal(a.samples, sample_toy_derivatives(m, Axis::X, 1000, 20.0, 78).samples));
    // a prefix of a longer run is the shorter run
    const auto longer = sample_toy_derivatives(m, Axis::X, 2000, 20.0, 77);
    CHECK(std::equal(a.samples.begin(), a.samples.end(), longer.samples.begin()));

    CHECK_THROWS_AS(sample_toy_derivatives(m, Axis::X, 0, 20.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_toy_derivatives(m, Axis::X, 10, 0.0, 1), std::invalid_argument);
}

TEST_CASE("toy sample variance agrees with the quadrature oracle") {
    for (auto [sx, sy] : {std::pair{1.0, 1.0}, std::pair{0.3, 10.0}, std::pair{5.0, 5.0}}) {
        const std::size_t n = 100000;
        const auto set = sample_toy_derivatives(GaussianModel(sx, sy), Axis::X, n, 20.0, 2024);
        const auto s = summarize(set, 0.01);
        const auto ref = toy_oracle::moments(sx, sy, 20.0);
        const double se = std::sqrt((ref.fourth - ref.variance * ref.variance) / static_cast<double>(n));
        CAPTURE(sx);
        CHECK(std::abs(s.variance - ref.variance) <= 3 * se);
        // population fourth moment of the samples is close to the oracle too
        CHECK(sample_fourth_central(set.samples, s.mean) == doctest::Approx(ref.fourth).epsilon(0.1));
    }
}

TEST_CASE("Chebyshev holds for exact toy moments") {
    for (double s : {0.01, 0.1, 0.5, 1.0, 3.0, 10.0, 30.0, 100.0}) {
        for (double sy : {s, 10.0}) {
            const auto m = toy_oracle::moments(s, sy, 20.0);
            const double p = toy_oracle::exceedance(s, sy, 20.0, 0.01, 100000);
            CAPTURE(s);
            CAPTURE(sy);
            CHECK(p <= m.variance / (0.01 * 0.01));
        }
    }
}

TEST_CASE("exceedance oracle agrees with sampling") {
    for (double s : {0.1, 1.0, 7.0}) {
        const std::size_t n = 100000;
        const double p = toy_oracle::exceedance(s, s, 20.0, 0.01);
        const auto st = summarize(sample_toy_derivatives(GaussianModel::isotropic(s), Axis::X, n, 20.0, 5), 0.01);
        const double se = std::sqrt(p * (1 - p) / static_cast<double>(n));
        CAPTURE(s);
        CHECK(std::abs(st.threshold_prob - p) <= 4 * se + 1e-6);
    }
}

TEST_CASE("HEA two-qubit variance agrees with a theta-grid oracle") {
    // One layer, ZZ: the CZ commutes with ZZ, so C = <Z>_0 * <Z>_1 with
    // <Z> after RY(c) RX(b) RY(a) |0> read off explicit 2x2 matrices.
    auto z_after = [](double a, double b, double c) {
        using Cx = std::complex<double>;
        const Cx i(0, 1);
        auto ry = [](double t, Cx v[2]) {
            const Cx u0 = std::cos(t / 2) * v[0] - std::sin(t / 2) * v[1];
            const Cx u1 = std::sin(t / 2) * v[0] + std::cos(t / 2) * v[1];
            v[0] = u0;
            v[1] = u1;
        };
        Cx v[2] = {1, 0};
        ry(a, v);
        const Cx w0 = std::cos(b / 2) * v[0] - i * std::sin(b / 2) * v[1];
        const Cx w1 = -i * std::sin(b / 2) * v[0] + std::cos(b / 2) * v[1];
        v[0] = w0;
        v[1] = w1;
        ry(c, v);
        return std::norm(v[0]) - std::norm(v[1]);
    };
    // Periodic grid with M points integrates trig polynomials of degree < M exactly.
    const int M = 16;
    const double h = 2 * std::numbers::pi / M;
    double e_d = 0, e_d2 = 0, e_f = 0, e_f2 = 0;
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j)
            for (int k = 0; k < M; ++k) {
                const double a = i * h, b = j * h, c = k * h;
                const double d = (z_after(a + std::numbers::pi / 2, b, c) - z_after(a - std::numbers::pi / 2, b, c)) / 2;
                const double f = z_after(a, b, c);
                e_d += d;
                e_d2 += d * d;
                e_f += f;
                e_f2 += f * f;
            }
    const double cells = M * M * M;
    e_d /= cells, e_d2 /= cells, e_f /= cells, e_f2 /= cells;
    const double mean = e_d * e_f;
    const double var = e_d2 * e_f2 - mean * mean;
    CHECK(var == doctest::Approx(9.0 / 64.0).epsilon(1e-12));

    VqeSamplingSpec spec;
    spec.family = AnsatzFamily::HEA;
    spec.n_qubits = 2;
    spec.layers = 1;
    spec.n_samples = 40000;
    spec.master_seed = 31;
    const auto set = sample_vqe_derivatives(spec, zz_benchmark());
    const auto s = summarize(set, 0.1);
    const double se = std::sqrt((sample_fourth_central(set.samples, s.mean) - s.variance * s.variance) / spec.n_samples);
    CHECK(std::abs(s.variance - var) <= 3 * se);
    CHECK(std::abs(s.mean - mean) <= 3 * std::sqrt(var / spec.n_samples));
}

TEST_CASE("VQE sampling is deterministic and independent of worker count") {
    for (auto family : {AnsatzFamily::HEA, AnsatzFamily::RPA}) {
        VqeSamplingSpec spec;
        spec.family = family;
        spec.n_qubits = 4;
        spec.layers = 5;
        spec.slot = 3;
        spec.n_samples = 97;
        spec.master_seed = 123;
        const auto obs = resolve_observable("zz_far", 4);
        const auto one = sample_vqe_derivatives(spec, obs);
        spec.workers = 4;
        const auto four = sample_vqe_derivatives(spec, obs);
        CHECK(bitwise_equal(one.samples, four.samples));
        CHECK(one.config_label == four.config_label);
        spec.master_seed = 124;
        CHECK(!bitwise_equal(one.samples, sample_vqe_derivatives(spec, obs).samples));
    }
    VqeSamplingSpec bad;
    bad.n_qubits = 2;
    bad.layers = 1;
    bad.slot = 6;
    CHECK_THROWS_AS(sample_vqe_derivatives(bad, zz_benchmark()), std::out_of_range);
}

TEST_CASE("RPA samples draw fresh structures") {
    Rng r1 = make_stream(5, 0), r2 = make_stream(5, 1);
    CHECK(circuit_for_sample(AnsatzFamily::RPA, 4, 3, r1).structure != circuit_for_sample(AnsatzFamily::RPA, 4, 3, r2).structure);
    Rng h1 = make_stream(5, 0), h2 = make_stream(5, 1);
    CHECK(circuit_for_sample(AnsatzFamily::HEA, 4, 3, h1) == circuit_for_sample(AnsatzFamily::HEA, 4, 3, h2));
}

TEST_CASE("HEA variance decays with system size") {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t n = 2; n <= 8; ++n) {
        VqeSamplingSpec spec;
        spec.n_qubits = n;
        spec.layers = 20;
        spec.n_samples = 100;
        spec.master_seed = 1000 + n;
        const auto s = summarize(sample_vqe_derivatives(spec, resolve_observable("zz_far", n)), 0.1);
        CHECK(s.variance > 0.0);
        pts.emplace_back(static_cast<double>(n), s.variance);
    }
    CHECK(fit_log_slope(pts).slope < 0.0);
}

TEST_CASE("parallel_for covers every index once and forwards exceptions") {
    for (std::size_t workers : {1u, 2u, 5u}) {
        std::vector<std::atomic<int>> hits(37);
        parallel_for(hits.size(), workers, [] { return 0; }, [&](int&, std::size_t i) { hits[i]++; });
        for (auto& h : hits) CHECK(h.load() == 1);
        CHECK_THROWS_AS(parallel_for(10, workers, [] { return 0; },
                                     [](int&, std::size_t i) {
                                         if (i == 7) throw std::runtime_error("boom");
                                     }),
                        std::runtime_error);
    }
    CHECK(default_workers() >= 1);
}

TEST_CASE("seed derivation") {
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(derive_seed(1, "a", 0) != derive_seed(1, "b", 0));
    CHECK(derive_seed(9, "tag", 3) == derive_seed(9, "tag", 3));
    Rng rng(1);
    std::vector<double> t(1000);
    draw_angles(rng, t);
    for (double x : t) {
        CHECK(x >= 0.0);
        CHECK(x < 2 * std::numbers::pi);
    }
}
