#include "bplab/gaussian.hpp"
#include "bplab/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace bplab;

TEST_CASE("Gaussian values") {
    const auto m = GaussianModel::isotropic(1.0);
    CHECK(value(m, 0, 0) == -1.0);
    CHECK(value(m, 1, 0) == doctest::Approx(-std::exp(-0.5)).epsilon(1e-15));
    CHECK(std::abs(value(m, 1, 0) + 0.606531) < 1e-6);

    Rng rng(3);
    std::uniform_real_distribution<double> u(-5, 5);
    const GaussianModel a(0.7, 2.3);
    for (int i = 0; i < 50; ++i) {
        const double x = u(rng), y = u(rng);
        CHECK(value(a, x, y) == value(a, -x, y));
        CHECK(value(a, x, y) == value(a, x, -y));
        CHECK(value(a, x, y) <= 0.0);
        CHECK(value(a, x, y) >= -1.0);
    }

    CHECK_THROWS_AS(GaussianModel(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(GaussianModel(1.0, -2.0), std::invalid_argument);
    CHECK_THROWS_AS(GaussianModel::isotropic(INFINITY), std::invalid_argument);
    CHECK_THROWS_AS(GaussianModel::isotropic(NAN), std::invalid_argument);
}

TEST_CASE("x derivative") {
    const auto m = GaussianModel::isotropic(1.0);
    CHECK(derivative_x(m, 1, 0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
    for (double s : {0.01, 1.0, 30.0}) {
        for (double y : {-3.0, 0.0, 0.2}) CHECK(derivative_x(GaussianModel(s, 2.0), 0.0, y) == 0.0);
    }

    Rng rng(4);
    std::uniform_real_distribution<double> u(-3, 3);
    const GaussianModel a(1.3, 0.8);
    for (int i = 0; i < 100; ++i) {
        const double x = u(rng), y = u(rng);
        CHECK(derivative_x(a, x, y) == -derivative_x(a, -x, y));
        CHECK(derivative_x(a, x, y) == derivative_x(a, x, -y));
        const double h = 1e-6;
        const double fd = (value(a, x + h, y) - value(a, x - h, y)) / (2 * h);
        CHECK(std::abs(derivative_x(a, x, y) - fd) < 1e-8);
    }
}

TEST_CASE("|d/dx| along y = 0 peaks at x = +-sigma_x") {
    for (double s : {0.05, 0.5, 2.0, 7.0}) {
        const GaussianModel m(s, 3.0);
        const double step = s / 1000;
        double best_x = 0, best = -1;
        for (double x = 0; x <= 5 * s; x += step) {
            const double v = std::abs(derivative_x(m, x, 0));
            if (v > best) {
                best = v;
                best_x = x;
            }
        }
        CHECK(std::abs(best_x - s) <= step);
        CHECK(std::abs(derivative_x(m, -best_x, 0)) == best);
    }
}

TEST_CASE("isotropic and anisotropic forms agree bit for bit") {
    Rng rng(6);
    std::uniform_real_distribution<double> u(-20, 20);
    for (double s : {0.01, 0.3, 1.0, 17.0, 100.0}) {
        const auto iso = GaussianModel::isotropic(s);
        const GaussianModel ani(s, s);
        for (int i = 0; i < 50; ++i) {
            const double x = u(rng), y = u(rng);
            CHECK(value(iso, x, y) == value(ani, x, y));
            CHECK(derivative_x(iso, x, y) == derivative_x(ani, x, y));
        }
    }
}

TEST_CASE("y derivative by axis swap") {
    const GaussianModel m(0.4, 2.5);
    Rng rng(7);
    std::uniform_real_distribution<double> u(-4, 4);
    for (int i = 0; i < 50; ++i) {
        const double x = u(rng), y = u(rng);
        CHECK(derivative_y(m, x, y) == derivative_x(m.swapped(), y, x));
        const double h = 1e-6;
        const double fd = (value(m, x, y + h) - value(m, x, y - h)) / (2 * h);
        CHECK(std::abs(derivative_y(m, x, y) - fd) < 1e-8);
    }
}
