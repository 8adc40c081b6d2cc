#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "doctest.h"

#include "qkonc/kernel_stats.hpp"
#include "qkonc/rng.hpp"

using namespace qkonc;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double smallest_eigenvalue(const GramMatrix& g) {
    Eigen::MatrixXd m(g.m, g.m);
    for (int i = 0; i < g.m; ++i) {
        for (int j = 0; j < g.m; ++j) {
            m(i, j) = g.at(i, j);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    return solver.eigenvalues().minCoeff();
}

} // namespace

TEST_CASE("generate_dataset ranges, determinism, and errors") {
    const Dataset ds = generate_dataset(100, 4, 42, 0.0, kTwoPi);
    CHECK(ds.m == 100);
    CHECK(ds.n == 4);
    CHECK(ds.coords.size() == 400);
    for (double c : ds.coords) {
        CHECK(c >= 0.0);
        CHECK(c < kTwoPi);
    }

    const Dataset again = generate_dataset(100, 4, 42, 0.0, kTwoPi);
    CHECK(ds.coords == again.coords);

    const Dataset other_seed = generate_dataset(100, 4, 43, 0.0, kTwoPi);
    CHECK(ds.coords != other_seed.coords);

    const Dataset tiny = generate_dataset(2, 1, 7, -1.0, 1.0);
    CHECK(tiny.coords.size() == 2);
    for (double c : tiny.coords) {
        CHECK(c >= -1.0);
        CHECK(c < 1.0);
    }

    CHECK_THROWS_AS(generate_dataset(1, 1, 0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(generate_dataset(2, 0, 0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(generate_dataset(2, 1, 0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("fidelity kernel: self-fidelity and the single-qubit closed form") {
    SplitMix64 rng(77);
    const FeatureMapSpec spec1{.n = 1};

    // K(x, y) = cos^2(x - y) for the reps=1 single-qubit map.
    CHECK(fidelity_kernel(std::vector<double>{std::numbers::pi / 4},
                          std::vector<double>{0.0}, spec1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fidelity_kernel(std::vector<double>{std::numbers::pi / 2},
                          std::vector<double>{0.0}, spec1) < 1e-12);

    for (int trial = 0; trial < 50; ++trial) {
        const double x = rng.next_double(0.0, kTwoPi);
        const double y = rng.next_double(0.0, kTwoPi);
        const double expected = std::pow(std::cos(x - y), 2);
        CHECK(std::abs(fidelity_kernel(std::vector<double>{x}, std::vector<double>{y}, spec1) -
                       expected) < 1e-10);
    }

    for (int trial = 0; trial < 10; ++trial) {
        const int n = 1 + static_cast<int>(rng.next() % 5);
        std::vector<double> x(n);
        for (double& xi : x) {
            xi = rng.next_double(0.0, kTwoPi);
        }
        CHECK(fidelity_kernel(x, x, {.n = n}) == doctest::Approx(1.0).epsilon(1e-10));
    }

    CHECK_THROWS_AS(fidelity_kernel(std::vector<double>{1.0},
                                    std::vector<double>{1.0, 2.0}, spec1),
                    std::invalid_argument);
}

TEST_CASE("gram matrix structure, symmetry, and analytic single-qubit oracle") {
    const Dataset two = generate_dataset(2, 3, 5, 0.0, kTwoPi);
    const GramMatrix g2 = gram_matrix(two, {.n = 3});
    CHECK(g2.at(0, 0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(g2.at(1, 1) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(g2.at(0, 1) == g2.at(1, 0));
    CHECK(std::abs(g2.at(0, 1) -
                   fidelity_kernel(two.point(0), two.point(1), {.n = 3})) < 1e-12);

    const Dataset ds = generate_dataset(30, 1, 11, 0.0, kTwoPi);
    const GramMatrix g = gram_matrix(ds, {.n = 1});
    for (int i = 0; i < g.m; ++i) {
        CHECK(g.at(i, i) == doctest::Approx(1.0).epsilon(1e-10));
        for (int j = 0; j < g.m; ++j) {
            CHECK(std::abs(g.at(i, j) - g.at(j, i)) < 1e-12);
            CHECK(g.at(i, j) >= -1e-12);
            CHECK(g.at(i, j) <= 1.0 + 1e-12);
            const double expected = std::pow(std::cos(ds.coords[i] - ds.coords[j]), 2);
            CHECK(std::abs(g.at(i, j) - expected) < 1e-10);
        }
    }

    CHECK_THROWS_AS(gram_matrix(ds, {.n = 2}), std::invalid_argument);
}

TEST_CASE("gram matrix is positive semidefinite") {
    SplitMix64 rng(13);
    for (int trial = 0; trial < 4; ++trial) {
        const int n = 1 + static_cast<int>(rng.next() % 10);
        const int m = 10 + static_cast<int>(rng.next() % 41);
        const Dataset ds = generate_dataset(m, n, rng.next(), 0.0, kTwoPi);
        const GramMatrix g = gram_matrix(ds, {.n = n});
        CHECK(smallest_eigenvalue(g) >= -1e-8);
    }
}

TEST_CASE("gram matrix is bitwise independent of the worker count") {
    const Dataset ds = generate_dataset(24, 4, 19, 0.0, kTwoPi);
    const FeatureMapSpec spec{.n = 4};
    const GramMatrix serial = gram_matrix(ds, spec, 1);
    const GramMatrix threaded = gram_matrix(ds, spec, 5);
    CHECK(serial.values == threaded.values);
}

TEST_CASE("concentration statistics") {
    SUBCASE("identity Gram matrix has zero mean and spread") {
        GramMatrix g;
        g.m = 4;
        g.values.assign(16, 0.0);
        for (int i = 0; i < 4; ++i) {
            g.at(i, i) = 1.0;
        }
        const auto [mean, std_dev] = concentration_stats(g);
        CHECK(mean == 0.0);
        CHECK(std_dev == 0.0);
    }
    SUBCASE("2x2 reduces to the single off-diagonal entry") {
        GramMatrix g;
        g.m = 2;
        g.values = {1.0, 0.37, 0.37, 1.0};
        const auto [mean, std_dev] = concentration_stats(g);
        CHECK(mean == doctest::Approx(0.37).epsilon(1e-15));
        CHECK(std_dev == 0.0);
    }
    SUBCASE("3x3 with off-diagonals {0.2, 0.4, 0.6}") {
        GramMatrix g;
        g.m = 3;
        g.values = {1.0, 0.2, 0.4, 0.2, 1.0, 0.6, 0.4, 0.6, 1.0};
        const auto [mean, std_dev] = concentration_stats(g);
        CHECK(mean == doctest::Approx(0.4).epsilon(1e-14));
        CHECK(std_dev == doctest::Approx(0.1632993161855452).epsilon(1e-12));
    }
    SUBCASE("mean lies within the off-diagonal range; zero spread iff all equal") {
        SplitMix64 rng(3);
        for (int trial = 0; trial < 20; ++trial) {
            GramMatrix g;
            g.m = 5;
            g.values.assign(25, 0.0);
            double lo = 1.0, hi = 0.0;
            for (int i = 0; i < 5; ++i) {
                g.at(i, i) = 1.0;
                for (int j = i + 1; j < 5; ++j) {
                    const double v = rng.next_double();
                    g.at(i, j) = v;
                    g.at(j, i) = v;
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            }
            const auto [mean, std_dev] = concentration_stats(g);
            CHECK(mean >= lo);
            CHECK(mean <= hi);
            CHECK(std_dev > 0.0);
        }
        GramMatrix flat;
        flat.m = 3;
        flat.values = {1.0, 0.5, 0.5, 0.5, 1.0, 0.5, 0.5, 0.5, 1.0};
        CHECK(concentration_stats(flat).std_dev < 1e-14);
    }
    SUBCASE("rejects matrices smaller than 2x2") {
        GramMatrix g;
        g.m = 1;
        g.values = {1.0};
        CHECK_THROWS_AS(concentration_stats(g), std::invalid_argument);
    }
}

TEST_CASE("concentration sweep: determinism, derived seeds, decreasing mean") {
    const std::vector<int> qubits{2, 4, 6};
    const SweepConfig config{.m = 100, .seed = 42};
    const auto points = concentration_sweep(qubits, config);
    REQUIRE(points.size() == 3);
    for (std::size_t i = 0; i < points.size(); ++i) {
        CHECK(points[i].n == qubits[i]);
        CHECK(points[i].m == 100);
        CHECK(points[i].seed == (42ULL ^ static_cast<std::uint64_t>(qubits[i])));
        CHECK(points[i].mean >= 0.0);
        CHECK(points[i].mean <= 1.0);
        CHECK(points[i].std_dev >= 0.0);
    }
    CHECK(points[0].mean > points[1].mean);
    CHECK(points[1].mean > points[2].mean);

    const auto again = concentration_sweep(qubits, config);
    for (std::size_t i = 0; i < points.size(); ++i) {
        CHECK(points[i].mean == again[i].mean);
        CHECK(points[i].std_dev == again[i].std_dev);
    }

    const auto single = concentration_sweep(std::vector<int>{3}, config);
    CHECK(single.size() == 1);

    CHECK_THROWS_AS(concentration_sweep(std::vector<int>{}, config), std::invalid_argument);
    CHECK_THROWS_AS(concentration_sweep(std::vector<int>{4, 2}, config), std::invalid_argument);
}

TEST_CASE("exponential fit recovery") {
    SUBCASE("exact data is recovered to machine precision") {
        std::vector<std::pair<double, double>> pts;
        for (int n = 1; n <= 6; ++n) {
            pts.emplace_back(n, 3.0 * std::exp(-0.5 * n));
        }
        const ExpFit fit = fit_exponential(pts);
        CHECK(std::abs(fit.C - 3.0) < 1e-9);
        CHECK(std::abs(fit.alpha - 0.5) < 1e-9);
        CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("constant data gives alpha 0 and C equal to the value") {
        std::vector<std::pair<double, double>> pts{{1, 0.7}, {2, 0.7}, {3, 0.7}};
        const ExpFit fit = fit_exponential(pts);
        CHECK(std::abs(fit.alpha) < 1e-12);
        CHECK(fit.C == doctest::Approx(0.7).epsilon(1e-12));
        CHECK(fit.r_squared == 1.0);
    }
    SUBCASE("scaling the data scales C and leaves alpha") {
        std::vector<std::pair<double, double>> pts, scaled;
        for (int n = 2; n <= 10; n += 2) {
            const double v = 0.8 * std::exp(-0.23 * n);
            pts.emplace_back(n, v);
            scaled.emplace_back(n, 5.5 * v);
        }
        const ExpFit base = fit_exponential(pts);
        const ExpFit big = fit_exponential(scaled);
        CHECK(std::abs(big.alpha - base.alpha) < 1e-9);
        CHECK(big.C == doctest::Approx(5.5 * base.C).epsilon(1e-9));
    }
    SUBCASE("random (C, alpha) recovered within 1e-9 relative") {
        SplitMix64 rng(2718);
        for (int trial = 0; trial < 50; ++trial) {
            const double c = std::exp(rng.next_double(std::log(1e-6), std::log(10.0)));
            const double alpha = rng.next_double(0.0, 2.0);
            std::vector<std::pair<double, double>> pts;
            for (int n = 1; n <= 8; ++n) {
                pts.emplace_back(n, c * std::exp(-alpha * n));
            }
            const ExpFit fit = fit_exponential(pts);
            CHECK(std::abs(fit.C - c) <= 1e-9 * c);
            CHECK(std::abs(fit.alpha - alpha) <= 1e-9 * std::max(alpha, 1.0));
            CHECK(fit.r_squared > 1.0 - 1e-9);
        }
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(fit_exponential(std::vector<std::pair<double, double>>{{1.0, 2.0}}),
                        std::invalid_argument);
        CHECK_THROWS_AS(
            fit_exponential(std::vector<std::pair<double, double>>{{1.0, 2.0}, {2.0, 0.0}}),
            std::domain_error);
        CHECK_THROWS_AS(
            fit_exponential(std::vector<std::pair<double, double>>{{1.0, 2.0}, {2.0, -1.0}}),
            std::domain_error);
    }
}
