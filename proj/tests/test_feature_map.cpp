#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "dense_oracle.hpp"
#include "qkonc/feature_map.hpp"
#include "qkonc/rng.hpp"

using namespace qkonc;
using Cx = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> random_point(SplitMix64& rng, int n, double lo = 0.0,
                                 double hi = 2.0 * kPi) {
    std::vector<double> x(n);
    for (double& xi : x) {
        xi = rng.next_double(lo, hi);
    }
    return x;
}

double max_abs_diff(std::span<const Cx> a, const std::vector<Cx>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

} // namespace

TEST_CASE("single-qubit map is Hadamard plus one phase sweep") {
    const std::vector<double> x{0.7};
    const CircuitLayers c = build_feature_map(x, {.n = 1});
    REQUIRE(c.layer_count() == 2);
    CHECK(std::holds_alternative<HadamardAll>(c.layers[0]));
    const auto& phases = std::get<PhaseLayer>(c.layers[1]);
    REQUIRE(phases.rotations.size() == 1);
    CHECK(phases.rotations[0].first == 0);
    CHECK(phases.rotations[0].second == doctest::Approx(1.4).epsilon(1e-15));
}

TEST_CASE("three-qubit map layer structure and angles") {
    const std::vector<double> x{0.3, 1.1, 2.9};
    const CircuitLayers c = build_feature_map(x, {.n = 3});
    REQUIRE(c.layer_count() == 8); // 2 + 3*(3-1)

    CHECK(std::holds_alternative<HadamardAll>(c.layers[0]));
    const auto& singles = std::get<PhaseLayer>(c.layers[1]);
    REQUIRE(singles.rotations.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(singles.rotations[i].first == i);
        CHECK(singles.rotations[i].second == doctest::Approx(2.0 * x[i]).epsilon(1e-15));
    }

    // Entangling blocks: CNOT(i,i+1), phase on target, CNOT(i,i+1).
    for (int i = 0; i < 2; ++i) {
        const std::size_t base = 2 + 3 * static_cast<std::size_t>(i);
        const auto& first = std::get<CnotLayer>(c.layers[base]);
        CHECK(first.control == i);
        CHECK(first.target == i + 1);
        const auto& pair_phase = std::get<PhaseLayer>(c.layers[base + 1]);
        REQUIRE(pair_phase.rotations.size() == 1);
        CHECK(pair_phase.rotations[0].first == i + 1);
        CHECK(pair_phase.rotations[0].second ==
              doctest::Approx(2.0 * (kPi - x[i]) * (kPi - x[i + 1])).epsilon(1e-14));
        const auto& second = std::get<CnotLayer>(c.layers[base + 2]);
        CHECK(second.control == i);
        CHECK(second.target == i + 1);
    }
}

TEST_CASE("all-pi input zeroes every pair angle") {
    const std::vector<double> x{kPi, kPi, kPi, kPi};
    const CircuitLayers c = build_feature_map(x, {.n = 4});
    for (std::size_t i = 2; i < c.layer_count(); ++i) {
        if (const auto* phases = std::get_if<PhaseLayer>(&c.layers[i])) {
            for (const auto& [qubit, angle] : phases->rotations) {
                CHECK(std::abs(angle) < 1e-12);
            }
        }
    }
}

TEST_CASE("build_feature_map input validation") {
    CHECK_THROWS_AS(build_feature_map(std::vector<double>{1.0, 2.0}, {.n = 3}),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_feature_map(std::vector<double>{}, {.n = 1}), std::invalid_argument);
    CHECK_THROWS_AS(build_feature_map(std::vector<double>{std::nan("")}, {.n = 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_feature_map(std::vector<double>{1.0}, {.n = 1, .reps = 0}),
                    std::invalid_argument);
}

TEST_CASE("repetitions multiply the per-rep layer count") {
    const std::vector<double> x{0.1, 0.2};
    CHECK(build_feature_map(x, {.n = 2, .reps = 2}).layer_count() == 2 * (2 + 3));
    CHECK(build_feature_map(x, {.n = 2, .reps = 5}).layer_count() == 5 * (2 + 3));
}

TEST_CASE("layer count formula matches pinned values and enumeration") {
    CHECK(kernel_circuit_layer_count(1) == 4);
    CHECK(kernel_circuit_layer_count(2) == 10);
    CHECK(kernel_circuit_layer_count(5) == 28);
    CHECK_THROWS_AS(kernel_circuit_layer_count(0), std::invalid_argument);

    SplitMix64 rng(17);
    for (int n = 1; n <= 20; ++n) {
        const std::vector<double> x = random_point(rng, n);
        const std::vector<double> y = random_point(rng, n);
        const CircuitLayers forward = build_feature_map(x, {.n = n});
        CHECK(kernel_circuit_layer_count(n) ==
              static_cast<int>(2 * forward.layer_count()));
        CHECK(kernel_circuit_layer_count(n) ==
              static_cast<int>(kernel_estimating_circuit(x, y, {.n = n}).layer_count()));
    }
}

TEST_CASE("embed of a single qubit is (1, e^{2ix})/sqrt(2)") {
    SplitMix64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const double x0 = rng.next_double(0.0, 2.0 * kPi);
        const Statevector s = embed(std::vector<double>{x0}, {.n = 1});
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        CHECK(std::abs(s.amplitude(0) - Cx{inv_sqrt2, 0.0}) < 1e-14);
        CHECK(std::abs(s.amplitude(1) - inv_sqrt2 * std::polar(1.0, 2.0 * x0)) < 1e-14);
    }
}

TEST_CASE("embed is unit norm and bit-deterministic") {
    SplitMix64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + static_cast<int>(rng.next() % 7);
        const std::vector<double> x = random_point(rng, n);
        const FeatureMapSpec spec{.n = n};
        const Statevector a = embed(x, spec);
        const Statevector b = embed(x, spec);
        CHECK(std::abs(a.norm() - 1.0) < 1e-12);
        for (std::size_t k = 0; k < a.size(); ++k) {
            CHECK(a.amplitude(k) == b.amplitude(k));
        }
    }
}

TEST_CASE("embed matches the dense-matrix oracle up to n=5") {
    using namespace qkonc::test;
    SUBCASE("pinned two-qubit case at x = (0, 0)") {
        const std::vector<double> x{0.0, 0.0};
        const FeatureMapSpec spec{.n = 2};
        // Pair angle is 2*pi^2 here.
        const CircuitLayers circuit = build_feature_map(x, spec);
        const auto& layer = std::get<PhaseLayer>(circuit.layers[3]);
        CHECK(layer.rotations[0].second == doctest::Approx(19.739208802178716).epsilon(1e-15));
        const Statevector s = embed(x, spec);
        const auto reference = dense_apply_to_zero(build_feature_map(x, spec), 2);
        CHECK(max_abs_diff(s.amplitudes(), reference) < 1e-12);
    }
    SUBCASE("random inputs across dimensions") {
        SplitMix64 rng(31);
        for (int trial = 0; trial < 40; ++trial) {
            const int n = 1 + static_cast<int>(rng.next() % 5);
            const int reps = 1 + static_cast<int>(rng.next() % 2);
            const std::vector<double> x = random_point(rng, n);
            const FeatureMapSpec spec{.n = n, .reps = reps};
            const Statevector s = embed(x, spec);
            const auto reference = dense_apply_to_zero(build_feature_map(x, spec), n);
            CHECK(max_abs_diff(s.amplitudes(), reference) < 1e-12);
        }
    }
}

TEST_CASE("inverse circuit undoes the embedding") {
    SplitMix64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng.next() % 6);
        const std::vector<double> x = random_point(rng, n);
        const CircuitLayers circuit = build_feature_map(x, {.n = n});
        Statevector s = Statevector::zero_state(n);
        apply(circuit, s);
        apply(inverse(circuit), s);
        CHECK(std::abs(s.amplitude(0) - Cx{1.0, 0.0}) < 1e-12);
        CHECK(std::abs(s.norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("all-zeros probability of U†(y)U(x) equals the squared overlap") {
    SplitMix64 rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(rng.next() % 6);
        const FeatureMapSpec spec{.n = n};
        const std::vector<double> x = random_point(rng, n);
        const std::vector<double> y = random_point(rng, n);

        Statevector s = Statevector::zero_state(n);
        apply(kernel_estimating_circuit(x, y, spec), s);
        const double p_zero = std::norm(s.amplitude(0));

        const double overlap = std::norm(inner_product(embed(y, spec), embed(x, spec)));
        CHECK(std::abs(p_zero - overlap) < 1e-12);
    }
}
