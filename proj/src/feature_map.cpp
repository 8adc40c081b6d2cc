#include "qkonc/feature_map.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qkonc {

namespace {

void check_spec(std::span<const double> x, const FeatureMapSpec& spec, const char* what) {
    if (spec.n < 1) {
        throw std::invalid_argument(std::string(what) + ": qubit count must be >= 1");
    }
    if (spec.reps < 1) {
        throw std::invalid_argument(std::string(what) + ": repetition count must be >= 1");
    }
    if (static_cast<int>(x.size()) != spec.n) {
        throw std::invalid_argument(std::string(what) + ": data dimension " +
                                    std::to_string(x.size()) + " does not match qubit count " +
                                    std::to_string(spec.n));
    }
    for (double xi : x) {
        if (!std::isfinite(xi)) {
            throw std::invalid_argument(std::string(what) + ": non-finite data entry");
        }
    }
}

} // namespace

CircuitLayers build_feature_map(std::span<const double> x, const FeatureMapSpec& spec) {
    check_spec(x, spec, "build_feature_map");
    const int n = spec.n;
    constexpr double pi = std::numbers::pi;

    CircuitLayers circuit;
    circuit.layers.reserve(static_cast<std::size_t>(spec.reps) * (2 + 3 * (n - 1)));
    for (int rep = 0; rep < spec.reps; ++rep) {
        circuit.layers.emplace_back(HadamardAll{});

        PhaseLayer singles;
        singles.rotations.reserve(n);
        for (int i = 0; i < n; ++i) {
            singles.rotations.emplace_back(i, 2.0 * x[i]);
        }
        circuit.layers.emplace_back(std::move(singles));

        for (int i = 0; i + 1 < n; ++i) {
            const double pair_angle = 2.0 * (pi - x[i]) * (pi - x[i + 1]);
            circuit.layers.emplace_back(CnotLayer{i, i + 1});
            circuit.layers.emplace_back(PhaseLayer{{{i + 1, pair_angle}}});
            circuit.layers.emplace_back(CnotLayer{i, i + 1});
        }
    }
    return circuit;
}

CircuitLayers inverse(const CircuitLayers& circuit) {
    CircuitLayers inv;
    inv.layers.reserve(circuit.layers.size());
    for (auto it = circuit.layers.rbegin(); it != circuit.layers.rend(); ++it) {
        if (const auto* phases = std::get_if<PhaseLayer>(&*it)) {
            PhaseLayer negated = *phases;
            for (auto& [qubit, angle] : negated.rotations) {
                angle = -angle;
            }
            inv.layers.emplace_back(std::move(negated));
        } else {
            inv.layers.push_back(*it);
        }
    }
    return inv;
}

CircuitLayers kernel_estimating_circuit(std::span<const double> x, std::span<const double> y,
                                        const FeatureMapSpec& spec) {
    CircuitLayers circuit = build_feature_map(x, spec);
    CircuitLayers undo = inverse(build_feature_map(y, spec));
    circuit.layers.insert(circuit.layers.end(), undo.layers.begin(), undo.layers.end());
    return circuit;
}

int kernel_circuit_layer_count(int n) {
    if (n < 1) {
        throw std::invalid_argument("kernel_circuit_layer_count: qubit count must be >= 1");
    }
    return 4 + 6 * (n - 1);
}

void apply(const CircuitLayers& circuit, Statevector& state) {
    for (const Layer& layer : circuit.layers) {
        if (std::holds_alternative<HadamardAll>(layer)) {
            for (int q = 0; q < state.num_qubits(); ++q) {
                state.apply_hadamard(q);
            }
        } else if (const auto* phases = std::get_if<PhaseLayer>(&layer)) {
            for (const auto& [qubit, angle] : phases->rotations) {
                state.apply_phase(qubit, angle);
            }
        } else {
            const auto& cnot = std::get<CnotLayer>(layer);
            state.apply_cnot(cnot.control, cnot.target);
        }
    }
}

Statevector embed(std::span<const double> x, const FeatureMapSpec& spec) {
    const CircuitLayers circuit = build_feature_map(x, spec);
    Statevector state = Statevector::zero_state(spec.n);
    apply(circuit, state);
    return state;
}

} // namespace qkonc
