#pragma once

#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "qkonc/statevector.hpp"

namespace qkonc {

// Angle convention for the ZZ map (Havlicek et al.): phi_i(x) = 2 x_i on a
// single qubit, phi_ij(x) = 2 (pi - x_i)(pi - x_j) on a neighbouring pair.
enum class DataMap { havlicek };

struct FeatureMapSpec {
    int n = 1;    // qubit count == data dimension
    int reps = 1; // repetitions of the map
    DataMap data_map = DataMap::havlicek;
};

// One layer is everything executed in a single circuit step: a simultaneous
// Hadamard on all qubits, one full sweep of phase rotations, or one CNOT.
struct HadamardAll {};
struct PhaseLayer {
    std::vector<std::pair<int, double>> rotations; // (qubit, angle)
};
struct CnotLayer {
    int control;
    int target;
};
using Layer = std::variant<HadamardAll, PhaseLayer, CnotLayer>;

struct CircuitLayers {
    std::vector<Layer> layers;
    std::size_t layer_count() const { return layers.size(); }
};

/**
 * Linearly entangled ZZ feature map for data point x. Per repetition:
 * HadamardAll; a phase sweep with angle 2 x_i on qubit i; then for each
 * i in [0, n-2] the block CNOT(i,i+1), Phase(i+1, 2(pi-x_i)(pi-x_{i+1})),
 * CNOT(i,i+1). One repetition has 2 + 3(n-1) layers.
 */
CircuitLayers build_feature_map(std::span<const double> x, const FeatureMapSpec& spec);

// Reversed layer order with every layer inverted (H and CNOT are
// self-inverse, phase angles negate).
CircuitLayers inverse(const CircuitLayers& circuit);

// U†(y) U(x) on |0...0>: the probability of the all-zeros outcome is K(x,y).
CircuitLayers kernel_estimating_circuit(std::span<const double> x, std::span<const double> y,
                                        const FeatureMapSpec& spec);

// N_l(n) = 4 + 6(n-1), the layer count of the reps=1 kernel-estimating
// circuit above.
int kernel_circuit_layer_count(int n);

void apply(const CircuitLayers& circuit, Statevector& state);

// |phi(x)> = U(x)|0...0>
Statevector embed(std::span<const double> x, const FeatureMapSpec& spec);

} // namespace qkonc
