#include "qkonc/statevector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace qkonc {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

Statevector::Statevector(int num_qubits)
    : num_qubits_(num_qubits), amps_(std::size_t{1} << num_qubits) {}

Statevector Statevector::zero_state(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::length_error("zero_state: qubit count " + std::to_string(num_qubits) +
                                " outside [1, " + std::to_string(kMaxQubits) + "]");
    }
    Statevector state(num_qubits);
    state.amps_[0] = 1.0;
    return state;
}

void Statevector::check_qubit(int qubit, const char* what) const {
    if (qubit < 0 || qubit >= num_qubits_) {
        throw std::out_of_range(std::string(what) + ": qubit " + std::to_string(qubit) +
                                " out of range for " + std::to_string(num_qubits_) + " qubits");
    }
}

void Statevector::apply_hadamard(int qubit) {
    check_qubit(qubit, "apply_hadamard");
    const std::size_t mask = std::size_t{1} << qubit;
    const std::size_t lo = mask - 1;
    const std::size_t hi = ~lo;
    const std::size_t half = amps_.size() >> 1;
    for (std::size_t i = 0; i < half; ++i) {
        const std::size_t i0 = ((i & hi) << 1) | (i & lo);
        const std::size_t i1 = i0 | mask;
        const Amplitude a = amps_[i0];
        const Amplitude b = amps_[i1];
        amps_[i0] = kInvSqrt2 * (a + b);
        amps_[i1] = kInvSqrt2 * (a - b);
    }
}

void Statevector::apply_phase(int qubit, double theta) {
    check_qubit(qubit, "apply_phase");
    if (!std::isfinite(theta)) {
        throw std::invalid_argument("apply_phase: non-finite angle");
    }
    const Amplitude phase = std::polar(1.0, theta);
    const std::size_t mask = std::size_t{1} << qubit;
    const std::size_t lo = mask - 1;
    const std::size_t hi = ~lo;
    const std::size_t half = amps_.size() >> 1;
    for (std::size_t i = 0; i < half; ++i) {
        const std::size_t idx = (((i & hi) << 1) | (i & lo)) | mask;
        amps_[idx] *= phase;
    }
}

void Statevector::apply_cnot(int control, int target) {
    check_qubit(control, "apply_cnot");
    check_qubit(target, "apply_cnot");
    if (control == target) {
        throw std::invalid_argument("apply_cnot: control equals target (" +
                                    std::to_string(control) + ")");
    }
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t tmask = std::size_t{1} << target;
    // Expand the compressed index by opening zero bits at both gate
    // positions (higher hole first, then the lower shift moves it in place).
    const std::size_t lo_below = std::min(cmask, tmask) - 1;
    const std::size_t hi_below = (std::max(cmask, tmask) >> 1) - 1;
    const std::size_t quarter = amps_.size() >> 2;
    for (std::size_t i = 0; i < quarter; ++i) {
        std::size_t idx = ((i & ~hi_below) << 1) | (i & hi_below);
        idx = ((idx & ~lo_below) << 1) | (idx & lo_below);
        std::swap(amps_[idx | cmask], amps_[idx | cmask | tmask]);
    }
}

double Statevector::norm() const {
    double sum = 0.0;
    for (const Amplitude& a : amps_) {
        sum += std::norm(a);
    }
    return std::sqrt(sum);
}

std::complex<double> inner_product(const Statevector& a, const Statevector& b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::length_error("inner_product: dimension mismatch (" +
                                std::to_string(a.num_qubits()) + " vs " +
                                std::to_string(b.num_qubits()) + " qubits)");
    }
    const auto av = a.amplitudes();
    const auto bv = b.amplitudes();
    std::complex<double> sum = 0.0;
    for (std::size_t k = 0; k < av.size(); ++k) {
        sum += std::conj(av[k]) * bv[k];
    }
    return sum;
}

} // namespace qkonc
