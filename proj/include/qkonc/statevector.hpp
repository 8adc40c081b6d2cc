#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qkonc {

// 2^24 amplitudes of complex<double>; keeps a single state within 256 MiB.
inline constexpr int kMaxQubits = 24;

/**
 * Dense n-qubit statevector with little-endian qubit indexing: qubit 0 is
 * the least significant bit of the basis index. Gates mutate the amplitude
 * vector in place via bit-indexed strides; there is no gate-matrix path.
 *
 * A Statevector is exclusively owned while mutated. All operations are
 * deterministic, so distinct states can be processed concurrently.
 */
class Statevector {
  public:
    using Amplitude = std::complex<double>;

    // |0...0>. Throws std::length_error unless 1 <= num_qubits <= kMaxQubits.
    static Statevector zero_state(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    std::size_t size() const { return amps_.size(); }
    std::span<const Amplitude> amplitudes() const { return amps_; }
    Amplitude amplitude(std::size_t basis_index) const { return amps_[basis_index]; }

    // (a, b) -> ((a+b)/sqrt2, (a-b)/sqrt2) on every pair differing in `qubit`.
    void apply_hadamard(int qubit);

    // Multiplies amplitudes whose basis index has `qubit` set by e^{i theta}.
    void apply_phase(int qubit, double theta);

    // Swaps amplitudes of pairs with the control bit set that differ in the
    // target bit.
    void apply_cnot(int control, int target);

    double norm() const;

  private:
    explicit Statevector(int num_qubits);

    void check_qubit(int qubit, const char* what) const;

    int num_qubits_;
    std::vector<Amplitude> amps_;
};

// <a|b> = sum_k conj(a_k) b_k. Throws std::length_error on dimension mismatch.
std::complex<double> inner_product(const Statevector& a, const Statevector& b);

} // namespace qkonc
