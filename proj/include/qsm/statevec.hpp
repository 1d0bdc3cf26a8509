// statevec.hpp
// Statevector storage, qubit binary coding, momentum index arithmetic and
// initial-state construction for the quantum sawtooth map simulator.
//
// Conventions fixed here and used across the whole library:
//   * N = 2^{n_q} amplitudes, stored by slot s in [0, N).
//   * Physical momentum n lies in (-N/2, N/2]; slot(n) = n mod N (non-negative
//     remainder), inverse n(s) = s for s <= N/2 and s - N for s > N/2.
//   * Qubit labels run i = 1 (least significant) .. n_q (most significant);
//     qubit i holds bit i-1 of the slot, so s = sum_i alpha_i 2^{i-1}.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qsm/errors.hpp"

namespace qsm {

using cplx = std::complex<double>;

enum class Basis { momentum, angle };

inline constexpr int kMinQubits = 2;
inline constexpr int kMaxQubits = 26;  // memory guard: 2^26 amplitudes = 1 GiB

class StateVector {
public:
    // Takes ownership of the amplitudes; validates dimension and unit norm.
    StateVector(int n_q, std::vector<cplx> amplitudes, Basis basis);

    int n_q() const { return n_q_; }
    std::int64_t dim() const { return static_cast<std::int64_t>(amplitudes_.size()); }
    Basis basis() const { return basis_; }

    const std::vector<cplx>& amplitudes() const { return amplitudes_; }
    const cplx& operator[](std::int64_t slot) const { return amplitudes_[slot]; }

    double norm_sq() const;

    // |amplitude|^2 per slot.
    std::vector<double> probabilities() const;

    // Mutable access for the evolution kernels. Callers are expected to keep
    // the state normalized; all public operations do.
    cplx* data() { return amplitudes_.data(); }
    const cplx* data() const { return amplitudes_.data(); }
    void set_basis(Basis b) { basis_ = b; }

private:
    int n_q_;
    Basis basis_;
    std::vector<cplx> amplitudes_;
};

// ---- momentum indexing ----------------------------------------------------

// Storage slot of physical momentum n (wraparound, non-negative remainder).
std::int64_t slot_for_momentum(std::int64_t n, int n_q);

// Signed momentum of storage slot s, in the window (-N/2, N/2].
std::int64_t momentum_for_slot(std::int64_t slot, int n_q);

// Bit of qubit label i (1-based, i=1 least significant) in slot s.
inline int qubit_bit(std::int64_t slot, int i) {
    return static_cast<int>((slot >> (i - 1)) & 1);
}

// ---- constructors ----------------------------------------------------------

// Momentum eigenstate |n0>: amplitude 1 at slot(n0), 0 elsewhere.
StateVector momentum_eigenstate(int n_q, std::int64_t n0);

// Localized window state: ceil(ell) consecutive slots starting at slot(center)
// carry amplitude e^{i phi_s} / sqrt(ceil(ell)) with uniform random phases
// drawn from a seeded mt19937_64 (phi = 2*pi * u64 / 2^64, one draw per slot
// in slot order), 0 elsewhere.
StateVector flat_phase_localized_state(int n_q, double ell, std::int64_t center,
                                       std::uint64_t seed);

// Coarse-graining distance |2^{j-1} - 2^{i-1}| between qubit labels i and j.
std::int64_t coarse_graining_distance(int i, int j);

}  // namespace qsm
