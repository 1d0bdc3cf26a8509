// entanglement.hpp
// Reduced density matrices by bit-indexed partial trace, Wootters concurrence
// and Von Neumann block entropy.
//
// Index convention for reduced matrices: the basis of a reduced matrix over
// the ordered qubit list (q_1, q_2, ...) is coded block-locally with the
// FIRST listed qubit as the least significant bit, mirroring the global
// coding s = sum_i alpha_i 2^{i-1}. For a pair (i, j), i < j, the row index
// is l = alpha_i + 2*alpha_j.

#pragma once

#include <array>
#include <vector>

#include "qsm/statevec.hpp"

namespace qsm {

// Hermitian, trace-one, positive semidefinite matrix of a traced-out qubit
// subset (4x4 for pairs, 2^m x 2^m for blocks). Row-major storage.
struct DensityMatrix {
    int dim = 0;
    std::vector<int> subject_qubits;  // ordered labels, first = least significant
    std::vector<cplx> entries;        // dim * dim, row-major

    cplx& at(int r, int c) { return entries[static_cast<std::size_t>(r) * dim + c]; }
    const cplx& at(int r, int c) const {
        return entries[static_cast<std::size_t>(r) * dim + c];
    }

    double trace_real() const;

    // Largest entrywise |rho - rho^dagger| deviation.
    double hermiticity_error() const;
};

struct ConcurrenceResult {
    double value = 0.0;                    // max(l1 - l2 - l3 - l4, 0)
    std::array<double, 4> lambdas{};       // descending
};

// Two-qubit reduced density matrix of qubits i < j, computed in O(N) by bit
// extraction (no intermediate 2^{n_q} x 2^{n_q} object).
DensityMatrix reduce_to_pair(const StateVector& psi, int i, int j);

// Block reduced density matrix over distinct, ascending labels (m <= n_q - 1),
// O(N * 2^m) time.
DensityMatrix reduce_to_block(const StateVector& psi, const std::vector<int>& qubits);

// Wootters concurrence of a 4x4 density matrix. The lambdas are the square
// roots of the eigenvalues of rho * rho_tilde in descending order, computed
// through the Hermitian form sqrt(rho) * rho_tilde * sqrt(rho); eigenvalues
// below -1e-10 raise NumericalDegradationError, those in [-1e-10, 0) are
// clamped to zero.
ConcurrenceResult concurrence(const DensityMatrix& rho);

// Von Neumann entropy -sum lambda log2 lambda; eigenvalues below 1e-14 are
// dropped, eigenvalues below -1e-10 raise NumericalDegradationError.
double von_neumann_entropy(const DensityMatrix& rho);

// Convenience composition reduce_to_pair then concurrence.
double concurrence_of_pair(const StateVector& psi, int i, int j);

}  // namespace qsm
