// oracle.hpp
// Slow reference implementations kept deliberately independent of the fast
// paths they check: direct-summation DFT (vs the radix-2 transform), dense
// tensor-contraction partial trace (vs bit-indexed reduction), and a cyclic
// complex Jacobi eigensolver (vs Eigen inside the entanglement module).

#pragma once

#include <vector>

#include "qsm/entanglement.hpp"
#include "qsm/statevec.hpp"

namespace qsm::oracle {

// O(N^2) direct summation with the same kernel and 1/sqrt(N) normalization
// as the production transform; sign +1 is momentum -> angle.
std::vector<cplx> direct_dft(const std::vector<cplx>& amplitudes, int sign);

// Dense partial trace over all slot pairs: rho[l][m] = sum over slot pairs
// (s, s') that agree on every traced qubit, with l, m the block-local codes
// of s, s' (first listed qubit least significant, matching the fast path).
DensityMatrix dense_block_rdm(const StateVector& psi, const std::vector<int>& qubits);

// Eigenvalues of a Hermitian matrix (row-major entries), ascending, by
// cyclic complex Jacobi rotations.
std::vector<double> jacobi_eigenvalues(std::vector<cplx> entries, int dim);

// Haar-like random momentum-basis state with a platform-independent seeded
// generator (Gaussian amplitudes via Box-Muller on mt19937_64 words).
StateVector random_state(int n_q, std::uint64_t seed);

}  // namespace qsm::oracle
