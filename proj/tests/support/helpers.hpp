// helpers.hpp
// Shared test utilities.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qsm/statevec.hpp"

namespace qsm::test {

// Applies a 2x2 unitary to qubit q (1-based) of the state.
inline StateVector apply_single_qubit_unitary(const StateVector& psi, int q,
                                              const std::array<cplx, 4>& u) {
    std::vector<cplx> amps = psi.amplitudes();
    const std::int64_t bit = std::int64_t{1} << (q - 1);
    for (std::int64_t s = 0; s < psi.dim(); ++s) {
        if (s & bit) continue;
        const cplx a0 = amps[static_cast<std::size_t>(s)];
        const cplx a1 = amps[static_cast<std::size_t>(s | bit)];
        amps[static_cast<std::size_t>(s)] = u[0] * a0 + u[1] * a1;
        amps[static_cast<std::size_t>(s | bit)] = u[2] * a0 + u[3] * a1;
    }
    return StateVector(psi.n_q(), std::move(amps), psi.basis());
}

// Random SU(2) element from three angles.
inline std::array<cplx, 4> su2(double alpha, double beta, double gamma) {
    const cplx eia{std::cos(alpha), std::sin(alpha)};
    const cplx eig{std::cos(gamma), std::sin(gamma)};
    const double c = std::cos(beta);
    const double s = std::sin(beta);
    return {eia * c, eig * s, -std::conj(eig) * s, std::conj(eia) * c};
}

// Normalized state from explicit amplitudes.
inline StateVector make_state(int n_q, std::vector<cplx> amps) {
    double norm_sq = 0.0;
    for (const cplx& a : amps) norm_sq += std::norm(a);
    const double scale = 1.0 / std::sqrt(norm_sq);
    for (cplx& a : amps) a *= scale;
    return StateVector(n_q, std::move(amps), Basis::momentum);
}

}  // namespace qsm::test
