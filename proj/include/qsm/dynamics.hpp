// dynamics.hpp
// Split-operator application of the sawtooth-map Floquet operator
//   U = exp(+i k (theta - pi)^2) * exp(-i T n^2 / 2)
// via an in-house unitary radix-2 discrete Fourier transform.
//
// The kinetic factor is diagonal in the momentum basis and uses the signed
// momentum n(s); the kick factor is diagonal in the angle basis with
// theta_j = 2*pi*j/N. Momentum -> angle uses the kernel e^{+i 2 pi j s / N}
// with symmetric 1/sqrt(N) normalization, so both directions are unitary.

#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "qsm/statevec.hpp"

namespace qsm {

// Map parameters (n_q, K, M) with the derived kick period T = 2*pi*M/2^{n_q}
// and kick strength k = K/T.
struct MapParams {
    MapParams(int n_q, double K, std::int64_t M);

    int n_q;
    double K;
    std::int64_t M;
    double T;  // effective Planck constant, radians
    double k;  // kick strength, K/T
};

// One-period evolution operator with phase tables precomputed once, so that
// repeated steps only pay for two transforms and two diagonal multiplies.
class FloquetOperator {
public:
    explicit FloquetOperator(const MapParams& params);

    const MapParams& params() const { return params_; }

    StateVector apply(const StateVector& psi) const;
    void apply_in_place(StateVector& psi) const;

    // Diagonal phase tables, exposed for inspection and tests.
    std::span<const cplx> kinetic_phases() const { return kinetic_phase_; }
    std::span<const cplx> kick_phases() const { return kick_phase_; }

private:
    void check_state(const StateVector& psi) const;

    struct Impl;  // precomputed transform tables

    MapParams params_;
    std::shared_ptr<const Impl> impl_;
    std::vector<cplx> kinetic_phase_;  // e^{-i T n(s)^2 / 2} by slot
    std::vector<cplx> kick_phase_;     // e^{+i k (theta_j - pi)^2} by angle slot
};

// Unitary DFT between the conjugate bases. Both are norm-preserving; each is
// the exact inverse of the other (conjugate kernel, same normalization).
StateVector dft_momentum_to_angle(const StateVector& psi);
StateVector dft_angle_to_momentum(const StateVector& psi);

// One Floquet step. Builds the phase tables on the fly; use FloquetOperator
// (or evolve) when stepping repeatedly.
StateVector apply_floquet(const StateVector& psi, const MapParams& params);

// Called after each step with (step index, current state); step counts kicks
// applied so far, starting at 1.
using StepObserver = std::function<void(std::int64_t step, const StateVector&)>;

// Applies the Floquet operator `steps` times, invoking every observer after
// each step. Deterministic given its inputs.
StateVector evolve(const StateVector& psi0, const MapParams& params,
                   std::int64_t steps, std::span<const StepObserver> observers = {});

}  // namespace qsm
