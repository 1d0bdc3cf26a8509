#include "qsm/statevec.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace qsm {

namespace {

constexpr double kNormTolerance = 1e-10;

void check_qubit_count(int n_q) {
    if (n_q < kMinQubits || n_q > kMaxQubits) {
        throw SizeError("qubit count must be in [" + std::to_string(kMinQubits) +
                        ", " + std::to_string(kMaxQubits) + "], got " +
                        std::to_string(n_q));
    }
}

}  // namespace

StateVector::StateVector(int n_q, std::vector<cplx> amplitudes, Basis basis)
    : n_q_(n_q), basis_(basis), amplitudes_(std::move(amplitudes)) {
    check_qubit_count(n_q_);
    const auto expected = std::int64_t{1} << n_q_;
    if (dim() != expected) {
        throw SizeError("amplitude vector has " + std::to_string(dim()) +
                        " entries, expected 2^" + std::to_string(n_q_));
    }
    const double nsq = norm_sq();
    if (std::abs(nsq - 1.0) > kNormTolerance) {
        throw ArgumentError("state norm^2 = " + std::to_string(nsq) +
                            " deviates from 1 beyond 1e-10");
    }
}

double StateVector::norm_sq() const {
    double acc = 0.0;
    for (const cplx& a : amplitudes_) acc += std::norm(a);
    return acc;
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amplitudes_.size());
    for (std::size_t s = 0; s < amplitudes_.size(); ++s) p[s] = std::norm(amplitudes_[s]);
    return p;
}

std::int64_t slot_for_momentum(std::int64_t n, int n_q) {
    check_qubit_count(n_q);
    const std::int64_t N = std::int64_t{1} << n_q;
    if (n <= -N / 2 || n > N / 2) {
        throw IndexError("momentum " + std::to_string(n) +
                         " outside window (-N/2, N/2] with N = " + std::to_string(N));
    }
    return ((n % N) + N) % N;
}

std::int64_t momentum_for_slot(std::int64_t slot, int n_q) {
    check_qubit_count(n_q);
    const std::int64_t N = std::int64_t{1} << n_q;
    if (slot < 0 || slot >= N) {
        throw IndexError("slot " + std::to_string(slot) + " outside [0, " +
                         std::to_string(N) + ")");
    }
    return slot <= N / 2 ? slot : slot - N;
}

StateVector momentum_eigenstate(int n_q, std::int64_t n0) {
    check_qubit_count(n_q);
    const std::int64_t slot = slot_for_momentum(n0, n_q);
    std::vector<cplx> amps(std::size_t{1} << n_q, cplx{0.0, 0.0});
    amps[static_cast<std::size_t>(slot)] = cplx{1.0, 0.0};
    return StateVector(n_q, std::move(amps), Basis::momentum);
}

StateVector flat_phase_localized_state(int n_q, double ell, std::int64_t center,
                                       std::uint64_t seed) {
    check_qubit_count(n_q);
    if (!(ell >= 1.0)) {
        throw DomainError("window width ell must be >= 1, got " + std::to_string(ell));
    }
    const std::int64_t N = std::int64_t{1} << n_q;
    const auto width = static_cast<std::int64_t>(std::ceil(ell));
    // The populated window [center, center + width) must fit in the momentum
    // window without wrapping past its upper edge.
    if (center <= -N / 2 || center + width - 1 > N / 2) {
        throw DomainError("window [" + std::to_string(center) + ", " +
                          std::to_string(center + width - 1) +
                          "] does not fit inside the momentum window");
    }

    std::vector<cplx> amps(static_cast<std::size_t>(N), cplx{0.0, 0.0});
    std::mt19937_64 rng(seed);
    const double mod = 1.0 / std::sqrt(static_cast<double>(width));
    for (std::int64_t m = center; m < center + width; ++m) {
        // Fixed mapping u64 -> [0, 2*pi) keeps phases identical across
        // platforms; std::uniform_real_distribution does not guarantee that.
        const double u = static_cast<double>(rng()) * 0x1p-64;
        const double phi = 2.0 * std::numbers::pi * u;
        amps[static_cast<std::size_t>(slot_for_momentum(m, n_q))] =
            cplx{mod * std::cos(phi), mod * std::sin(phi)};
    }
    return StateVector(n_q, std::move(amps), Basis::momentum);
}

std::int64_t coarse_graining_distance(int i, int j) {
    if (i < 1 || j < 1 || i > kMaxQubits || j > kMaxQubits) {
        throw ArgumentError("qubit labels must be in [1, " +
                            std::to_string(kMaxQubits) + "]");
    }
    if (i == j) {
        throw ArgumentError("coarse-graining distance requires distinct qubits");
    }
    const std::int64_t wi = std::int64_t{1} << (i - 1);
    const std::int64_t wj = std::int64_t{1} << (j - 1);
    return wi > wj ? wi - wj : wj - wi;
}

}  // namespace qsm
