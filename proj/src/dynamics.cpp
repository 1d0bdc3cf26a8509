#include "qsm/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace qsm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Iterative radix-2 Cooley-Tukey transform with a precomputed twiddle table,
// kernel e^{sign * i 2 pi j s / N} and unitary 1/sqrt(N) scaling.
class Radix2Fft {
public:
    explicit Radix2Fft(std::int64_t n) : n_(n), scale_(1.0 / std::sqrt(static_cast<double>(n))) {
        // Direct evaluation keeps each twiddle accurate to machine precision.
        twiddle_.resize(static_cast<std::size_t>(n / 2));
        for (std::int64_t m = 0; m < n / 2; ++m) {
            const double ang = kTwoPi * static_cast<double>(m) / static_cast<double>(n);
            twiddle_[static_cast<std::size_t>(m)] = cplx{std::cos(ang), std::sin(ang)};
        }
    }

    void transform(cplx* a, int sign) const {
        // Bit-reversal permutation.
        for (std::int64_t i = 1, j = 0; i < n_; ++i) {
            std::int64_t bit = n_ >> 1;
            for (; j & bit; bit >>= 1) j ^= bit;
            j ^= bit;
            if (i < j) std::swap(a[i], a[j]);
        }

        for (std::int64_t len = 2; len <= n_; len <<= 1) {
            const std::int64_t half = len >> 1;
            const std::int64_t stride = n_ / len;
            for (std::int64_t base = 0; base < n_; base += len) {
                for (std::int64_t off = 0; off < half; ++off) {
                    const cplx& t = twiddle_[static_cast<std::size_t>(off * stride)];
                    const cplx w = sign > 0 ? t : std::conj(t);
                    const cplx u = a[base + off];
                    const cplx v = a[base + off + half] * w;
                    a[base + off] = u + v;
                    a[base + off + half] = u - v;
                }
            }
        }

        for (std::int64_t s = 0; s < n_; ++s) a[s] *= scale_;
    }

private:
    std::int64_t n_;
    double scale_;
    std::vector<cplx> twiddle_;
};

StateVector dft_impl(const StateVector& psi, Basis from, Basis to, int sign) {
    if (psi.basis() != from) {
        throw StateError(std::string("state is not in the ") +
                         (from == Basis::momentum ? "momentum" : "angle") + " basis");
    }
    StateVector out = psi;
    Radix2Fft(out.dim()).transform(out.data(), sign);
    out.set_basis(to);
    return out;
}

}  // namespace

MapParams::MapParams(int n_q_, double K_, std::int64_t M_)
    : n_q(n_q_), K(K_), M(M_) {
    if (n_q < kMinQubits || n_q > kMaxQubits) {
        throw SizeError("qubit count must be in [" + std::to_string(kMinQubits) +
                        ", " + std::to_string(kMaxQubits) + "], got " +
                        std::to_string(n_q));
    }
    if (!(K > 0.0)) {
        throw DomainError("classical parameter K must be > 0, got " + std::to_string(K));
    }
    if (M < 1) {
        throw DomainError("M must be a positive integer, got " + std::to_string(M));
    }
    const double N = static_cast<double>(std::int64_t{1} << n_q);
    T = kTwoPi * static_cast<double>(M) / N;
    k = K / T;
}

struct FloquetOperator::Impl {
    explicit Impl(std::int64_t n) : fft(n) {}
    Radix2Fft fft;
};

FloquetOperator::FloquetOperator(const MapParams& params)
    : params_(params), impl_(std::make_shared<const Impl>(std::int64_t{1} << params.n_q)) {
    const std::int64_t N = std::int64_t{1} << params_.n_q;
    kinetic_phase_.resize(static_cast<std::size_t>(N));
    kick_phase_.resize(static_cast<std::size_t>(N));
    for (std::int64_t s = 0; s < N; ++s) {
        const auto n = static_cast<double>(momentum_for_slot(s, params_.n_q));
        const double kin = -params_.T * n * n / 2.0;
        kinetic_phase_[static_cast<std::size_t>(s)] = cplx{std::cos(kin), std::sin(kin)};

        const double theta = kTwoPi * static_cast<double>(s) / static_cast<double>(N);
        const double dev = theta - std::numbers::pi;
        const double kick = params_.k * dev * dev;
        kick_phase_[static_cast<std::size_t>(s)] = cplx{std::cos(kick), std::sin(kick)};
    }
}

void FloquetOperator::check_state(const StateVector& psi) const {
    if (psi.n_q() != params_.n_q) {
        throw ArgumentError("state has " + std::to_string(psi.n_q()) +
                            " qubits, map expects " + std::to_string(params_.n_q));
    }
    if (psi.basis() != Basis::momentum) {
        throw StateError("Floquet operator acts on momentum-basis states");
    }
}

void FloquetOperator::apply_in_place(StateVector& psi) const {
    check_state(psi);
    cplx* a = psi.data();
    const std::int64_t N = psi.dim();
    for (std::int64_t s = 0; s < N; ++s) a[s] *= kinetic_phase_[static_cast<std::size_t>(s)];
    impl_->fft.transform(a, +1);
    for (std::int64_t j = 0; j < N; ++j) a[j] *= kick_phase_[static_cast<std::size_t>(j)];
    impl_->fft.transform(a, -1);
}

StateVector FloquetOperator::apply(const StateVector& psi) const {
    StateVector out = psi;
    apply_in_place(out);
    return out;
}

StateVector dft_momentum_to_angle(const StateVector& psi) {
    return dft_impl(psi, Basis::momentum, Basis::angle, +1);
}

StateVector dft_angle_to_momentum(const StateVector& psi) {
    return dft_impl(psi, Basis::angle, Basis::momentum, -1);
}

StateVector apply_floquet(const StateVector& psi, const MapParams& params) {
    return FloquetOperator(params).apply(psi);
}

StateVector evolve(const StateVector& psi0, const MapParams& params,
                   std::int64_t steps, std::span<const StepObserver> observers) {
    if (steps < 0) {
        throw ArgumentError("step count must be >= 0, got " + std::to_string(steps));
    }
    StateVector psi = psi0;
    if (steps == 0) return psi;
    const FloquetOperator op(params);
    for (std::int64_t t = 1; t <= steps; ++t) {
        op.apply_in_place(psi);
        for (const StepObserver& obs : observers) obs(t, psi);
    }
    return psi;
}

}  // namespace qsm
