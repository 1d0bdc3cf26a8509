#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>

#include "qsm/dynamics.hpp"
#include "qsm/oracle.hpp"

using namespace qsm;

namespace {

double max_amp_diff(const StateVector& a, const StateVector& b) {
    double worst = 0.0;
    for (std::int64_t s = 0; s < a.dim(); ++s) worst = std::max(worst, std::abs(a[s] - b[s]));
    return worst;
}

}  // namespace

TEST_CASE("map parameters derive T and k exactly") {
    const MapParams p(10, std::sqrt(2.0), 1000);
    CHECK(p.T == 2.0 * std::numbers::pi * 1000.0 / 1024.0);
    CHECK(std::abs(p.k * p.T - p.K) <= 1e-12 * p.K);
    CHECK_THROWS_AS(MapParams(10, 0.0, 100), DomainError);
    CHECK_THROWS_AS(MapParams(10, -1.0, 100), DomainError);
    CHECK_THROWS_AS(MapParams(10, 1.0, 0), DomainError);
    CHECK_THROWS_AS(MapParams(1, 1.0, 10), SizeError);
}

TEST_CASE("transform of a delta is uniform with zero phase") {
    const StateVector delta = momentum_eigenstate(6, 0);
    const StateVector angle = dft_momentum_to_angle(delta);
    const double expected = 1.0 / 8.0;
    for (std::int64_t j = 0; j < 64; ++j) {
        CHECK(angle[j].real() == doctest::Approx(expected).epsilon(1e-12));
        CHECK(std::abs(angle[j].imag()) < 1e-14);
    }
    CHECK(angle.basis() == Basis::angle);
}

TEST_CASE("transform of a uniform state is a delta at zero") {
    std::vector<cplx> amps(64, cplx{1.0 / 8.0, 0.0});
    const StateVector uniform(6, std::move(amps), Basis::angle);
    const StateVector momentum = dft_angle_to_momentum(uniform);
    CHECK(std::abs(momentum[0] - cplx{1.0, 0.0}) < 1e-12);
    for (std::int64_t s = 1; s < 64; ++s) CHECK(std::abs(momentum[s]) < 1e-12);
}

TEST_CASE("transform round trip is the identity within 1e-12") {
    const StateVector psi = oracle::random_state(8, 1234);
    const StateVector back = dft_angle_to_momentum(dft_momentum_to_angle(psi));
    CHECK(max_amp_diff(psi, back) < 1e-12);
    CHECK(back.basis() == Basis::momentum);

    const StateVector fwd = dft_momentum_to_angle(psi);
    CHECK(std::abs(fwd.norm_sq() - 1.0) < 1e-12);
}

TEST_CASE("transform requires the matching basis tag") {
    const StateVector psi = momentum_eigenstate(4, 1);
    CHECK_THROWS_AS(dft_angle_to_momentum(psi), StateError);
    const StateVector angle = dft_momentum_to_angle(psi);
    CHECK_THROWS_AS(dft_momentum_to_angle(angle), StateError);
}

TEST_CASE("transform matches direct summation up to n_q = 6") {
    double worst = 0.0;
    for (int n_q = 2; n_q <= 6; ++n_q) {
        const StateVector psi = oracle::random_state(n_q, 55u + static_cast<unsigned>(n_q));
        const StateVector fwd = dft_momentum_to_angle(psi);
        const std::vector<cplx> expect = oracle::direct_dft(psi.amplitudes(), +1);
        for (std::int64_t s = 0; s < psi.dim(); ++s) {
            worst = std::max(worst, std::abs(fwd[s] - expect[static_cast<std::size_t>(s)]));
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("unit phases reduce the split-operator step to the identity") {
    // with both diagonal factors forced to one the step is dft then inverse
    const StateVector psi = oracle::random_state(9, 99);
    const StateVector round = dft_angle_to_momentum(dft_momentum_to_angle(psi));
    CHECK(max_amp_diff(psi, round) < 1e-12);
}

TEST_CASE("floquet step is unitary and moves the eigenstate") {
    const MapParams p(10, std::sqrt(2.0) / 2.0, 300);
    const StateVector psi = momentum_eigenstate(10, 0);
    const StateVector out = apply_floquet(psi, p);
    CHECK(std::abs(out.norm_sq() - 1.0) < 1e-12);
    CHECK(std::abs(out[0]) < 1.0);  // k > 0 spreads the state
}

TEST_CASE("floquet step rejects mismatched dimensions and bases") {
    const MapParams p(5, 1.0, 10);
    CHECK_THROWS_AS(apply_floquet(momentum_eigenstate(4, 0), p), ArgumentError);
    const StateVector angle = dft_momentum_to_angle(momentum_eigenstate(5, 0));
    CHECK_THROWS_AS(apply_floquet(angle, p), StateError);
}

TEST_CASE("kinetic phases depend only on n^2") {
    const MapParams p(8, 1.2, 37);
    const FloquetOperator op(p);
    const auto phases = op.kinetic_phases();
    for (std::int64_t n = 1; n < 128; ++n) {
        const auto plus = static_cast<std::size_t>(slot_for_momentum(n, 8));
        const auto minus = static_cast<std::size_t>(slot_for_momentum(-n, 8));
        CHECK(phases[plus] == phases[minus]);
    }
}

TEST_CASE("evolve composes like a semigroup and honors step zero") {
    const MapParams p(8, 0.9, 60);
    const StateVector psi = oracle::random_state(8, 7);

    const StateVector unchanged = evolve(psi, p, 0);
    CHECK(max_amp_diff(psi, unchanged) == 0.0);

    const StateVector direct = evolve(psi, p, 50);
    const StateVector split = evolve(evolve(psi, p, 30), p, 20);
    CHECK(max_amp_diff(direct, split) < 1e-10);

    CHECK_THROWS_AS(evolve(psi, p, -1), ArgumentError);
}

TEST_CASE("evolve invokes observers once per step in order") {
    const MapParams p(6, 1.0, 20);
    std::vector<std::int64_t> seen;
    std::vector<StepObserver> observers;
    observers.push_back([&seen](std::int64_t step, const StateVector& state) {
        seen.push_back(step);
        CHECK(state.basis() == Basis::momentum);
    });
    evolve(momentum_eigenstate(6, 0), p, 5, observers);
    CHECK(seen == std::vector<std::int64_t>{1, 2, 3, 4, 5});
}

TEST_CASE("evolution is bitwise deterministic") {
    const MapParams p(9, std::sqrt(2.0) / 2.0, 111);
    const StateVector a = evolve(momentum_eigenstate(9, 3), p, 200);
    const StateVector b = evolve(momentum_eigenstate(9, 3), p, 200);
    CHECK(std::memcmp(a.data(), b.data(), sizeof(cplx) * static_cast<std::size_t>(a.dim())) == 0);
}

TEST_CASE("norm drift stays tiny over a thousand steps") {
    const MapParams p(10, std::sqrt(2.0) / 2.0, 75);
    StateVector psi = momentum_eigenstate(10, 0);
    const FloquetOperator op(p);
    for (int t = 0; t < 1000; ++t) op.apply_in_place(psi);
    CHECK(std::abs(psi.norm_sq() - 1.0) < 1e-10);
}
