#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "qsm/entanglement.hpp"
#include "qsm/statevec.hpp"

using namespace qsm;

TEST_CASE("momentum eigenstate places a single unit amplitude") {
    const StateVector zero = momentum_eigenstate(3, 0);
    CHECK(zero[0] == cplx{1.0, 0.0});
    for (std::int64_t s = 1; s < 8; ++s) CHECK(zero[s] == cplx{0.0, 0.0});

    const StateVector negative = momentum_eigenstate(3, -1);
    CHECK(negative[7] == cplx{1.0, 0.0});

    const StateVector five = momentum_eigenstate(10, 5);
    CHECK(five[5] == cplx{1.0, 0.0});
    CHECK(qubit_bit(5, 1) == 1);
    CHECK(qubit_bit(5, 2) == 0);
    CHECK(qubit_bit(5, 3) == 1);
    CHECK(five.norm_sq() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("momentum eigenstate rejects bad arguments") {
    CHECK_THROWS_AS(momentum_eigenstate(1, 0), SizeError);
    CHECK_THROWS_AS(momentum_eigenstate(27, 0), SizeError);
    CHECK_THROWS_AS(momentum_eigenstate(3, 5), IndexError);
    CHECK_THROWS_AS(momentum_eigenstate(3, -4), IndexError);
    CHECK_NOTHROW(momentum_eigenstate(3, 4));  // N/2 is inside the window
}

TEST_CASE("slot and momentum maps invert each other over the whole window") {
    const int n_q = 5;
    const std::int64_t N = 32;
    for (std::int64_t n = -N / 2 + 1; n <= N / 2; ++n) {
        CHECK(momentum_for_slot(slot_for_momentum(n, n_q), n_q) == n);
    }
    CHECK(slot_for_momentum(-1, n_q) == N - 1);
    CHECK_THROWS_AS(slot_for_momentum(N, n_q), IndexError);
    CHECK_THROWS_AS(momentum_for_slot(-1, n_q), IndexError);
    CHECK_THROWS_AS(momentum_for_slot(N, n_q), IndexError);
}

TEST_CASE("coarse-graining distance uses the storage bit weights") {
    CHECK(coarse_graining_distance(1, 2) == 1);
    CHECK(coarse_graining_distance(1, 4) == 7);
    CHECK(coarse_graining_distance(3, 5) == 12);
    CHECK(coarse_graining_distance(5, 3) == 12);
    CHECK_THROWS_AS(coarse_graining_distance(2, 2), ArgumentError);
    CHECK_THROWS_AS(coarse_graining_distance(0, 1), ArgumentError);
}

TEST_CASE("flat-phase localized state populates the requested window") {
    const StateVector single = flat_phase_localized_state(4, 1.0, 3, 42);
    CHECK(std::abs(single[3]) == doctest::Approx(1.0).epsilon(1e-14));
    for (std::int64_t s = 0; s < 16; ++s) {
        if (s != 3) CHECK(single[s] == cplx{0.0, 0.0});
    }

    const StateVector four = flat_phase_localized_state(6, 4.0, 10, 7);
    int populated = 0;
    for (std::int64_t s = 0; s < 64; ++s) {
        if (std::abs(four[s]) > 0.0) {
            ++populated;
            CHECK(std::abs(four[s]) == doctest::Approx(0.5).epsilon(1e-13));
        }
    }
    CHECK(populated == 4);
    CHECK(four.norm_sq() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("flat-phase seed changes phases, not moduli") {
    const StateVector a = flat_phase_localized_state(8, 16.0, 100, 1);
    const StateVector b = flat_phase_localized_state(8, 16.0, 100, 2);
    bool phases_differ = false;
    for (std::int64_t s = 0; s < a.dim(); ++s) {
        CHECK(std::abs(a[s]) == doctest::Approx(std::abs(b[s])).epsilon(1e-13));
        if (std::abs(a[s] - b[s]) > 1e-6) phases_differ = true;
    }
    CHECK(phases_differ);

    // same seed reproduces the state bitwise
    const StateVector c = flat_phase_localized_state(8, 16.0, 100, 1);
    for (std::int64_t s = 0; s < a.dim(); ++s) CHECK(a[s] == c[s]);
}

TEST_CASE("flat-phase state rejects windows outside the momentum range") {
    CHECK_THROWS_AS(flat_phase_localized_state(4, 4.0, 6, 1), DomainError);
    CHECK_THROWS_AS(flat_phase_localized_state(4, 1.0, -8, 1), DomainError);
    CHECK_THROWS_AS(flat_phase_localized_state(4, 0.5, 0, 1), DomainError);
    CHECK_NOTHROW(flat_phase_localized_state(4, 4.0, 5, 1));
}

TEST_CASE("non-integer window widths round up to a whole slot count") {
    const StateVector psi = flat_phase_localized_state(6, 2.5, 4, 9);
    int populated = 0;
    for (std::int64_t s = 0; s < 64; ++s) {
        if (std::abs(psi[s]) > 0.0) ++populated;
    }
    CHECK(populated == 3);
}

TEST_CASE("state vector construction validates size and norm") {
    CHECK_THROWS_AS(StateVector(3, std::vector<cplx>(4, cplx{0.5, 0.0}), Basis::momentum),
                    SizeError);
    CHECK_THROWS_AS(StateVector(2, std::vector<cplx>(4, cplx{0.7, 0.0}), Basis::momentum),
                    ArgumentError);
}

TEST_CASE("coding consistency: eigenstate marginals are the coding bits") {
    // single-qubit reduced state of |slot s> is the pure |bit_{i-1}(s)>
    const int n_q = 4;
    for (const std::int64_t slot : {std::int64_t{0}, std::int64_t{5}, std::int64_t{11}}) {
        const StateVector psi = momentum_eigenstate(n_q, momentum_for_slot(slot, n_q));
        for (int i = 1; i <= n_q; ++i) {
            const DensityMatrix rho = reduce_to_block(psi, {i});
            const int bit = qubit_bit(slot, i);
            CHECK(rho.at(bit, bit).real() == doctest::Approx(1.0).epsilon(1e-13));
            CHECK(rho.at(1 - bit, 1 - bit).real() == doctest::Approx(0.0).epsilon(1e-13));
        }
    }
}
