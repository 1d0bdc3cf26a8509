#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qsm/entanglement.hpp"
#include "qsm/oracle.hpp"
#include "support/helpers.hpp"

using namespace qsm;

namespace {

double max_entry_diff(const DensityMatrix& a, const DensityMatrix& b) {
    REQUIRE(a.dim == b.dim);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        worst = std::max(worst, std::abs(a.entries[i] - b.entries[i]));
    }
    return worst;
}

DensityMatrix werner(double p) {
    DensityMatrix rho;
    rho.dim = 4;
    rho.subject_qubits = {1, 2};
    rho.entries.assign(16, cplx{0.0, 0.0});
    for (int d = 0; d < 4; ++d) rho.at(d, d) = (1.0 - p) / 4.0;
    rho.at(0, 0) += p / 2.0;
    rho.at(3, 3) += p / 2.0;
    rho.at(0, 3) += p / 2.0;
    rho.at(3, 0) += p / 2.0;
    return rho;
}

}  // namespace

TEST_CASE("pair reduction of a basis state is the coding projector") {
    // slot 5: alpha_1 = 1, alpha_2 = 0, alpha_3 = 1; pair (1,3) -> |11>
    const StateVector psi = momentum_eigenstate(3, momentum_for_slot(5, 3));
    const DensityMatrix rho = reduce_to_pair(psi, 1, 3);
    CHECK(rho.at(3, 3).real() == doctest::Approx(1.0).epsilon(1e-14));
    for (int l = 0; l < 4; ++l) {
        for (int m = 0; m < 4; ++m) {
            if (l == 3 && m == 3) continue;
            CHECK(std::abs(rho.at(l, m)) < 1e-14);
        }
    }
}

TEST_CASE("two-branch superposition reduces to a Bell pair") {
    // (|slot 0> + |slot 5>)/sqrt(2): qubit 2 is 0 in both branches
    const StateVector psi = test::make_state(3, {cplx{1, 0}, 0, 0, 0, 0, cplx{1, 0}, 0, 0});
    const DensityMatrix rho = reduce_to_pair(psi, 1, 3);
    CHECK(rho.at(0, 0).real() == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(rho.at(3, 3).real() == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(rho.at(0, 3).real() == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(concurrence(rho).value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pair reduction matches the dense oracle on random states") {
    const StateVector psi = oracle::random_state(5, 2024);
    for (int i = 1; i <= 5; ++i) {
        for (int j = i + 1; j <= 5; ++j) {
            const DensityMatrix fast = reduce_to_pair(psi, i, j);
            const DensityMatrix dense = oracle::dense_block_rdm(psi, {i, j});
            CHECK(max_entry_diff(fast, dense) < 1e-12);
        }
    }
}

TEST_CASE("pair reduction validates its arguments") {
    const StateVector psi = momentum_eigenstate(4, 0);
    CHECK_THROWS_AS(reduce_to_pair(psi, 2, 2), ArgumentError);
    CHECK_THROWS_AS(reduce_to_pair(psi, 3, 2), ArgumentError);
    CHECK_THROWS_AS(reduce_to_pair(psi, 0, 2), ArgumentError);
    CHECK_THROWS_AS(reduce_to_pair(psi, 1, 5), ArgumentError);
}

TEST_CASE("block reduction of product structure is pure") {
    const StateVector basis = momentum_eigenstate(5, 7);
    CHECK(von_neumann_entropy(reduce_to_block(basis, {1, 2, 3, 4})) ==
          doctest::Approx(0.0).epsilon(1e-12));

    // uniform superposition = |+>^n, every block pure
    std::vector<cplx> amps(32, cplx{1.0 / std::sqrt(32.0), 0.0});
    const StateVector uniform(5, std::move(amps), Basis::momentum);
    CHECK(von_neumann_entropy(reduce_to_block(uniform, {2, 3, 4})) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("block and pair reductions agree where they overlap") {
    const StateVector psi = oracle::random_state(5, 88);
    const DensityMatrix via_block = reduce_to_block(psi, {2, 4});
    const DensityMatrix via_pair = reduce_to_pair(psi, 2, 4);
    CHECK(max_entry_diff(via_block, via_pair) < 1e-14);
}

TEST_CASE("block reduction matches the dense oracle on every contiguous block") {
    for (int n_q = 3; n_q <= 6; ++n_q) {
        const StateVector psi = oracle::random_state(n_q, 300u + static_cast<unsigned>(n_q));
        for (int a = 1; a <= n_q; ++a) {
            for (int b = a; b <= n_q; ++b) {
                if (b - a + 1 >= n_q) continue;
                std::vector<int> block;
                for (int q = a; q <= b; ++q) block.push_back(q);
                CHECK(max_entry_diff(reduce_to_block(psi, block),
                                     oracle::dense_block_rdm(psi, block)) < 1e-12);
            }
        }
    }
}

TEST_CASE("block reduction rejects degenerate and malformed label lists") {
    const StateVector psi = momentum_eigenstate(4, 0);
    CHECK_THROWS_AS(reduce_to_block(psi, {1, 2, 3, 4}), ArgumentError);
    CHECK_THROWS_AS(reduce_to_block(psi, {}), ArgumentError);
    CHECK_THROWS_AS(reduce_to_block(psi, {2, 1}), ArgumentError);
    CHECK_THROWS_AS(reduce_to_block(psi, {1, 1}), ArgumentError);
    CHECK_THROWS_AS(reduce_to_block(psi, {0, 2}), ArgumentError);
}

TEST_CASE("concurrence analytic values") {
    const StateVector bell = test::make_state(2, {cplx{1, 0}, 0, 0, cplx{1, 0}});
    const ConcurrenceResult bell_result = concurrence(reduce_to_pair(bell, 1, 2));
    CHECK(bell_result.value == doctest::Approx(1.0).epsilon(1e-12));

    const StateVector product = momentum_eigenstate(2, 0);
    CHECK(concurrence_of_pair(product, 1, 2) == 0.0);

    CHECK(concurrence(werner(0.8)).value == doctest::Approx(0.7).epsilon(1e-12));
    // separable Werner state below p = 1/3
    CHECK(concurrence(werner(0.2)).value == 0.0);
}

TEST_CASE("werner concurrence agrees with the standalone eigen-solve oracle") {
    const DensityMatrix rho = werner(0.8);
    std::vector<cplx> tilde(16);
    std::vector<cplx> r_matrix(16, cplx{0.0, 0.0});
    static const double sign[4] = {-1.0, 1.0, 1.0, -1.0};
    for (int l = 0; l < 4; ++l)
        for (int m = 0; m < 4; ++m)
            tilde[static_cast<std::size_t>(l * 4 + m)] =
                sign[l] * sign[m] * std::conj(rho.at(3 - l, 3 - m));
    for (int l = 0; l < 4; ++l)
        for (int m = 0; m < 4; ++m)
            for (int d = 0; d < 4; ++d)
                r_matrix[static_cast<std::size_t>(l * 4 + m)] +=
                    rho.at(l, d) * tilde[static_cast<std::size_t>(d * 4 + m)];
    const std::vector<double> ev = oracle::jacobi_eigenvalues(r_matrix, 4);
    double lambda[4];
    for (int d = 0; d < 4; ++d) lambda[d] = std::sqrt(std::max(ev[static_cast<std::size_t>(d)], 0.0));
    const double c_oracle = std::max(lambda[3] - lambda[2] - lambda[1] - lambda[0], 0.0);
    CHECK(c_oracle == doctest::Approx(0.7).epsilon(1e-9));
    CHECK(concurrence(rho).value == doctest::Approx(c_oracle).epsilon(1e-9));
}

TEST_CASE("concurrence result satisfies its own structural invariants") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const StateVector psi = oracle::random_state(4, 4242 + seed);
        const ConcurrenceResult result = concurrence(reduce_to_pair(psi, 1, 3));
        CHECK(result.lambdas[0] >= result.lambdas[1]);
        CHECK(result.lambdas[1] >= result.lambdas[2]);
        CHECK(result.lambdas[2] >= result.lambdas[3]);
        CHECK(result.lambdas[3] >= 0.0);
        const double diff =
            result.lambdas[0] - result.lambdas[1] - result.lambdas[2] - result.lambdas[3];
        CHECK(result.value == std::max(diff, 0.0));
    }
}

TEST_CASE("lambda consistency: sum of squares equals the trace of rho rho~") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const StateVector psi = oracle::random_state(4, 5000 + seed);
        const DensityMatrix rho = reduce_to_pair(psi, 1, 3);
        const ConcurrenceResult result = concurrence(rho);

        static const double sign[4] = {-1.0, 1.0, 1.0, -1.0};
        cplx trace{0.0, 0.0};
        for (int l = 0; l < 4; ++l)
            for (int d = 0; d < 4; ++d)
                trace += rho.at(l, d) * sign[d] * sign[l] * std::conj(rho.at(3 - d, 3 - l));
        double sum_sq = 0.0;
        for (const double lambda : result.lambdas) sum_sq += lambda * lambda;
        CHECK(sum_sq == doctest::Approx(trace.real()).epsilon(1e-9));
    }
}

TEST_CASE("concurrence bounds hold on many random marginals") {
    for (std::uint64_t seed = 1; seed <= 10000; ++seed) {
        const StateVector psi = oracle::random_state(4, 100000 + seed);
        const double c = concurrence_of_pair(psi, 1, 2);
        CHECK(c >= 0.0);
        CHECK(c <= 1.0 + 1e-12);
    }
}

TEST_CASE("concurrence is invariant under local unitaries on the pair") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const StateVector psi = oracle::random_state(5, 777 + seed);
        const double before = concurrence_of_pair(psi, 2, 4);
        const double a = 0.37 * static_cast<double>(seed);
        const StateVector rotated = test::apply_single_qubit_unitary(
            test::apply_single_qubit_unitary(psi, 2, test::su2(a, 1.1 * a, 0.6 * a)), 4,
            test::su2(0.9 * a, 0.2 * a, 1.7 * a));
        const double after = concurrence_of_pair(rotated, 2, 4);
        CHECK(after == doctest::Approx(before).epsilon(1e-9));
    }
}

TEST_CASE("concurrence reports degraded inputs instead of clamping them") {
    DensityMatrix bad;
    bad.dim = 4;
    bad.subject_qubits = {1, 2};
    bad.entries.assign(16, cplx{0.0, 0.0});
    bad.at(0, 0) = 1.2;
    bad.at(1, 1) = -0.2;
    CHECK_THROWS_AS(concurrence(bad), NumericalDegradationError);
    CHECK_THROWS_AS(von_neumann_entropy(bad), NumericalDegradationError);

    DensityMatrix not_normalized = werner(0.5);
    not_normalized.at(0, 0) += 0.1;
    CHECK_THROWS_AS(concurrence(not_normalized), ArgumentError);

    DensityMatrix not_hermitian = werner(0.5);
    not_hermitian.at(0, 1) = cplx{0.2, 0.0};
    CHECK_THROWS_AS(concurrence(not_hermitian), ArgumentError);
}

TEST_CASE("entropy analytic values") {
    const StateVector basis = momentum_eigenstate(3, 1);
    CHECK(von_neumann_entropy(reduce_to_block(basis, {1, 2})) ==
          doctest::Approx(0.0).epsilon(1e-12));

    DensityMatrix half;
    half.dim = 2;
    half.subject_qubits = {1};
    half.entries = {cplx{0.5, 0.0}, cplx{0.0, 0.0}, cplx{0.0, 0.0}, cplx{0.5, 0.0}};
    CHECK(von_neumann_entropy(half) == doctest::Approx(1.0).epsilon(1e-12));

    DensityMatrix mixed3;
    mixed3.dim = 8;
    mixed3.subject_qubits = {1, 2, 3};
    mixed3.entries.assign(64, cplx{0.0, 0.0});
    for (int d = 0; d < 8; ++d) mixed3.at(d, d) = 0.125;
    CHECK(von_neumann_entropy(mixed3) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("pairwise marginals of the GHZ state are separable") {
    const double inv = 1.0 / std::sqrt(2.0);
    const StateVector ghz = test::make_state(3, {cplx{inv, 0}, 0, 0, 0, 0, 0, 0, cplx{inv, 0}});
    CHECK(concurrence_of_pair(ghz, 1, 2) == 0.0);
    CHECK(concurrence_of_pair(ghz, 1, 3) == 0.0);
    CHECK(concurrence_of_pair(ghz, 2, 3) == 0.0);
}

TEST_CASE("bell pair in a larger register keeps its concurrence across the cut") {
    // Bell on (1,2), qubit 3 in |0>: slots 0 and 3
    const StateVector psi = test::make_state(3, {cplx{1, 0}, 0, 0, cplx{1, 0}, 0, 0, 0, 0});
    CHECK(concurrence_of_pair(psi, 1, 2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(concurrence_of_pair(psi, 1, 3) == 0.0);
}

TEST_CASE("tracing one qubit out of a pair matrix matches the single-qubit block") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const StateVector psi = oracle::random_state(8, 90000 + seed);
        for (int i = 1; i <= 3; ++i) {
            for (int j = i + 1; j <= 4; ++j) {
                const DensityMatrix pair = reduce_to_pair(psi, i, j);
                // trace out qubit j (the high bit of the pair index)
                DensityMatrix single;
                single.dim = 2;
                single.subject_qubits = {i};
                single.entries.assign(4, cplx{0.0, 0.0});
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        for (int bj = 0; bj < 2; ++bj)
                            single.at(a, b) += pair.at(a + 2 * bj, b + 2 * bj);
                const DensityMatrix block = reduce_to_block(psi, {i});
                double worst = 0.0;
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        worst = std::max(worst, std::abs(single.at(a, b) - block.at(a, b)));
                CHECK(worst < 1e-12);
            }
        }
    }
}

TEST_CASE("complementarity: both sides of a pure-state bipartition agree") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const StateVector psi = oracle::random_state(8, 60000 + seed);
        const int m = 1 + static_cast<int>(seed % 7);
        std::vector<int> a_block;
        std::vector<int> b_block;
        for (int q = 1; q <= 8; ++q) (q <= m ? a_block : b_block).push_back(q);
        const double sa = von_neumann_entropy(reduce_to_block(psi, a_block));
        const double sb = von_neumann_entropy(reduce_to_block(psi, b_block));
        CHECK(sa == doctest::Approx(sb).epsilon(1e-9));
    }
}
