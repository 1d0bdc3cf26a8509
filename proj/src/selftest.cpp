#include <cmath>
#include <ostream>

#include "qsm/dynamics.hpp"
#include "qsm/entanglement.hpp"
#include "qsm/oracle.hpp"
#include "qsm/scenario.hpp"

namespace qsm {

namespace {

double max_amp_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

double max_entry_diff(const DensityMatrix& a, const DensityMatrix& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        worst = std::max(worst, std::abs(a.entries[i] - b.entries[i]));
    }
    return worst;
}

struct Check {
    std::ostream& out;
    bool all_ok = true;
    void report(const std::string& name, bool ok, const std::string& detail) {
        out << (ok ? "[ok]   " : "[FAIL] ") << name << " (" << detail << ")\n";
        all_ok = all_ok && ok;
    }
};

}  // namespace

bool run_selftest(std::ostream& out) {
    Check check{out};

    // Transform vs direct summation, both directions, n_q <= 6.
    {
        double worst = 0.0;
        for (int n_q = 2; n_q <= 6; ++n_q) {
            for (std::uint64_t seed = 1; seed <= 3; ++seed) {
                const StateVector psi = oracle::random_state(n_q, 1000 * seed + n_q);
                const StateVector fwd = dft_momentum_to_angle(psi);
                worst = std::max(worst,
                                 max_amp_diff(fwd.amplitudes(),
                                              oracle::direct_dft(psi.amplitudes(), +1)));
                const StateVector back = dft_angle_to_momentum(fwd);
                worst = std::max(worst, max_amp_diff(back.amplitudes(), psi.amplitudes()));
            }
        }
        check.report("transform vs direct summation", worst < 1e-10,
                     "max amplitude error " + std::to_string(worst));
    }

    // Bit-indexed reductions vs dense contraction, every pair and every
    // contiguous block, n_q <= 6.
    {
        double worst = 0.0;
        for (int n_q = 2; n_q <= 6; ++n_q) {
            const StateVector psi = oracle::random_state(n_q, 77 + static_cast<unsigned>(n_q));
            for (int i = 1; i <= n_q; ++i) {
                for (int j = i + 1; j <= n_q; ++j) {
                    worst = std::max(worst, max_entry_diff(reduce_to_pair(psi, i, j),
                                                           oracle::dense_block_rdm(psi, {i, j})));
                }
            }
            for (int a = 1; a <= n_q; ++a) {
                for (int b = a; b <= n_q; ++b) {
                    if (b - a + 1 >= n_q) continue;
                    std::vector<int> block;
                    for (int q = a; q <= b; ++q) block.push_back(q);
                    worst = std::max(worst, max_entry_diff(reduce_to_block(psi, block),
                                                           oracle::dense_block_rdm(psi, block)));
                }
            }
        }
        check.report("partial trace vs dense contraction", worst < 1e-12,
                     "max entry error " + std::to_string(worst));
    }

    // Concurrence analytic suite; Werner confirmed by the Jacobi oracle on
    // R = rho * rho_tilde directly.
    {
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        std::vector<cplx> bell_amps = {inv_sqrt2, 0.0, 0.0, inv_sqrt2};
        const StateVector bell(2, bell_amps, Basis::momentum);
        const double c_bell = concurrence_of_pair(bell, 1, 2);

        const StateVector product = momentum_eigenstate(2, 0);
        const double c_product = concurrence_of_pair(product, 1, 2);

        DensityMatrix werner;
        werner.dim = 4;
        werner.subject_qubits = {1, 2};
        werner.entries.assign(16, cplx{0.0, 0.0});
        const double p = 0.8;
        for (int d = 0; d < 4; ++d) werner.at(d, d) = (1.0 - p) / 4.0;
        werner.at(0, 0) += p / 2.0;
        werner.at(3, 3) += p / 2.0;
        werner.at(0, 3) += p / 2.0;
        werner.at(3, 0) += p / 2.0;
        const double c_werner = concurrence(werner).value;

        // Oracle route: R = rho * rho_tilde (real symmetric for this state),
        // eigenvalues by Jacobi.
        std::vector<cplx> tilde(16), r_matrix(16, cplx{0.0, 0.0});
        static const double sign[4] = {-1.0, 1.0, 1.0, -1.0};
        for (int l = 0; l < 4; ++l)
            for (int m = 0; m < 4; ++m)
                tilde[static_cast<std::size_t>(l * 4 + m)] =
                    sign[l] * sign[m] * std::conj(werner.at(3 - l, 3 - m));
        for (int l = 0; l < 4; ++l)
            for (int m = 0; m < 4; ++m)
                for (int d = 0; d < 4; ++d)
                    r_matrix[static_cast<std::size_t>(l * 4 + m)] +=
                        werner.at(l, d) * tilde[static_cast<std::size_t>(d * 4 + m)];
        const std::vector<double> ev = oracle::jacobi_eigenvalues(r_matrix, 4);
        double lambda[4];
        for (int d = 0; d < 4; ++d) lambda[d] = std::sqrt(std::max(ev[static_cast<std::size_t>(d)], 0.0));
        const double c_oracle = std::max(lambda[3] - lambda[2] - lambda[1] - lambda[0], 0.0);

        const bool ok = std::abs(c_bell - 1.0) < 1e-9 && c_product == 0.0 &&
                        std::abs(c_werner - 0.7) < 1e-9 && std::abs(c_oracle - 0.7) < 1e-9;
        check.report("concurrence analytic suite", ok,
                     "Bell " + std::to_string(c_bell) + ", product " + std::to_string(c_product) +
                         ", Werner " + std::to_string(c_werner) + ", Werner-oracle " +
                         std::to_string(c_oracle));
    }

    // Entropy: pure zero, maximally mixed one bit, complementarity.
    {
        const StateVector product = momentum_eigenstate(3, 2);
        const double s_pure = von_neumann_entropy(reduce_to_block(product, {1, 2}));

        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        std::vector<cplx> bell_amps = {inv_sqrt2, 0.0, 0.0, inv_sqrt2};
        const StateVector bell(2, bell_amps, Basis::momentum);
        const double s_mixed = von_neumann_entropy(reduce_to_block(bell, {1}));

        double worst_gap = 0.0;
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const StateVector psi = oracle::random_state(8, 31000 + seed);
            std::vector<int> a_block = {1, 2, 3};
            std::vector<int> b_block = {4, 5, 6, 7, 8};
            const double sa = von_neumann_entropy(reduce_to_block(psi, a_block));
            const double sb = von_neumann_entropy(reduce_to_block(psi, b_block));
            worst_gap = std::max(worst_gap, std::abs(sa - sb));
        }
        const bool ok = std::abs(s_pure) < 1e-12 && std::abs(s_mixed - 1.0) < 1e-12 &&
                        worst_gap < 1e-9;
        check.report("entropy suite", ok,
                     "pure " + std::to_string(s_pure) + ", I/2 " + std::to_string(s_mixed) +
                         ", complementarity gap " + std::to_string(worst_gap));
    }

    out << (check.all_ok ? "selftest passed\n" : "selftest FAILED\n");
    return check.all_ok;
}

}  // namespace qsm
