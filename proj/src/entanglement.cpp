#include "qsm/entanglement.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

namespace qsm {

namespace {

constexpr double kPsdFloor = -1e-10;        // eigenvalue clamp floor
constexpr double kEntropyCutoff = 1e-14;    // eigenvalues dropped from the entropy sum
constexpr double kInvariantTol = 1e-10;

void check_momentum_basis(const StateVector& psi) {
    if (psi.basis() != Basis::momentum) {
        throw StateError("entanglement measures require a momentum-basis state");
    }
}

Eigen::MatrixXcd to_eigen(const DensityMatrix& rho) {
    Eigen::MatrixXcd m(rho.dim, rho.dim);
    for (int r = 0; r < rho.dim; ++r)
        for (int c = 0; c < rho.dim; ++c) m(r, c) = rho.at(r, c);
    return m;
}

// Eigenvalues of a Hermitian matrix with the PSD floor applied: values below
// kPsdFloor are a hard error, values in [kPsdFloor, 0) are rounded up to 0.
Eigen::VectorXd psd_eigenvalues(const Eigen::MatrixXcd& m, const char* what) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    Eigen::VectorXd ev = solver.eigenvalues();
    for (Eigen::Index idx = 0; idx < ev.size(); ++idx) {
        if (ev[idx] < kPsdFloor) {
            throw NumericalDegradationError(std::string(what) + " eigenvalue " +
                                            std::to_string(ev[idx]) +
                                            " below the -1e-10 floor");
        }
        if (ev[idx] < 0.0) ev[idx] = 0.0;
    }
    return ev;
}

void check_invariants(const DensityMatrix& rho) {
    if (rho.dim < 2 || rho.entries.size() != static_cast<std::size_t>(rho.dim) * rho.dim) {
        throw ArgumentError("density matrix storage does not match its dimension");
    }
    if (rho.hermiticity_error() > kInvariantTol) {
        throw ArgumentError("density matrix is not Hermitian within 1e-10");
    }
    if (std::abs(rho.trace_real() - 1.0) > kInvariantTol) {
        throw ArgumentError("density matrix trace deviates from 1 beyond 1e-10");
    }
}

void check_qubit_label(int label, int n_q) {
    if (label < 1 || label > n_q) {
        throw ArgumentError("qubit label " + std::to_string(label) +
                            " outside [1, " + std::to_string(n_q) + "]");
    }
}

}  // namespace

double DensityMatrix::trace_real() const {
    double t = 0.0;
    for (int r = 0; r < dim; ++r) t += at(r, r).real();
    return t;
}

double DensityMatrix::hermiticity_error() const {
    double worst = 0.0;
    for (int r = 0; r < dim; ++r)
        for (int c = r; c < dim; ++c)
            worst = std::max(worst, std::abs(at(r, c) - std::conj(at(c, r))));
    return worst;
}

DensityMatrix reduce_to_pair(const StateVector& psi, int i, int j) {
    check_momentum_basis(psi);
    check_qubit_label(i, psi.n_q());
    check_qubit_label(j, psi.n_q());
    if (i >= j) {
        throw ArgumentError("pair labels must satisfy i < j, got (" +
                            std::to_string(i) + ", " + std::to_string(j) + ")");
    }

    const std::int64_t N = psi.dim();
    const int bi = i - 1;
    const int bj = j - 1;
    const std::int64_t low_mask = (std::int64_t{1} << bi) - 1;
    const std::int64_t mid_mask = (std::int64_t{1} << (bj - bi - 1)) - 1;

    DensityMatrix rho;
    rho.dim = 4;
    rho.subject_qubits = {i, j};
    rho.entries.assign(16, cplx{0.0, 0.0});

    const cplx* amp = psi.data();
    for (std::int64_t r = 0; r < N / 4; ++r) {
        // Scatter the rest-index bits around positions bi < bj.
        const std::int64_t low = r & low_mask;
        const std::int64_t mid = (r >> bi) & mid_mask;
        const std::int64_t high = r >> (bj - 1);
        const std::int64_t base = low | (mid << (bi + 1)) | (high << (bj + 1));

        cplx a[4];
        for (int l = 0; l < 4; ++l) {
            const std::int64_t s = base | (std::int64_t{l & 1} << bi) |
                                   (std::int64_t{(l >> 1) & 1} << bj);
            a[l] = amp[s];
        }
        for (int l = 0; l < 4; ++l)
            for (int m = 0; m < 4; ++m) rho.entries[static_cast<std::size_t>(l) * 4 + m] += std::conj(a[l]) * a[m];
    }
    return rho;
}

DensityMatrix reduce_to_block(const StateVector& psi, const std::vector<int>& qubits) {
    check_momentum_basis(psi);
    const int n_q = psi.n_q();
    const int m = static_cast<int>(qubits.size());
    if (m == 0) throw ArgumentError("block must contain at least one qubit");
    if (m == n_q) {
        throw ArgumentError("degenerate trace: block covers all " +
                            std::to_string(n_q) + " qubits, nothing left to trace");
    }
    if (m > n_q) throw ArgumentError("block larger than the register");
    for (int t = 0; t < m; ++t) {
        check_qubit_label(qubits[static_cast<std::size_t>(t)], n_q);
        if (t > 0 && qubits[static_cast<std::size_t>(t)] <= qubits[static_cast<std::size_t>(t - 1)]) {
            throw ArgumentError("block labels must be distinct and ascending");
        }
    }

    const std::int64_t N = psi.dim();
    const std::int64_t dim = std::int64_t{1} << m;

    // Bit positions kept by the block, and the complement traced out.
    std::vector<int> kept(static_cast<std::size_t>(m));
    for (int t = 0; t < m; ++t) kept[static_cast<std::size_t>(t)] = qubits[static_cast<std::size_t>(t)] - 1;
    std::vector<int> rest;
    rest.reserve(static_cast<std::size_t>(n_q - m));
    for (int p = 0, t = 0; p < n_q; ++p) {
        if (t < m && kept[static_cast<std::size_t>(t)] == p) {
            ++t;
        } else {
            rest.push_back(p);
        }
    }

    // Block-local index l scattered into slot bits (first listed qubit least
    // significant).
    std::vector<std::int64_t> scatter(static_cast<std::size_t>(dim), 0);
    for (std::int64_t l = 0; l < dim; ++l) {
        std::int64_t s = 0;
        for (int t = 0; t < m; ++t)
            if ((l >> t) & 1) s |= std::int64_t{1} << kept[static_cast<std::size_t>(t)];
        scatter[static_cast<std::size_t>(l)] = s;
    }

    DensityMatrix rho;
    rho.dim = static_cast<int>(dim);
    rho.subject_qubits = qubits;
    rho.entries.assign(static_cast<std::size_t>(dim) * dim, cplx{0.0, 0.0});

    const cplx* amp = psi.data();
    std::vector<cplx> a(static_cast<std::size_t>(dim));
    const std::int64_t rest_count = N >> m;
    for (std::int64_t r = 0; r < rest_count; ++r) {
        std::int64_t base = 0;
        for (std::size_t t = 0; t < rest.size(); ++t)
            if ((r >> t) & 1) base |= std::int64_t{1} << rest[t];

        for (std::int64_t l = 0; l < dim; ++l)
            a[static_cast<std::size_t>(l)] = amp[base | scatter[static_cast<std::size_t>(l)]];
        for (std::int64_t l = 0; l < dim; ++l) {
            const cplx al = std::conj(a[static_cast<std::size_t>(l)]);
            cplx* row = &rho.entries[static_cast<std::size_t>(l) * dim];
            for (std::int64_t c = 0; c < dim; ++c) row[c] += al * a[static_cast<std::size_t>(c)];
        }
    }
    return rho;
}

ConcurrenceResult concurrence(const DensityMatrix& rho) {
    if (rho.dim != 4) {
        throw ArgumentError("concurrence requires a 4x4 two-qubit density matrix");
    }
    check_invariants(rho);

    // Spectral square root of rho.
    Eigen::Matrix4cd r = to_eigen(rho);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(r);
    Eigen::Vector4d d = solver.eigenvalues();
    for (int idx = 0; idx < 4; ++idx) {
        if (d[idx] < kPsdFloor) {
            throw NumericalDegradationError("density matrix eigenvalue " +
                                            std::to_string(d[idx]) +
                                            " below the -1e-10 floor");
        }
        d[idx] = std::sqrt(std::max(d[idx], 0.0));
    }
    const Eigen::Matrix4cd sqrt_rho =
        solver.eigenvectors() * d.asDiagonal() * solver.eigenvectors().adjoint();

    // Spin-flipped matrix (sigma_y x sigma_y) rho* (sigma_y x sigma_y); in the
    // pair basis this is entrywise rho_tilde[l][m] = s_l s_m conj(rho[3-l][3-m])
    // with signs (-1, +1, +1, -1).
    static constexpr double sign[4] = {-1.0, 1.0, 1.0, -1.0};
    Eigen::Matrix4cd tilde;
    for (int l = 0; l < 4; ++l)
        for (int c = 0; c < 4; ++c)
            tilde(l, c) = sign[l] * sign[c] * std::conj(r(3 - l, 3 - c));

    Eigen::Matrix4cd e = sqrt_rho * tilde * sqrt_rho;
    e = (e + e.adjoint().eval()) / 2.0;  // remove roundoff asymmetry

    const Eigen::VectorXd ev = psd_eigenvalues(e, "concurrence kernel");
    ConcurrenceResult out;
    for (int idx = 0; idx < 4; ++idx) out.lambdas[static_cast<std::size_t>(idx)] = std::sqrt(ev[idx]);
    std::sort(out.lambdas.begin(), out.lambdas.end(), std::greater<>());
    out.value = std::max(out.lambdas[0] - out.lambdas[1] - out.lambdas[2] - out.lambdas[3], 0.0);
    return out;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    check_invariants(rho);
    const Eigen::VectorXd ev = psd_eigenvalues(to_eigen(rho), "density matrix");
    double s = 0.0;
    for (Eigen::Index idx = 0; idx < ev.size(); ++idx) {
        const double lambda = ev[idx];
        if (lambda < kEntropyCutoff) continue;
        s -= lambda * std::log2(lambda);
    }
    return s;
}

double concurrence_of_pair(const StateVector& psi, int i, int j) {
    return concurrence(reduce_to_pair(psi, i, j)).value;
}

}  // namespace qsm
