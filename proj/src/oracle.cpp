#include "qsm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace qsm::oracle {

std::vector<cplx> direct_dft(const std::vector<cplx>& amplitudes, int sign) {
    const auto n = static_cast<std::int64_t>(amplitudes.size());
    std::vector<cplx> out(amplitudes.size(), cplx{0.0, 0.0});
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::int64_t j = 0; j < n; ++j) {
        cplx acc{0.0, 0.0};
        for (std::int64_t s = 0; s < n; ++s) {
            const double ang = sign * 2.0 * std::numbers::pi *
                               static_cast<double>((j * s) % n) / static_cast<double>(n);
            acc += amplitudes[static_cast<std::size_t>(s)] * cplx{std::cos(ang), std::sin(ang)};
        }
        out[static_cast<std::size_t>(j)] = acc * scale;
    }
    return out;
}

DensityMatrix dense_block_rdm(const StateVector& psi, const std::vector<int>& qubits) {
    const int n_q = psi.n_q();
    const auto m = static_cast<int>(qubits.size());
    // m == n_q is allowed here (empty traced set, pure projector); the fast
    // path's pair reduction uses it at n_q = 2.
    if (m < 1 || m > n_q) {
        throw ArgumentError("oracle block must keep between 1 and n_q qubits");
    }
    std::int64_t kept_mask = 0;
    for (const int q : qubits) {
        if (q < 1 || q > n_q) throw ArgumentError("oracle qubit label out of range");
        kept_mask |= std::int64_t{1} << (q - 1);
    }

    const std::int64_t N = psi.dim();
    const std::int64_t traced_mask = (N - 1) & ~kept_mask;
    const auto dim = std::int64_t{1} << m;

    const auto block_code = [&](std::int64_t s) {
        std::int64_t code = 0;
        for (int t = 0; t < m; ++t) {
            if ((s >> (qubits[static_cast<std::size_t>(t)] - 1)) & 1) code |= std::int64_t{1} << t;
        }
        return code;
    };

    DensityMatrix rho;
    rho.dim = static_cast<int>(dim);
    rho.subject_qubits = qubits;
    rho.entries.assign(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim),
                       cplx{0.0, 0.0});
    const cplx* amp = psi.data();
    for (std::int64_t s = 0; s < N; ++s) {
        for (std::int64_t t = 0; t < N; ++t) {
            if ((s & traced_mask) != (t & traced_mask)) continue;
            const std::int64_t l = block_code(s);
            const std::int64_t c = block_code(t);
            rho.entries[static_cast<std::size_t>(l * dim + c)] += std::conj(amp[s]) * amp[t];
        }
    }
    return rho;
}

std::vector<double> jacobi_eigenvalues(std::vector<cplx> a, int dim) {
    if (dim < 1 || a.size() != static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {
        throw ArgumentError("jacobi: storage does not match dimension " + std::to_string(dim));
    }
    const auto at = [&](int r, int c) -> cplx& {
        return a[static_cast<std::size_t>(r) * static_cast<std::size_t>(dim) +
                 static_cast<std::size_t>(c)];
    };

    double scale = 0.0;
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) scale = std::max(scale, std::abs(at(r, c)));
    const double tol = scale > 0.0 ? 1e-30 * scale * scale : 0.0;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < dim; ++p)
            for (int q = p + 1; q < dim; ++q) off += std::norm(at(p, q));
        if (off <= tol) break;

        for (int p = 0; p < dim; ++p) {
            for (int q = p + 1; q < dim; ++q) {
                const cplx g = at(p, q);
                const double r = std::abs(g);
                if (r < 1e-300) continue;
                const cplx phase = g / r;
                const double app = at(p, p).real();
                const double aqq = at(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // Columns: col_p' = c col_p - s phase* col_q ; col_q' = s phase col_p + c col_q.
                for (int kk = 0; kk < dim; ++kk) {
                    const cplx akp = at(kk, p);
                    const cplx akq = at(kk, q);
                    at(kk, p) = c * akp - s * std::conj(phase) * akq;
                    at(kk, q) = s * phase * akp + c * akq;
                }
                // Rows with the conjugate-transposed rotation.
                for (int kk = 0; kk < dim; ++kk) {
                    const cplx apk = at(p, kk);
                    const cplx aqk = at(q, kk);
                    at(p, kk) = c * apk - s * phase * aqk;
                    at(q, kk) = s * std::conj(phase) * apk + c * aqk;
                }
            }
        }
    }

    std::vector<double> ev(static_cast<std::size_t>(dim));
    for (int d = 0; d < dim; ++d) ev[static_cast<std::size_t>(d)] = at(d, d).real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

StateVector random_state(int n_q, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto uniform = [&rng] {
        // (0, 1]; avoids log(0) below and any library-dependent distribution
        return (static_cast<double>(rng() >> 11) + 1.0) * 0x1p-53;
    };
    std::vector<cplx> amps(std::size_t{1} << n_q);
    double norm_sq = 0.0;
    for (auto& a : amps) {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double ang = 2.0 * std::numbers::pi * u2;
        a = cplx{r * std::cos(ang), r * std::sin(ang)};
        norm_sq += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(norm_sq);
    for (auto& a : amps) a *= scale;
    return StateVector(n_q, std::move(amps), Basis::momentum);
}

}  // namespace qsm::oracle
