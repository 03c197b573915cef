// operators.hpp: elementary operators and Hamiltonians on the photon (x) qubit space
//
// Pauli matrices in the (|0>, |1>) basis:
//   sigma^x = [[0, 1], [1, 0]]   sigma^y = [[0, -i], [i, 0]]   sigma^z = [[1, 0], [0, -1]]
//   sigma^+ = (sigma^x - i sigma^y)/2 = [[0, 0], [1, 0]]   (|0> -> |1>)
//   sigma^- = (sigma^x + i sigma^y)/2 = [[0, 1], [0, 0]]   (|1> -> |0>)

#pragma once

#include <bit>
#include <cmath>
#include <string>
#include <vector>

#include "dicat/core/model.hpp"

namespace dicat {

enum class Axis { x, y, z };
enum class HamiltonianKind { dicke_ising, dicke, free, rabi };

inline HamiltonianKind parse_hamiltonian_kind(const std::string& s) {
    if (s == "dicke_ising") return HamiltonianKind::dicke_ising;
    if (s == "dicke") return HamiltonianKind::dicke;
    if (s == "free") return HamiltonianKind::free;
    if (s == "rabi") return HamiltonianKind::rabi;
    throw ConfigError("unknown Hamiltonian kind: " + s);
}

struct BosonOps {
    SparseOperator annihilation;
    SparseOperator creation;
    SparseOperator number;
};

/// Truncated ladder operators on Fock states 0..n_max; a^dagger |n_max> = 0.
inline BosonOps boson_ops(int n_max) {
    if (n_max < 0) throw ConfigError("n_max must be non-negative");
    const Eigen::Index d = n_max + 1;
    std::vector<Eigen::Triplet<cplx>> t;
    for (int n = 0; n < n_max; ++n) t.emplace_back(n, n + 1, std::sqrt(static_cast<double>(n + 1)));
    BosonOps ops;
    ops.annihilation.resize(d, d);
    ops.annihilation.setFromTriplets(t.begin(), t.end());
    ops.creation = SparseOperator(ops.annihilation.adjoint());
    ops.number = SparseOperator(ops.creation * ops.annihilation);
    return ops;
}

namespace detail {

inline SparseOperator from_triplets(Eigen::Index dim, std::vector<Eigen::Triplet<cplx>>& t) {
    SparseOperator op(dim, dim);
    op.setFromTriplets(t.begin(), t.end());
    op.makeCompressed();
    return op;
}

} // namespace detail

/// Photon annihilation operator lifted to the composite space.
inline SparseOperator photon_annihilation(const HilbertLayout& L) {
    std::vector<Eigen::Triplet<cplx>> t;
    for (Eigen::Index i = 0; i < L.dim(); ++i) {
        const int n = L.photon(i);
        if (n < L.n_max) t.emplace_back(i, i + L.qubit_dim(), std::sqrt(static_cast<double>(n + 1)));
    }
    return detail::from_triplets(L.dim(), t);
}

inline SparseOperator photon_number(const HilbertLayout& L) {
    std::vector<Eigen::Triplet<cplx>> t;
    for (Eigen::Index i = 0; i < L.dim(); ++i) {
        if (const int n = L.photon(i); n > 0) t.emplace_back(i, i, static_cast<double>(n));
    }
    return detail::from_triplets(L.dim(), t);
}

inline SparseOperator pauli_op(const HilbertLayout& L, int j, Axis axis) {
    L.check_qubit(j);
    std::vector<Eigen::Triplet<cplx>> t;
    t.reserve(static_cast<std::size_t>(L.dim()));
    const auto m = static_cast<Eigen::Index>(L.mask(j));
    for (Eigen::Index i = 0; i < L.dim(); ++i) {
        const bool up = L.bit(i, j) == 0;
        switch (axis) {
        case Axis::z: t.emplace_back(i, i, up ? 1.0 : -1.0); break;
        case Axis::x: t.emplace_back(i ^ m, i, 1.0); break;
        // sigma^y |0> = i|1>, sigma^y |1> = -i|0>
        case Axis::y: t.emplace_back(i ^ m, i, up ? I : -I); break;
        }
    }
    return detail::from_triplets(L.dim(), t);
}

inline SparseOperator pauli_op(const ModelParams& p, int j, Axis axis) {
    return pauli_op(HilbertLayout(p), j, axis);
}

/// Ising bonds of the chain; the periodic wrap bond is added only for N >= 3.
inline std::vector<std::pair<int, int>> ising_bonds(int N, Boundary b) {
    std::vector<std::pair<int, int>> bonds;
    for (int j = 0; j + 1 < N; ++j) bonds.emplace_back(j, j + 1);
    if (b == Boundary::periodic && N >= 3) bonds.emplace_back(N - 1, 0);
    return bonds;
}

/// Diagonal of H0 = omega0 a^dagger a - (omega0/2) sum_j sigma^z_j.
inline RealVector free_diagonal(const HilbertLayout& L, double omega0) {
    RealVector d(L.dim());
    for (Eigen::Index i = 0; i < L.dim(); ++i) {
        double zsum = 0.0;
        for (int j = 0; j < L.N; ++j) zsum += L.z(i, j);
        d[i] = omega0 * L.photon(i) - 0.5 * omega0 * zsum;
    }
    return d;
}

inline SparseOperator hamiltonian(HamiltonianKind kind, const ModelParams& p) {
    const HilbertLayout L(p);
    if (kind == HamiltonianKind::rabi && p.N != 1)
        throw ConfigError("the Rabi Hamiltonian requires N = 1");

    std::vector<Eigen::Triplet<cplx>> t;
    const auto bonds = ising_bonds(p.N, p.boundary);

    if (kind == HamiltonianKind::free) {
        const RealVector d = free_diagonal(L, p.omega0);
        for (Eigen::Index i = 0; i < L.dim(); ++i) t.emplace_back(i, i, d[i]);
        return detail::from_triplets(L.dim(), t);
    }

    // Rabi carries the bare g; Dicke variants carry g/sqrt(N).
    const double coupling = kind == HamiltonianKind::rabi ? p.g : p.g / std::sqrt(static_cast<double>(p.N));
    const double wz = kind == HamiltonianKind::rabi ? 0.0 : p.omegaz;
    const double J = kind == HamiltonianKind::dicke_ising ? p.J : 0.0;

    for (Eigen::Index i = 0; i < L.dim(); ++i) {
        const int n = L.photon(i);
        double diag = p.omega0 * n;
        for (int j = 0; j < p.N; ++j) diag -= wz * L.z(i, j);
        for (auto [a, b] : bonds) diag -= J * L.z(i, a) * L.z(i, b);
        if (diag != 0.0) t.emplace_back(i, i, diag);

        if (coupling == 0.0) continue;
        // (a + a^dagger) sum_j sigma^x_j ; emit the a^dagger part and its transpose.
        if (n < p.n_max) {
            const double amp = coupling * std::sqrt(static_cast<double>(n + 1));
            for (int j = 0; j < p.N; ++j) {
                const Eigen::Index k = (i + L.qubit_dim()) ^ static_cast<Eigen::Index>(L.mask(j));
                t.emplace_back(k, i, amp);
                t.emplace_back(i, k, amp);
            }
        }
    }
    return detail::from_triplets(L.dim(), t);
}

/// max |H - H^dagger| over all entries.
inline double hermiticity_residual(const SparseOperator& H) {
    const SparseOperator diff = H - SparseOperator(H.adjoint());
    double r = 0.0;
    for (Eigen::Index k = 0; k < diff.outerSize(); ++k)
        for (SparseOperator::InnerIterator it(diff, k); it; ++it) r = std::max(r, std::abs(it.value()));
    return r;
}

inline double hermiticity_residual(const Matrix& H) {
    return (H - H.adjoint()).cwiseAbs().maxCoeff();
}

/// +1 for even total qubit parity (prod_j sigma^z_j = +1), -1 otherwise.
inline double qubit_parity(std::uint64_t qubit_bits) {
    return (std::popcount(qubit_bits) % 2 == 0) ? 1.0 : -1.0;
}

/// P_pm = (1 +/- prod_j sigma^z_j)/2 (x) photon identity.
inline SparseOperator parity_projector(int sign, const HilbertLayout& L) {
    if (sign != 1 && sign != -1) throw ConfigError("parity sign must be +1 or -1");
    std::vector<Eigen::Triplet<cplx>> t;
    for (Eigen::Index i = 0; i < L.dim(); ++i)
        if (qubit_parity(L.qubits(i)) == sign) t.emplace_back(i, i, 1.0);
    return detail::from_triplets(L.dim(), t);
}

inline SparseOperator parity_projector(int sign, const ModelParams& p) {
    return parity_projector(sign, HilbertLayout(p));
}

} // namespace dicat
