// reduce.hpp: photon reduced density matrices, optionally parity projected
//
// Computes tr_sigma[rho O] for an operator O on the qubit register alone. The
// trace of the result equals <O>; it is not renormalized.

#pragma once

#include <optional>

#include "dicat/core/operators.hpp"
#include "dicat/core/states.hpp"

namespace dicat {

/// Diagonal of P_pm on the qubit register (no photon factor).
inline RealVector qubit_parity_diagonal(int sign, int N) {
    if (sign != 1 && sign != -1) throw ConfigError("parity sign must be +1 or -1");
    const Eigen::Index Q = Eigen::Index{1} << N;
    RealVector d(Q);
    for (Eigen::Index q = 0; q < Q; ++q) d[q] = qubit_parity(static_cast<std::uint64_t>(q)) == sign ? 1.0 : 0.0;
    return d;
}

inline Matrix qubit_parity_projector(int sign, int N) {
    return qubit_parity_diagonal(sign, N).cast<cplx>().asDiagonal();
}

/// tr_sigma[|psi><psi| O]; O defaults to the identity.
inline DensityMatrix reduce_photon_density(const State& psi, const HilbertLayout& L,
                                           const std::optional<Matrix>& qubit_op = std::nullopt) {
    if (psi.size() != L.dim()) throw ConfigError("state dimension does not match the layout");
    // M(q, n) = psi[n * Q + q]
    const Eigen::Map<const Matrix> M(psi.data(), L.qubit_dim(), L.photon_dim());
    if (!qubit_op) return DensityMatrix(M.transpose() * M.conjugate());
    const Matrix& O = *qubit_op;
    if (O.rows() != L.qubit_dim() || O.cols() != L.qubit_dim())
        throw ConfigError("qubit operator dimension does not match the register");
    return DensityMatrix(M.transpose() * O.transpose() * M.conjugate());
}

/// tr_sigma[rho O] for a density matrix on the composite space.
inline DensityMatrix reduce_photon_density(const DensityMatrix& rho, const HilbertLayout& L,
                                           const std::optional<Matrix>& qubit_op = std::nullopt) {
    if (rho.entries.rows() != rho.entries.cols()) throw ConfigError("density matrix must be square");
    if (rho.entries.rows() != L.dim()) throw ConfigError("density matrix dimension does not match the layout");
    const Eigen::Index Q = L.qubit_dim();
    const Eigen::Index P = L.photon_dim();
    if (qubit_op && (qubit_op->rows() != Q || qubit_op->cols() != Q))
        throw ConfigError("qubit operator dimension does not match the register");
    Matrix R(P, P);
    for (Eigen::Index n = 0; n < P; ++n)
        for (Eigen::Index m = 0; m < P; ++m) {
            const auto block = rho.entries.block(n * Q, m * Q, Q, Q);
            R(n, m) = qubit_op ? (block * (*qubit_op)).trace() : block.trace();
        }
    return DensityMatrix(std::move(R));
}

/// Parity-projected reduction, sign = +1 or -1.
template <class Input>
DensityMatrix reduce_photon_density(const Input& in, const HilbertLayout& L, int parity_sign) {
    return reduce_photon_density(in, L, std::optional<Matrix>(qubit_parity_projector(parity_sign, L.N)));
}

} // namespace dicat
