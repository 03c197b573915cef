// gates.hpp: digital-analog gate set and its action on states and density matrices
//
//   jc     exp(-i theta (a^dagger sigma^- + a sigma^+)) on the photon and one qubit
//   x_pi   exp(-i phi sigma^z) sigma^x
//   z      exp(+i beta sigma^z)
//   zz     exp(+i eta sigma^z sigma^z)
//   swap, swap_restore, cnot
//
// Gates act in place on the rows of a column vector or matrix expressed in the
// photon-major layout. Density matrices use rho -> U rho U^dagger.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "dicat/core/model.hpp"

namespace dicat {

enum class GateKind { jc, x_pi, z, zz, swap, swap_restore, cnot };

inline std::string to_string(GateKind k) {
    switch (k) {
    case GateKind::jc: return "jc";
    case GateKind::x_pi: return "x_pi";
    case GateKind::z: return "z";
    case GateKind::zz: return "zz";
    case GateKind::swap: return "swap";
    case GateKind::swap_restore: return "swap_restore";
    case GateKind::cnot: return "cnot";
    }
    return "?";
}

struct GateRecord {
    GateKind kind{GateKind::jc};
    std::vector<int> targets;   // qubit indices; cnot is (control, target)
    double phase{0.0};          // theta, phi, beta or eta
    int step{0};                // Trotter step, 1-based; 0 for readout gates

    bool operator==(const GateRecord&) const = default;
};

namespace detail {

inline void check_targets(const GateRecord& g, const HilbertLayout& L) {
    const std::size_t want = (g.kind == GateKind::jc || g.kind == GateKind::x_pi || g.kind == GateKind::z) ? 1 : 2;
    if (g.targets.size() != want) throw ConfigError("gate " + to_string(g.kind) + " has the wrong number of targets");
    for (int t : g.targets) L.check_qubit(t);
    if (want == 2 && g.targets[0] == g.targets[1]) throw ConfigError("two-qubit gate needs distinct targets");
}

/// Row update r_a, r_b <- (u00 r_a + u01 r_b, u10 r_a + u11 r_b).
template <class Mat>
void rotate_rows(Mat& M, Eigen::Index a, Eigen::Index b, cplx u00, cplx u01, cplx u10, cplx u11) {
    for (Eigen::Index c = 0; c < M.cols(); ++c) {
        const cplx x = M(a, c);
        const cplx y = M(b, c);
        M(a, c) = u00 * x + u01 * y;
        M(b, c) = u10 * x + u11 * y;
    }
}

template <class Mat>
void scale_row(Mat& M, Eigen::Index a, cplx f) {
    for (Eigen::Index c = 0; c < M.cols(); ++c) M(a, c) *= f;
}

template <class Mat>
void swap_rows(Mat& M, Eigen::Index a, Eigen::Index b) {
    for (Eigen::Index c = 0; c < M.cols(); ++c) std::swap(M(a, c), M(b, c));
}

} // namespace detail

/// M <- U M for the gate U. M has L.dim() rows.
template <class Mat>
void apply_gate(const GateRecord& g, const HilbertLayout& L, Mat& M) {
    detail::check_targets(g, L);
    if (M.rows() != L.dim()) throw ConfigError("gate applied to an object of the wrong dimension");
    const Eigen::Index Q = L.qubit_dim();
    const auto m0 = static_cast<Eigen::Index>(L.mask(g.targets[0]));
    switch (g.kind) {
    case GateKind::jc: {
        // Doublet {|n+1, 0>, |n, 1>} rotates by theta sqrt(n+1).
        for (int n = 0; n < L.n_max; ++n) {
            const double w = g.phase * std::sqrt(static_cast<double>(n + 1));
            const double c = std::cos(w), s = std::sin(w);
            for (Eigen::Index q = 0; q < Q; ++q) {
                if (q & m0) continue;
                const Eigen::Index up = L.index(n + 1, static_cast<std::uint64_t>(q));
                const Eigen::Index dn = L.index(n, static_cast<std::uint64_t>(q | m0));
                detail::rotate_rows(M, up, dn, c, -I * s, -I * s, c);
            }
        }
        break;
    }
    case GateKind::x_pi: {
        const cplx e_minus = std::exp(-I * g.phase), e_plus = std::exp(I * g.phase);
        for (Eigen::Index i = 0; i < L.dim(); ++i) {
            if (i & m0) continue;
            // |0> -> e^{+i phi}|1>, |1> -> e^{-i phi}|0>
            detail::rotate_rows(M, i, i | m0, 0.0, e_minus, e_plus, 0.0);
        }
        break;
    }
    case GateKind::z: {
        const cplx e0 = std::exp(I * g.phase), e1 = std::exp(-I * g.phase);
        for (Eigen::Index i = 0; i < L.dim(); ++i) detail::scale_row(M, i, (i & m0) ? e1 : e0);
        break;
    }
    case GateKind::zz: {
        const auto m1 = static_cast<Eigen::Index>(L.mask(g.targets[1]));
        const cplx same = std::exp(I * g.phase), diff = std::exp(-I * g.phase);
        for (Eigen::Index i = 0; i < L.dim(); ++i)
            detail::scale_row(M, i, (((i & m0) != 0) == ((i & m1) != 0)) ? same : diff);
        break;
    }
    case GateKind::swap:
    case GateKind::swap_restore: {
        const auto m1 = static_cast<Eigen::Index>(L.mask(g.targets[1]));
        for (Eigen::Index i = 0; i < L.dim(); ++i)
            if ((i & m0) && !(i & m1)) detail::swap_rows(M, i, (i ^ m0) | m1);
        break;
    }
    case GateKind::cnot: {
        const auto m1 = static_cast<Eigen::Index>(L.mask(g.targets[1]));
        for (Eigen::Index i = 0; i < L.dim(); ++i)
            if ((i & m0) && !(i & m1)) detail::swap_rows(M, i, i | m1);
        break;
    }
    }
}

template <class Mat>
void apply_gates(const std::vector<GateRecord>& gates, const HilbertLayout& L, Mat& M) {
    for (const auto& g : gates) apply_gate(g, L, M);
}

/// rho <- U rho U^dagger for a sequence of gates.
inline void conjugate_gates(const std::vector<GateRecord>& gates, const HilbertLayout& L, Matrix& rho) {
    apply_gates(gates, L, rho);
    Matrix t = rho.adjoint();
    apply_gates(gates, L, t);
    rho = t.adjoint();
}

/// Dense unitary of a gate sequence on the full space (small systems only).
inline Matrix materialize(const std::vector<GateRecord>& gates, const HilbertLayout& L) {
    Matrix U = Matrix::Identity(L.dim(), L.dim());
    apply_gates(gates, L, U);
    return U;
}

inline Matrix materialize(const GateRecord& g, const HilbertLayout& L) {
    return materialize(std::vector<GateRecord>{g}, L);
}

// Small dense matrices of the elementary gates, in the local basis.

/// JC gate on photon (0..n_max) x one qubit, photon-major.
inline Matrix gate_jc(double theta, int n_max) {
    return materialize(GateRecord{GateKind::jc, {0}, theta, 0}, HilbertLayout(1, n_max));
}

inline Matrix gate_x_pi(double phi) {
    Matrix m(2, 2);
    m << 0.0, std::exp(-I * phi), std::exp(I * phi), 0.0;
    return m;
}

inline Matrix gate_z(double beta) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = std::exp(I * beta);
    m(1, 1) = std::exp(-I * beta);
    return m;
}

/// Basis |00>, |01>, |10>, |11>.
inline Matrix gate_zz(double eta) {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(3, 3) = std::exp(I * eta);
    m(1, 1) = m(2, 2) = std::exp(-I * eta);
    return m;
}

inline double unitarity_residual(const Matrix& U) {
    return (U.adjoint() * U - Matrix::Identity(U.cols(), U.cols())).cwiseAbs().maxCoeff();
}

} // namespace dicat
