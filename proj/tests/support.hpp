// support.hpp: dense oracles and seeded generators shared by the test suites

#pragma once

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "dicat/types.hpp"

namespace oracle {

using dicat::cplx;
using dicat::Matrix;
using dicat::Vector;

inline Matrix kron(const Matrix& a, const Matrix& b) { return Eigen::kroneckerProduct(a, b).eval(); }

inline Matrix annihilation(int n_max) {
    Matrix a = Matrix::Zero(n_max + 1, n_max + 1);
    for (int n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

inline Matrix sx() { Matrix m(2, 2); m << 0, 1, 1, 0; return m; }
inline Matrix sz() { Matrix m(2, 2); m << 1, 0, 0, -1; return m; }
inline Matrix sm() { Matrix m(2, 2); m << 0, 1, 0, 0; return m; }   // |0><1|: lowers sigma^z = -1 to +1
inline Matrix eye(Eigen::Index n) { return Matrix::Identity(n, n); }

/// Photon operator `a` (dimension n_max+1) tensor qubit operators; qubit 0 is the leftmost factor.
inline Matrix embed(const Matrix& photon, const std::vector<Matrix>& qubits) {
    Matrix out = photon;
    for (const auto& q : qubits) out = kron(out, q);
    return out;
}

/// sigma on qubit j of N, identity photon of size P.
inline Matrix qubit_op(const Matrix& s, int j, int N, int P) {
    std::vector<Matrix> f(static_cast<std::size_t>(N), eye(2));
    f[static_cast<std::size_t>(j)] = s;
    return embed(eye(P), f);
}

/// Dense Dicke-Ising Hamiltonian built from tensor products.
inline Matrix dicke_ising(int N, int n_max, double w0, double wz, double J, double g, bool periodic) {
    const int P = n_max + 1;
    const Matrix a = embed(annihilation(n_max), std::vector<Matrix>(static_cast<std::size_t>(N), eye(2)));
    Matrix H = w0 * a.adjoint() * a;
    Matrix X = Matrix::Zero(H.rows(), H.cols());
    for (int j = 0; j < N; ++j) {
        H -= wz * qubit_op(sz(), j, N, P);
        X += qubit_op(sx(), j, N, P);
    }
    H += g / std::sqrt(static_cast<double>(N)) * (a + a.adjoint()) * X;
    for (int j = 0; j + 1 < N; ++j) H -= J * qubit_op(sz(), j, N, P) * qubit_op(sz(), j + 1, N, P);
    if (periodic && N >= 3) H -= J * qubit_op(sz(), N - 1, N, P) * qubit_op(sz(), 0, N, P);
    return H;
}

/// Random density matrix G G^dagger / tr, G with Gaussian entries.
inline Matrix random_density(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix G(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) G(i, j) = cplx(n(rng), n(rng));
    Matrix rho = G * G.adjoint();
    return rho / rho.trace();
}

inline Vector random_state(Eigen::Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = cplx(n(rng), n(rng));
    return v / v.norm();
}

/// exp(-i H t) by dense diagonalization.
inline Matrix propagator(const Matrix& H, double t) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(H);
    const Vector ph = (-dicat::I * t * es.eigenvalues().cast<cplx>()).array().exp();
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

/// Laguerre polynomial L_n(x) by the three-term recurrence.
inline double laguerre(int n, double x) {
    double l0 = 1.0, l1 = 1.0 - x;
    if (n == 0) return l0;
    for (int k = 1; k < n; ++k) {
        const double l2 = ((2.0 * k + 1.0 - x) * l1 - k * l0) / (k + 1.0);
        l0 = l1;
        l1 = l2;
    }
    return l1;
}

/// Fock-state Wigner function in the x = (a + a^dagger)/sqrt 2 convention.
inline double wigner_fock(int n, double x, double p) {
    const double r2 = x * x + p * p;
    return (n % 2 ? -1.0 : 1.0) / dicat::pi * std::exp(-r2) * laguerre(n, 2.0 * r2);
}

} // namespace oracle
