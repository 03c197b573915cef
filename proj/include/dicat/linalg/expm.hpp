// expm.hpp: exp(-i H t) acting on a vector, and small dense exponentials
//
// The propagator builds a Lanczos basis of dimension <= m, exponentiates the
// tridiagonal projection exactly, and accepts a substep when the a-posteriori
// estimate beta_m |e_m^T exp(-i tau T) e_1| is below tol * tau. The result is
// never renormalized, so the norm drift measures the accumulated error.

#pragma once

#include <algorithm>
#include <cmath>

#include "dicat/types.hpp"

namespace dicat {

struct PropagatorOptions {
    double tol{1e-10};    // local error per unit time
    int krylov_dim{30};
    int max_substeps{1'000'000};
};

struct PropagatorStats {
    int substeps{0};
    int matvecs{0};
    double error_estimate{0.0};   // sum of accepted local estimates
};

namespace detail {

/// exp(-i tau T) e_1 for a real symmetric tridiagonal T given by its eigensystem.
inline Vector tridiag_exp_e1(const Eigen::SelfAdjointEigenSolver<RealMatrix>& es, double tau) {
    const RealMatrix& U = es.eigenvectors();
    Vector phase(U.cols());
    for (Eigen::Index k = 0; k < U.cols(); ++k) phase[k] = std::exp(-I * tau * es.eigenvalues()[k]) * U(0, k);
    return U.cast<cplx>() * phase;
}

} // namespace detail

/// psi(t) = exp(-i H t) psi(0) with adaptive substeps.
inline State evolve_krylov(const SparseOperator& H, const State& psi0, double t, const PropagatorOptions& opt = {},
                           PropagatorStats* stats = nullptr) {
    if (H.rows() != psi0.size()) throw ConfigError("state and operator dimensions differ");
    PropagatorStats local;
    State psi = psi0;
    const Eigen::Index dim = psi.size();
    const int mmax = static_cast<int>(std::min<Eigen::Index>(opt.krylov_dim, dim));
    const double sgn = t < 0 ? -1.0 : 1.0;
    double remaining = std::abs(t);
    double tau = remaining;

    Matrix V(dim, mmax + 1);
    while (remaining > 0.0) {
        if (++local.substeps > opt.max_substeps)
            throw ConvergenceError("Krylov propagator exceeded its substep budget", local.error_estimate);
        const double beta0 = psi.norm();
        if (beta0 == 0.0) break;

        // Lanczos basis for the current vector.
        std::vector<double> alpha, beta;
        V.col(0) = psi / beta0;
        int m = 0;
        double b_last = 0.0;
        for (; m < mmax; ++m) {
            Vector w = H * V.col(m);
            ++local.matvecs;
            const double a = V.col(m).dot(w).real();
            alpha.push_back(a);
            w -= a * V.col(m);
            if (m > 0) w -= beta.back() * V.col(m - 1);
            w -= V.leftCols(m + 1) * (V.leftCols(m + 1).adjoint() * w);
            b_last = w.norm();
            if (b_last < 1e-14 * std::max(1.0, std::abs(a))) { b_last = 0.0; ++m; break; }
            if (m + 1 < mmax) {
                beta.push_back(b_last);
                V.col(m + 1) = w / b_last;
            }
        }
        const auto md = static_cast<Eigen::Index>(alpha.size());
        RealVector d = Eigen::Map<RealVector>(alpha.data(), md);
        RealVector e = md > 1 ? RealVector(Eigen::Map<RealVector>(beta.data(), md - 1)) : RealVector(0);
        Eigen::SelfAdjointEigenSolver<RealMatrix> es;
        es.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);

        tau = std::min(tau, remaining);
        for (;;) {
            const Vector c = detail::tridiag_exp_e1(es, sgn * tau);
            const double err = beta0 * b_last * std::abs(c[md - 1]);
            if (err <= opt.tol * tau || tau < 1e-300) {
                psi = beta0 * (V.leftCols(md) * c);
                local.error_estimate += err;
                remaining -= tau;
                if (remaining < 1e-15 * std::abs(t)) remaining = 0.0;
                // Grow the step when the estimate is comfortably small.
                if (err < 0.1 * opt.tol * tau) tau *= 1.5;
                break;
            }
            tau *= 0.5;
        }
    }
    if (stats) *stats = local;
    return psi;
}

/// exp(-i theta K) for a small dense Hermitian K, via its eigendecomposition.
inline Matrix hermitian_exp(const Matrix& K, double theta) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(K);
    const Vector ph = (-I * theta * es.eigenvalues().cast<cplx>()).array().exp();
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace dicat
