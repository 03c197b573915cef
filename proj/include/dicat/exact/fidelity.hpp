// fidelity.hpp: Uhlmann fidelity of two density matrices
//
// F = (tr sqrt(sqrt(rho1) rho2 sqrt(rho1)))^2 = ||sqrt(rho1) sqrt(rho2)||_1^2.
// The trace-norm form is evaluated with singular values, which keeps F
// symmetric and avoids square roots of round-off eigenvalues in the last step.

#pragma once

#include "dicat/core/states.hpp"

namespace dicat {

struct FidelityOptions {
    double negative_tol{1e-6};     // reject eigenvalues below -negative_tol
    double relative_cutoff{1e-13}; // eigenvalues below cutoff * lambda_max count as zero
};

namespace detail {

inline Matrix psd_sqrt(const Matrix& rho, const FidelityOptions& opt) {
    const Matrix h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const RealVector& ev = es.eigenvalues();
    if (ev.minCoeff() < -opt.negative_tol)
        throw ConfigError("density matrix has a negative eigenvalue " + std::to_string(ev.minCoeff()));
    const double cut = opt.relative_cutoff * std::max(ev.maxCoeff(), 0.0);
    RealVector s(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) s[i] = ev[i] > cut ? std::sqrt(ev[i]) : 0.0;
    return es.eigenvectors() * s.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace detail

/// Both inputs are renormalized to unit trace before comparison.
inline double fidelity(const DensityMatrix& rho1, const DensityMatrix& rho2, const FidelityOptions& opt = {}) {
    if (rho1.entries.rows() != rho2.entries.rows() || rho1.entries.rows() != rho1.entries.cols() ||
        rho2.entries.rows() != rho2.entries.cols())
        throw ConfigError("fidelity needs square matrices of equal dimension");
    const Matrix s1 = detail::psd_sqrt(rho1.normalized().entries, opt);
    const Matrix s2 = detail::psd_sqrt(rho2.normalized().entries, opt);
    Eigen::JacobiSVD<Matrix> svd(s1 * s2);
    const double f = svd.singularValues().sum();
    return std::clamp(f * f, 0.0, 1.0);
}

} // namespace dicat
