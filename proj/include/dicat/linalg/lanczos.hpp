// lanczos.hpp: lowest eigenpairs of a sparse Hermitian operator
//
// Lanczos with full reorthogonalization. The first pass starts from the normalized
// all-ones vector. Symmetry sectors that the start vector does not reach are
// recovered by further passes from seeded pseudo-random vectors, run on the
// complement of the pairs already found. A final Rayleigh-Ritz on the collected
// vectors orthonormalizes degenerate subspaces before residuals are verified.

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dicat/types.hpp"

namespace dicat {

struct EigenOptions {
    double tol{1e-8};           // required residual |H v - e v|
    int max_matvecs{20000};     // over all passes
    int check_every{8};
    int max_passes{6};
    int max_krylov{300};        // basis size per cycle; unconverged cycles restart
    std::uint64_t seed{0x5eed'd1ca7ULL};
};

struct SpectrumSlice {
    RealVector energies;        // ascending
    std::vector<State> states;
    int m_max{0};
    double max_residual{0.0};
    int matvecs{0};

    [[nodiscard]] std::size_t size() const { return states.size(); }
};

namespace detail {

struct LanczosPass {
    Matrix ritz_vectors;   // dim x k
    RealVector ritz_values;
    int matvecs{0};
    bool converged{false};
};

// Orthogonalize w against the columns of B (twice is enough in practice).
inline void project_out(const Matrix& B, Eigen::Index ncols, Vector& w) {
    if (ncols == 0) return;
    for (int rep = 0; rep < 2; ++rep) w -= B.leftCols(ncols) * (B.leftCols(ncols).adjoint() * w);
}

inline LanczosPass lanczos_pass(const SparseOperator& H, Vector v0, const Matrix& locked, Eigen::Index nlocked,
                                int want, double tol, int budget, int check_every, int max_krylov) {
    const Eigen::Index dim = H.rows();
    const Eigen::Index kmax = std::min<Eigen::Index>({dim - nlocked, static_cast<Eigen::Index>(budget),
                                                      static_cast<Eigen::Index>(max_krylov)});
    const bool whole_space = kmax == dim - nlocked;
    LanczosPass out;
    if (kmax <= 0) return out;

    project_out(locked, nlocked, v0);
    double nv = v0.norm();
    if (nv < 1e-12) return out;

    Matrix Q(dim, kmax);
    std::vector<double> alpha, beta;
    Q.col(0) = v0 / nv;

    const double hscale = std::max(1.0, H.cwiseAbs().sum() / static_cast<double>(dim));
    Eigen::SelfAdjointEigenSolver<RealMatrix> tri;
    Eigen::Index k = 0;
    for (; k < kmax; ++k) {
        Vector w = H * Q.col(k);
        ++out.matvecs;
        const double a = Q.col(k).dot(w).real();
        alpha.push_back(a);
        w -= a * Q.col(k);
        if (k > 0) w -= beta.back() * Q.col(k - 1);
        project_out(Q, k + 1, w);
        project_out(locked, nlocked, w);
        const double b = w.norm();

        const bool invariant = b < 1e-13 * hscale || (whole_space && k + 1 == kmax);
        const bool exhausted = invariant || k + 1 == kmax;
        if (exhausted || (k + 1) % check_every == 0) {
            const auto m = static_cast<Eigen::Index>(alpha.size());
            RealVector d = Eigen::Map<RealVector>(alpha.data(), m);
            RealVector e = m > 1 ? RealVector(Eigen::Map<RealVector>(beta.data(), m - 1)) : RealVector(0);
            tri.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
            const int nconv_needed = static_cast<int>(std::min<Eigen::Index>(want, m));
            bool ok = true;
            for (int i = 0; i < nconv_needed && !invariant; ++i)
                if (std::abs(b * tri.eigenvectors()(m - 1, i)) > 0.1 * tol) { ok = false; break; }
            if (ok && (invariant || m >= want)) {
                const int keep = nconv_needed;
                out.ritz_values = tri.eigenvalues().head(keep);
                out.ritz_vectors = Q.leftCols(m) * tri.eigenvectors().leftCols(keep).cast<cplx>();
                out.converged = true;
                return out;
            }
        }
        if (invariant || k + 1 == kmax) break;
        beta.push_back(b);
        Q.col(k + 1) = w / b;
    }
    // Cycle exhausted without convergence: the caller restarts from these Ritz vectors.
    const auto m = static_cast<Eigen::Index>(alpha.size());
    RealVector d = Eigen::Map<RealVector>(alpha.data(), m);
    RealVector e = m > 1 ? RealVector(Eigen::Map<RealVector>(beta.data(), m - 1)) : RealVector(0);
    tri.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
    const auto keep = std::min<Eigen::Index>(want, m);
    out.ritz_values = tri.eigenvalues().head(keep);
    out.ritz_vectors = Q.leftCols(m) * tri.eigenvectors().leftCols(keep).cast<cplx>();
    return out;
}

} // namespace detail

/// Lowest `m_max` eigenpairs of a Hermitian H; deterministic for fixed options.
inline SpectrumSlice ground_state(const SparseOperator& H, int m_max, const EigenOptions& opt = {}) {
    const Eigen::Index dim = H.rows();
    if (H.cols() != dim) throw ConfigError("operator must be square");
    if (m_max < 1 || m_max > dim) throw ConfigError("m_max must lie in [1, dim]");

    Matrix locked(dim, std::min<Eigen::Index>(dim, 2 * static_cast<Eigen::Index>(m_max) + 8));
    Eigen::Index nlocked = 0;
    std::vector<double> values;
    int matvecs = 0;
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> normal;

    for (int pass = 0; pass < opt.max_passes; ++pass) {
        Vector v0(dim);
        if (pass == 0) {
            v0.setOnes();
        } else {
            for (Eigen::Index i = 0; i < dim; ++i) v0[i] = cplx(normal(rng), normal(rng));
        }
        detail::LanczosPass res;
        for (;;) {
            const int budget = opt.max_matvecs - matvecs;
            if (budget <= 0) break;
            res = detail::lanczos_pass(H, v0, locked, nlocked, m_max, opt.tol, budget, opt.check_every,
                                       opt.max_krylov);
            matvecs += res.matvecs;
            if (res.converged || res.ritz_values.size() == 0) break;
            v0 = res.ritz_vectors.rowwise().sum();
        }
        if (!res.converged) break;

        // Accept new pairs that can still belong to the lowest m_max levels.
        std::vector<double> sorted = values;
        std::sort(sorted.begin(), sorted.end());
        const double threshold = static_cast<int>(sorted.size()) >= m_max
                                     ? sorted[static_cast<std::size_t>(m_max - 1)] - opt.tol
                                     : std::numeric_limits<double>::infinity();
        int added = 0;
        for (Eigen::Index i = 0; i < res.ritz_values.size(); ++i) {
            if (pass > 0 && res.ritz_values[i] >= threshold) break;
            if (nlocked == locked.cols()) locked.conservativeResize(dim, locked.cols() * 2);
            locked.col(nlocked++) = res.ritz_vectors.col(i);
            values.push_back(res.ritz_values[i]);
            ++added;
        }
        if (pass > 0 && added == 0) break;
        if (nlocked >= dim) break;
    }

    if (nlocked < m_max)
        throw ConvergenceError("eigensolver found only " + std::to_string(nlocked) + " of " +
                                   std::to_string(m_max) + " eigenpairs",
                               std::numeric_limits<double>::infinity());

    // Rayleigh-Ritz on the collected subspace.
    Matrix Y = locked.leftCols(nlocked);
    Eigen::HouseholderQR<Matrix> qr(Y);
    Y = qr.householderQ() * Matrix::Identity(dim, nlocked);
    const Matrix HY = H * Y;
    Matrix small = Y.adjoint() * HY;
    small = 0.5 * (small + small.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> es(small);

    SpectrumSlice out;
    out.m_max = m_max;
    out.matvecs = matvecs;
    out.energies = es.eigenvalues().head(m_max);
    const Matrix V = Y * es.eigenvectors().leftCols(m_max);
    const Matrix HV = HY * es.eigenvectors().leftCols(m_max);
    for (int i = 0; i < m_max; ++i) {
        const double r = (HV.col(i) - out.energies[i] * V.col(i)).norm();
        out.max_residual = std::max(out.max_residual, r);
        out.states.emplace_back(V.col(i));
    }
    if (!(out.max_residual <= opt.tol))
        throw ConvergenceError("eigensolver residual " + std::to_string(out.max_residual) +
                                   " above tolerance after " + std::to_string(matvecs) + " matvecs",
                               out.max_residual);
    return out;
}

} // namespace dicat
