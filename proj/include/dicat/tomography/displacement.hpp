// displacement.hpp: displaced-parity Wigner route and the ancilla Ramsey protocol
//
// Coherent amplitude and quadratures are linked by xi = (x + i p)/sqrt(2), and
//   W_xi = (2/pi) tr(Pi D_xi^dagger rho D_xi),   Pi = exp(i pi a^dagger a),
// equals 2 W(x, p) of the closed-form route.
//
// D_xi = exp(xi a^dagger - xi^* a) is built on a padded Fock space. With
// xi = r e^{i theta}, D_xi = R K_r R^dagger where R = exp(i theta a^dagger a) and
// K_r = exp(r (a^dagger - a)) comes from one Hermitian eigendecomposition.

#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "dicat/core/operators.hpp"
#include "dicat/tomography/wigner.hpp"

namespace dicat {

/// Eigensystem of the Hermitian generator -i (a^dagger - a) on 0..size-1.
struct DisplacementBasis {
    int size{0};
    Matrix vectors;
    RealVector values;

    explicit DisplacementBasis(int n) : size(n) {
        const BosonOps ops = boson_ops(n - 1);
        const Matrix K = -I * (Matrix(ops.creation) - Matrix(ops.annihilation));
        Eigen::SelfAdjointEigenSolver<Matrix> es(K);
        vectors = es.eigenvectors();
        values = es.eigenvalues();
    }

    /// Rows [0, rows) of D_xi.
    [[nodiscard]] Matrix rows(cplx xi, int nrows) const {
        const double r = std::abs(xi);
        const double theta = std::arg(xi);
        // exp(r (a^dagger - a)) = exp(i r K)
        const Vector ph = (I * r * values.cast<cplx>()).array().exp();
        Matrix top = vectors.topRows(nrows) * ph.asDiagonal() * vectors.adjoint();
        for (int l = 0; l < nrows; ++l) top.row(l) *= std::polar(1.0, theta * l);
        for (int j = 0; j < size; ++j) top.col(j) *= std::polar(1.0, -theta * j);
        return top;
    }
};

namespace detail {

inline std::shared_ptr<const DisplacementBasis> displacement_basis(int size) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const DisplacementBasis>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[size];
    if (!slot) slot = std::make_shared<const DisplacementBasis>(size);
    return slot;
}

/// Weight of the first `inner` rows of D in the outer quarter of the padding.
inline double edge_weight(const Matrix& top, int n_pad) {
    const auto edge = std::max<Eigen::Index>(1, n_pad / 4);
    return top.rightCols(edge).cwiseAbs2().sum();
}

} // namespace detail

struct DisplacementOptions {
    int n_pad{20};          // initial padding; doubled until the edge weight is negligible
    int max_pad{2560};
    double edge_tol{1e-24};
};

struct PaddedDisplacement {
    Matrix top;        // rows 0..n_inner-1 of D_xi on the padded space
    int n_pad{0};
    double edge_weight{0.0};
};

/// Rows of D_xi needed to displace a state supported on 0..n_inner-1.
inline PaddedDisplacement displacement_rows(cplx xi, int n_inner, const DisplacementOptions& opt = {}) {
    if (n_inner < 1) throw ConfigError("displacement needs a non-empty inner space");
    for (int pad = std::max(opt.n_pad, 4); pad <= opt.max_pad; pad *= 2) {
        const auto basis = detail::displacement_basis(n_inner + pad);
        PaddedDisplacement d{basis->rows(xi, n_inner), pad, 0.0};
        d.edge_weight = detail::edge_weight(d.top, pad);
        if (d.edge_weight <= opt.edge_tol) return d;
    }
    throw ConfigError("displacement padding exceeded its cap; reduce |xi| or raise max_pad");
}

/// D_xi on a Fock space of n_max + 1 + n_pad levels (no adaptive padding).
inline Matrix displacement_op(cplx xi, int n_max, int n_pad) {
    if (n_max < 0 || n_pad < 0) throw ConfigError("displacement sizes must be non-negative");
    const int size = n_max + 1 + n_pad;
    return detail::displacement_basis(size)->rows(xi, size);
}

/// tr(Pi D^dagger rho D) from the top rows B of D: sum_j Pi_j b_j^dagger rho b_j.
inline double displaced_parity(const Matrix& rho, const Matrix& top) {
    const Matrix RB = rho * top;
    double acc = 0.0;
    for (Eigen::Index j = 0; j < top.cols(); ++j)
        acc += ((j % 2 == 0) ? 1.0 : -1.0) * top.col(j).dot(RB.col(j)).real();
    return acc;
}

inline cplx xi_of(double x, double p) { return cplx(x, p) / std::sqrt(2.0); }

/// Wigner field through displaced parity, reported in the (x, p) convention.
inline WignerField wigner_displaced_parity(const DensityMatrix& rho, const WignerGrid& grid = {}, int threads = 1,
                                           const DisplacementOptions& opt = {}) {
    if (rho.entries.rows() != rho.entries.cols()) throw ConfigError("density matrix must be square");
    const int inner = static_cast<int>(rho.dim());
    WignerField w;
    w.x_grid = grid.x;
    w.p_grid = grid.p;
    w.trace_in = rho.trace;
    w.values.resize(grid.x.size(), grid.p.size());
    detail::parallel_rows(grid.x.size(), threads, [&](Eigen::Index i) {
        for (Eigen::Index j = 0; j < grid.p.size(); ++j) {
            const auto d = displacement_rows(xi_of(grid.x[i], grid.p[j]), inner, opt);
            const double w_xi = (2.0 / pi) * displaced_parity(rho.entries, d.top);
            w.values(i, j) = 0.5 * w_xi;
        }
    });
    summarize(w);
    return w;
}

struct RamseyRecord {
    double p_plus{0.0};            // ancilla found in |1>: even photon parity
    double p_minus{0.0};
    double wigner_estimate{0.0};   // (2/pi)(p_plus - p_minus), the W_xi convention
    double wigner_xp{0.0};         // same point in the (x, p) convention
};

/// Ancilla |0> -> X_{pi/2} -> controlled exp(i pi a^dagger a) -> X_{pi/2} -> measure,
/// on the displaced state D_xi^dagger rho D_xi. X_{pi/2} = (1 + i sigma^x)/sqrt(2).
inline RamseyRecord ancilla_ramsey(const DensityMatrix& rho, cplx xi, const DisplacementOptions& opt = {}) {
    const int inner = static_cast<int>(rho.dim());
    const auto d = displacement_rows(xi, inner, opt);
    const Eigen::Index n = d.top.cols();
    const Matrix displaced = d.top.adjoint() * rho.entries * d.top;   // D^dagger rho D on the padded space

    // Joint space ordering: ancilla-major, |a> (x) |photon>.
    const Eigen::Index D2 = 2 * n;
    Matrix X = Matrix::Zero(D2, D2);
    const double s = 1.0 / std::sqrt(2.0);
    for (Eigen::Index k = 0; k < n; ++k) {
        X(k, k) = s;
        X(n + k, n + k) = s;
        X(k, n + k) = I * s;
        X(n + k, k) = I * s;
    }
    Vector cphase = Vector::Ones(D2);
    for (Eigen::Index k = 0; k < n; ++k) cphase[n + k] = std::polar(1.0, pi * static_cast<double>(k));

    Matrix joint = Matrix::Zero(D2, D2);
    joint.topLeftCorner(n, n) = displaced;   // ancilla in |0>
    joint = X * joint * X.adjoint();
    joint = cphase.asDiagonal() * joint * cphase.conjugate().asDiagonal();
    joint = X * joint * X.adjoint();

    RamseyRecord rec;
    rec.p_minus = joint.topLeftCorner(n, n).trace().real();
    rec.p_plus = joint.bottomRightCorner(n, n).trace().real();
    rec.wigner_estimate = (2.0 / pi) * (rec.p_plus - rec.p_minus);
    rec.wigner_xp = 0.5 * rec.wigner_estimate;
    return rec;
}

} // namespace dicat
