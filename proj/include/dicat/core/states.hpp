// states.hpp: special states and the density-matrix record

#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "dicat/core/model.hpp"

namespace dicat {

/// Hermitian matrix with its trace recorded rather than assumed to be 1:
/// parity-projected reductions carry trace <P_pm> <= 1.
struct DensityMatrix {
    Matrix entries;
    double trace{0.0};

    DensityMatrix() = default;
    explicit DensityMatrix(Matrix m) : entries(std::move(m)), trace(entries.trace().real()) {}

    [[nodiscard]] Eigen::Index dim() const { return entries.rows(); }

    [[nodiscard]] DensityMatrix normalized() const {
        if (!(trace > 0.0)) throw Error("cannot renormalize a density matrix with non-positive trace");
        return DensityMatrix(entries / trace);
    }

    static DensityMatrix pure(const State& psi) { return DensityMatrix(psi * psi.adjoint()); }
};

enum class StateKind { fm, coherent, fock };

struct StateSpec {
    StateKind kind{StateKind::fm};
    cplx alpha{0.0, 0.0};
    int fock{0};

    static StateSpec ferromagnet() { return {}; }
    static StateSpec coherent_state(cplx a) { return {StateKind::coherent, a, 0}; }
    static StateSpec fock_state(int n) { return {StateKind::fock, {}, n}; }
};

struct PreparedState {
    State psi;
    /// Probability mass of the untruncated state that falls above n_max (coherent states only).
    double truncated_mass{0.0};
    bool truncation_warning{false};
};

/// Photon amplitudes of a coherent state on Fock levels 0..n_max, before renormalization.
inline Vector coherent_amplitudes(cplx alpha, int n_max) {
    Vector c(n_max + 1);
    c[0] = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n <= n_max; ++n) c[n] = c[n - 1] * alpha / std::sqrt(static_cast<double>(n));
    return c;
}

/// Photon factor times the all-|0> qubit register.
inline PreparedState special_state(const StateSpec& spec, const HilbertLayout& L) {
    PreparedState out;
    out.psi = State::Zero(L.dim());
    switch (spec.kind) {
    case StateKind::fm:
        out.psi[0] = 1.0;
        break;
    case StateKind::fock:
        if (spec.fock < 0 || spec.fock > L.n_max)
            throw ConfigError("Fock index " + std::to_string(spec.fock) + " exceeds n_max");
        out.psi[L.index(spec.fock, 0)] = 1.0;
        break;
    case StateKind::coherent: {
        const Vector c = coherent_amplitudes(spec.alpha, L.n_max);
        out.truncated_mass = std::max(0.0, 1.0 - c.squaredNorm());
        out.truncation_warning = out.truncated_mass > 1e-8;
        const double nrm = c.norm();
        for (int n = 0; n <= L.n_max; ++n) out.psi[L.index(n, 0)] = c[n] / nrm;
        break;
    }
    }
    return out;
}

inline PreparedState special_state(const StateSpec& spec, const ModelParams& p) {
    return special_state(spec, HilbertLayout(p));
}

/// Coherent state on the bare photon space 0..n_max, renormalized.
inline Vector photon_coherent(cplx alpha, int n_max) {
    Vector c = coherent_amplitudes(alpha, n_max);
    return c / c.norm();
}

/// <psi| O |psi> for a Hermitian O (real part).
inline double expectation(const SparseOperator& O, const State& psi) {
    return psi.dot(O * psi).real();
}

} // namespace dicat
