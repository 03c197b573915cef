// model.hpp: model parameters and the photon-major composite basis layout

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dicat/types.hpp"

namespace dicat {

enum class Boundary { open, periodic };

inline std::string to_string(Boundary b) { return b == Boundary::open ? "open" : "periodic"; }

/// Couplings of the Dicke-Ising Hamiltonian in units where omega0 sets the scale.
/// `g` is the bare coupling; the Hamiltonian carries g/sqrt(N).
struct ModelParams {
    double omega0{1.0};
    double omegaz{0.05};
    double J{1.0};
    double g{0.9};
    int N{1};
    int n_max{20};
    double spin{0.5};
    Boundary boundary{Boundary::open};

    bool operator==(const ModelParams&) const = default;

    void validate() const {
        if (!(omega0 > 0.0)) throw ConfigError("omega0 must be positive");
        if (N < 1) throw ConfigError("N must be at least 1");
        if (n_max < 0) throw ConfigError("n_max must be non-negative");
        if (!(spin >= 0.5) || std::abs(2.0 * spin - std::round(2.0 * spin)) > 1e-12)
            throw ConfigError("spin must be a positive half-integer");
    }

    /// Hilbert-space builders are defined for qubits only.
    void require_qubits() const {
        validate();
        if (spin != 0.5) throw ConfigError("Hilbert-space builders require spin 1/2");
        if (N > 24) throw ConfigError("qubit register too large for a dense state vector");
    }

    [[nodiscard]] std::size_t dimension() const {
        const auto local = static_cast<std::size_t>(std::llround(2.0 * spin + 1.0));
        std::size_t d = static_cast<std::size_t>(n_max + 1);
        for (int j = 0; j < N; ++j) d *= local;
        return d;
    }
};

/// Flat index = photon * 2^N + sum_j bit_j * 2^(N-1-j); bit 0 is the sigma^z = +1 state.
struct HilbertLayout {
    int N{1};
    int n_max{0};

    HilbertLayout() = default;
    HilbertLayout(int qubits, int photon_cutoff) : N(qubits), n_max(photon_cutoff) {}
    explicit HilbertLayout(const ModelParams& p) : N(p.N), n_max(p.n_max) { p.require_qubits(); }

    [[nodiscard]] Eigen::Index qubit_dim() const { return Eigen::Index{1} << N; }
    [[nodiscard]] Eigen::Index photon_dim() const { return n_max + 1; }
    [[nodiscard]] Eigen::Index dim() const { return photon_dim() * qubit_dim(); }

    [[nodiscard]] Eigen::Index index(int photon, std::uint64_t qubit_bits) const {
        return static_cast<Eigen::Index>(photon) * qubit_dim() + static_cast<Eigen::Index>(qubit_bits);
    }
    [[nodiscard]] int photon(Eigen::Index flat) const { return static_cast<int>(flat / qubit_dim()); }
    [[nodiscard]] std::uint64_t qubits(Eigen::Index flat) const {
        return static_cast<std::uint64_t>(flat % qubit_dim());
    }
    /// Bit mask of qubit j inside the qubit register.
    [[nodiscard]] std::uint64_t mask(int j) const { return std::uint64_t{1} << (N - 1 - j); }
    [[nodiscard]] int bit(Eigen::Index flat, int j) const { return (qubits(flat) & mask(j)) ? 1 : 0; }
    /// sigma^z eigenvalue of qubit j in basis state `flat`.
    [[nodiscard]] double z(Eigen::Index flat, int j) const { return bit(flat, j) ? -1.0 : 1.0; }

    void check_qubit(int j) const {
        if (j < 0 || j >= N) throw ConfigError("qubit index out of range: " + std::to_string(j));
    }
};

/// Bit labels (qubit 0 first) of a flat index; inverse of HilbertLayout::index.
inline std::vector<int> qubit_labels(const HilbertLayout& L, Eigen::Index flat) {
    std::vector<int> bits(static_cast<std::size_t>(L.N));
    for (int j = 0; j < L.N; ++j) bits[static_cast<std::size_t>(j)] = L.bit(flat, j);
    return bits;
}

} // namespace dicat
