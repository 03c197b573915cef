// marginal.hpp: position marginal w(x) = <x|rho|x> of a photon density matrix

#pragma once

#include <vector>

#include "dicat/core/oscillator.hpp"
#include "dicat/core/states.hpp"

namespace dicat {

/// w(x) = sum_{n,m} rho_nm psi_n(x) psi_m(x) with the oscillator functions real.
inline RealVector marginal_w(const DensityMatrix& rho, const RealVector& x_grid) {
    const int n_max = static_cast<int>(rho.dim()) - 1;
    const RealMatrix T = oscillator_table(x_grid, n_max);
    const Matrix TR = T.cast<cplx>() * rho.entries;
    RealVector w(x_grid.size());
    for (Eigen::Index i = 0; i < x_grid.size(); ++i) w[i] = (TR.row(i) * T.row(i).transpose().cast<cplx>())(0).real();
    return w;
}

/// Columns are successive density matrices (e.g. time samples).
inline RealMatrix marginal_w(const std::vector<DensityMatrix>& rhos, const RealVector& x_grid) {
    RealMatrix out(x_grid.size(), static_cast<Eigen::Index>(rhos.size()));
    for (std::size_t k = 0; k < rhos.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = marginal_w(rhos[k], x_grid);
    return out;
}

} // namespace dicat
