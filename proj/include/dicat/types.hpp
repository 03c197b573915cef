// types.hpp: shared scalar/matrix aliases and error types

#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace dicat {

using cplx = std::complex<double>;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

// Row-major storage keeps H*x cache friendly for the Lanczos and Krylov loops.
using SparseOperator = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

/// Pure state on the composite photon (x) qubit space.
using State = Vector;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid input parameters or configuration.
struct ConfigError : Error {
    using Error::Error;
};

/// An iterative method failed to reach its tolerance within its budget.
struct ConvergenceError : Error {
    double residual;
    ConvergenceError(const std::string& what, double res) : Error(what), residual(res) {}
};

} // namespace dicat
