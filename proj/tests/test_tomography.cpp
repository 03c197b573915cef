// Tomography: closed-form Wigner functions, displaced-parity and ancilla routes, marginals.

#include <gtest/gtest.h>

#include "dicat/tomography/displacement.hpp"
#include "dicat/tomography/marginal.hpp"
#include "dicat/tomography/wigner.hpp"
#include "support.hpp"

using namespace dicat;

namespace {

DensityMatrix fock(int n, int n_max) {
    Vector v = Vector::Zero(n_max + 1);
    v[n] = 1.0;
    return DensityMatrix::pure(v);
}

double max_diff(const WignerField& a, const WignerField& b) { return (a.values - b.values).cwiseAbs().maxCoeff(); }

} // namespace

TEST(Wigner, VacuumAndFockStates) {
    const WignerGrid grid = WignerGrid::square(4.0, 41);
    for (int n : {0, 1, 2, 5, 9}) {
        const DensityMatrix rho = fock(n, 12);
        const WignerField w = wigner_direct(rho, grid);
        for (Eigen::Index i = 0; i < grid.x.size(); ++i)
            for (Eigen::Index j = 0; j < grid.p.size(); ++j)
                ASSERT_NEAR(w.values(i, j), oracle::wigner_fock(n, grid.x[i], grid.p[j]), 1e-12) << n;
        // W(0, 0) = (-1)^n / pi.
        EXPECT_NEAR(w.values(20, 20), (n % 2 ? -1.0 : 1.0) / pi, 1e-14);
    }
    const WignerField vac = wigner_displaced_parity(fock(0, 4), grid);
    for (Eigen::Index i = 0; i < grid.x.size(); ++i)
        for (Eigen::Index j = 0; j < grid.p.size(); ++j)
            ASSERT_NEAR(vac.values(i, j), std::exp(-grid.x[i] * grid.x[i] - grid.p[j] * grid.p[j]) / pi, 1e-12);
}

TEST(Wigner, CoherentAndCatStates) {
    const int n_max = 40;
    const WignerGrid grid = WignerGrid::square(5.0, 51);
    const cplx alpha(1.1, 0.6);
    const WignerField coh = wigner_direct(DensityMatrix::pure(photon_coherent(alpha, n_max)), grid);
    const double x0 = std::sqrt(2.0) * alpha.real(), p0 = std::sqrt(2.0) * alpha.imag();
    for (Eigen::Index i = 0; i < grid.x.size(); ++i)
        for (Eigen::Index j = 0; j < grid.p.size(); ++j) {
            const double dx = grid.x[i] - x0, dp = grid.p[j] - p0;
            ASSERT_NEAR(coh.values(i, j), std::exp(-dx * dx - dp * dp) / pi, 1e-10);
        }

    // Even cat of real amplitude a: fringes 2 e^{-x^2-p^2} cos(2 sqrt2 a p).
    const double a = 1.7;
    const Vector v = coherent_amplitudes(a, n_max) + coherent_amplitudes(-a, n_max);
    const WignerField cat = wigner_direct(DensityMatrix::pure(v / v.norm()), grid);
    const double norm = 1.0 / (2.0 * (1.0 + std::exp(-2.0 * a * a)));
    const double xa = std::sqrt(2.0) * a;
    for (Eigen::Index i = 0; i < grid.x.size(); ++i)
        for (Eigen::Index j = 0; j < grid.p.size(); ++j) {
            const double x = grid.x[i], p = grid.p[j];
            const double ref = norm / pi *
                               (std::exp(-(x - xa) * (x - xa) - p * p) + std::exp(-(x + xa) * (x + xa) - p * p) +
                                2.0 * std::exp(-x * x - p * p) * std::cos(2.0 * xa * p));
            ASSERT_NEAR(cat.values(i, j), ref, 1e-10);
        }
    EXPECT_LT(cat.min_value, -0.1);
    // The lobes at x = +-2.4 leak past |x| = 5; a wider grid holds all the mass.
    EXPECT_TRUE(cat.mass_warning);
    const WignerField wide = wigner_direct(DensityMatrix::pure(v / v.norm()), WignerGrid::square(8.0, 161));
    EXPECT_NEAR(wide.quadrature_integral, 1.0, 1e-6);
    EXPECT_FALSE(wide.mass_warning);
}

TEST(Wigner, RoutesAgreeOnRandomStates) {
    std::mt19937_64 rng(2024);
    const WignerGrid grid = WignerGrid::square(3.0, 13);
    for (int trial = 0; trial < 8; ++trial) {
        const DensityMatrix rho(oracle::random_density(6, rng));
        const WignerField direct = wigner_direct(rho, grid);
        const WignerField parity = wigner_displaced_parity(rho, grid);
        EXPECT_LT(max_diff(direct, parity), 1e-8);
        EXPECT_LT(direct.max_imag_residue, 1e-14);
        for (int k = 0; k < 4; ++k) {
            std::uniform_real_distribution<double> u(-3.0, 3.0);
            const double x = u(rng), p = u(rng);
            const RamseyRecord r = ancilla_ramsey(rho, xi_of(x, p));
            EXPECT_NEAR(r.p_plus + r.p_minus, 1.0, 1e-12);
            EXPECT_NEAR(r.wigner_xp, wigner_point(rho.entries, x, p).real(), 1e-8);
        }
    }
}

TEST(Wigner, MarginalsAndNormalization) {
    std::mt19937_64 rng(9);
    const DensityMatrix rho(oracle::random_density(8, rng));
    const RealVector x = uniform_grid(-4.0, 4.0, 33);
    WignerGrid grid;
    grid.x = x;
    grid.p = uniform_grid(-9.0, 9.0, 181);
    const WignerField w = wigner_direct(rho, grid);
    const RealVector marg = marginal_w(rho, x);
    for (Eigen::Index i = 0; i < x.size(); ++i)
        EXPECT_NEAR(trapezoid(RealVector(w.values.row(i).transpose()), grid.p), marg[i], 1e-9);
    const WignerField half = wigner_direct(DensityMatrix(0.5 * rho.entries), grid);
    EXPECT_DOUBLE_EQ(half.trace_in, 0.5);
    EXPECT_LT((half.normalized().values - w.values).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_THROW(wigner_direct(DensityMatrix(Matrix::Zero(3, 3)), grid).normalized(), Error);
}

TEST(Wigner, ThreadedGridIsIdentical) {
    std::mt19937_64 rng(4);
    const DensityMatrix rho(oracle::random_density(10, rng));
    const WignerGrid grid = WignerGrid::square(4.0, 31);
    EXPECT_EQ(wigner_direct(rho, grid, 1).values, wigner_direct(rho, grid, 3).values);
    EXPECT_EQ(wigner_displaced_parity(rho, grid, 1).values, wigner_displaced_parity(rho, grid, 4).values);
}

TEST(Displacement, UnitaryAndPadded) {
    const cplx xi(1.3, -0.8);
    const Matrix D = displacement_op(xi, 10, 60);
    // D |0> is the coherent state |xi>.
    EXPECT_LT((D.col(0) - coherent_amplitudes(xi, 70)).norm(), 1e-10);
    EXPECT_LT((D.adjoint() * D - Matrix::Identity(71, 71)).cwiseAbs().maxCoeff(), 1e-12);
    const PaddedDisplacement big = displacement_rows(cplx(4.0, 0.0), 6);
    EXPECT_GT(big.n_pad, 20);
    EXPECT_LT(big.edge_weight, 1e-20);
    DisplacementOptions tiny;
    tiny.max_pad = 20;
    EXPECT_THROW(displacement_rows(cplx(9.0, 0.0), 6, tiny), ConfigError);
}
