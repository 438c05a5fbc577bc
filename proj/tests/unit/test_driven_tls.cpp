#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "syncheom/bessel.hpp"
#include "syncheom/driven_tls.hpp"

using namespace syncheom;

namespace {
const OdeTolerance kTight{1e-12, 1e-11, 0.05, 1e-14};
}

TEST(Hamiltonian, UndrivenAtZero) {
    const DriveParams p{1.0, 0.0, 0.0, 3.0};
    EXPECT_EQ(max_abs_diff(hamiltonian(0.0, p), 0.5 * pauli::z), 0.0);
}

TEST(Hamiltonian, DriveVanishesAtQuarterPeriod) {
    const DriveParams p{1.0, 0.2, 60.0, 24.0};
    const Complex2x2 h = hamiltonian(kPi / (2.0 * p.omega), p);
    EXPECT_LT(max_abs_diff(h, 0.5 * pauli::z + 0.1 * pauli::x), 1e-13);
}

TEST(Hamiltonian, PeriodicAndHermitian) {
    const DriveParams p{1.0, 0.3, 60.0, 24.95};
    for (double t = 0.0; t < 2.0; t += 0.037) {
        EXPECT_LT(max_abs_diff(hamiltonian(t, p), hamiltonian(t + p.period(), p)), 1e-12);
        EXPECT_TRUE(is_hermitian(hamiltonian(t, p)));
    }
}

TEST(RotatingFrame, IdentityPoints) {
    const DriveParams p{1.0, 0.0, 60.0, 24.95};
    EXPECT_LT(max_abs_diff(rotating_frame_unitary(0.0, p), pauli::identity), 1e-15);
    EXPECT_LT(max_abs_diff(rotating_frame_unitary(kPi / p.omega, p), pauli::identity), 1e-12);
    const DriveParams undriven{1.0, 0.0, 0.0, 5.0};
    for (double t : {0.1, 0.7, 3.0}) EXPECT_EQ(max_abs_diff(rotating_frame_unitary(t, undriven), pauli::identity), 0.0);
}

TEST(RotatingFrame, MatchesExplicitForm) {
    const DriveParams p{1.0, 0.0, 30.0, 12.5};
    for (double t = 0.0; t < 1.0; t += 0.05) {
        const Complex2x2 u = rotating_frame_unitary(t, p);
        EXPECT_TRUE(is_unitary(u));
        EXPECT_LT(max_abs_diff(u, oracle::exp_sigma_x(0.5 * p.Omega / p.omega * std::sin(p.omega * t))), 1e-14);
    }
}

TEST(Fourier, ZeroOrderVanishesAtJ0Zero) {
    DriveParams p{1.0, 0.0, 60.0, 0.0};
    p.omega = p.Omega / bessel_j0_zero(1);
    EXPECT_LT(fourier_component(0, p).op.max_abs(), 1e-12);
}

TEST(Fourier, ZeroOrderUndriven) {
    const DriveParams p{1.0, 0.4, 0.0, 2.0};
    EXPECT_LT(max_abs_diff(fourier_component(0, p).op, 0.5 * pauli::z + 0.2 * pauli::x), 1e-15);
}

TEST(Fourier, MatchesQuadrature) {
    const DriveParams points[] = {{1.0, 0.0, 60.0, 24.95}, {1.0, 0.0, 60.0, 35.0}, {1.0, 0.0, 30.0, 12.5},
                                  {1.0, 0.2, 60.0, 24.95}};
    for (const auto& p : points) {
        for (int n = -7; n <= 7; ++n) {
            EXPECT_LT(max_abs_diff(fourier_component(n, p).op, oracle::fourier_integral(n, p)), 1e-8)
                << "n=" << n << " Omega=" << p.Omega << " omega=" << p.omega;
        }
    }
}

TEST(Fourier, AdjointPairing) {
    const DriveParams p{1.0, 0.2, 60.0, 24.95};
    for (int n = 0; n <= 12; ++n) {
        EXPECT_EQ(fourier_component(-n, p).op, fourier_component(n, p).op.adjoint()) << n;
    }
}

TEST(RotatingHamiltonian, ConvergesToDirectConjugation) {
    const DriveParams p{1.0, 0.2, 60.0, 24.95};
    for (double t = 0.0; t < 0.5; t += 0.013) {
        const Complex2x2 h = rotating_hamiltonian(t, p, 40);
        EXPECT_LT(max_abs_diff(h, oracle::direct_conjugation(t, p)), 1e-9);
        EXPECT_TRUE(is_hermitian(h));
    }
}

TEST(RotatingHamiltonian, PartialSumErrorDecreases) {
    const DriveParams p{1.0, 0.0, 60.0, 10.0};  // Ω/ω = 6
    const double t = 0.123;
    const Complex2x2 exact = oracle::direct_conjugation(t, p);
    double prev = max_abs_diff(rotating_hamiltonian(t, p, 7), exact);
    for (int n = 8; n <= 24; ++n) {
        const double err = max_abs_diff(rotating_hamiltonian(t, p, n), exact);
        EXPECT_LE(err, prev + 1e-15) << n;
        prev = err;
    }
}

TEST(RotatingHamiltonian, ZeroOrderIsStatic) {
    const DriveParams p{1.0, 0.2, 60.0, 30.0};
    EXPECT_LT(max_abs_diff(rotating_hamiltonian(0.37, p, 0), static_hamiltonian(p)), 1e-15);
}

TEST(StaticHamiltonian, Cases) {
    DriveParams p{1.0, 0.0, 60.0, 0.0};
    p.omega = rrc_frequency(1, p.Omega);
    EXPECT_LT(static_hamiltonian(p).max_abs(), 1e-12);
    p.delta = 0.2;
    EXPECT_LT(max_abs_diff(static_hamiltonian(p), 0.1 * pauli::x), 1e-12);
    const DriveParams undriven{1.0, 0.3, 0.0, 4.0};
    EXPECT_LT(max_abs_diff(static_hamiltonian(undriven), 0.5 * pauli::z + 0.15 * pauli::x), 1e-15);
}

TEST(StaticHamiltonian, ValidityPredicate) {
    EXPECT_TRUE(static_approximation_valid({1.0, 0.0, 60.0, 24.95}));
    EXPECT_FALSE(static_approximation_valid({1.0, 0.0, 60.0, 5.0}));
    EXPECT_FALSE(static_approximation_valid({1.0, 3.0, 60.0, 24.95}));
}

TEST(Rrc, OperatingPoint) {
    const auto j0 = [](double x) { return oracle::bessel_integral(0, x); };
    EXPECT_NEAR(rrc_frequency(1, 60.0), 60.0 / oracle::bisect(j0, 2.0, 3.0), 1e-10);
    EXPECT_NEAR(rrc_frequency(1, 60.0), 24.95, 0.01);
}

TEST(Rrc, MonotoneAndLinear) {
    for (int k = 1; k < 16; ++k) {
        EXPECT_LT(rrc_frequency(k + 1, 60.0), rrc_frequency(k, 60.0));
        EXPECT_DOUBLE_EQ(rrc_frequency(k, 120.0), 2.0 * rrc_frequency(k, 60.0));
    }
    EXPECT_THROW(rrc_frequency(17, 60.0), std::out_of_range);
}

TEST(Floquet, UndrivenSpectrum) {
    const DriveParams p{1.0, 0.0, 0.0, 3.0};
    const Quasienergies q = floquet_quasienergies(p, kTight);
    EXPECT_NEAR(q.values[0], -0.5, 1e-9);
    EXPECT_NEAR(q.values[1], 0.5, 1e-9);
    const DriveParams slow{1.0, 0.0, 0.0, 0.7};  // ±0.5 folded into [-0.35, 0.35)
    const Quasienergies f = floquet_quasienergies(slow, kTight);
    EXPECT_NEAR(f.values[0], -0.2, 1e-9);
    EXPECT_NEAR(f.values[1], 0.2, 1e-9);
}

TEST(Floquet, DegeneracyAtRrc) {
    DriveParams p{1.0, 0.0, 60.0, 0.0};
    p.omega = rrc_frequency(1, p.Omega);
    const double at = floquet_quasienergies(p, kTight).splitting;
    for (double shift : {-10.0, 10.0}) {
        DriveParams q = p;
        q.omega += shift;
        EXPECT_LE(at, 0.1 * floquet_quasienergies(q, kTight).splitting) << shift;
    }
    EXPECT_LT(at, kQuasienergyDegeneracyTol);
}

TEST(Floquet, HighFrequencyMatchesStaticPrediction) {
    for (const DriveParams p : {DriveParams{1.0, 0.0, 60.0, 35.0}, DriveParams{1.0, 0.0, 60.0, 45.0},
                                DriveParams{1.0, 0.0, 40.0, 30.0}}) {
        const double predicted = p.omega0 * std::abs(oracle::bessel_integral(0, p.Omega / p.omega));
        EXPECT_NEAR(floquet_quasienergies(p, kTight).splitting, predicted, 0.1 * predicted) << p.omega;
    }
}

TEST(Floquet, GaugeIndependentOfStartTime) {
    const DriveParams p{1.0, 0.2, 60.0, 35.0};
    const Quasienergies ref = floquet_quasienergies(p, kTight, 0.0);
    for (double frac : {0.1, 0.37, 0.5, 0.9}) {
        const Quasienergies q = floquet_quasienergies(p, kTight, frac * p.period());
        EXPECT_NEAR(q.values[0], ref.values[0], 1e-8);
        EXPECT_NEAR(q.values[1], ref.values[1], 1e-8);
    }
}

TEST(Propagator, LabEqualsRotatingFrameTimesUr) {
    // Rotating-frame state evolves under H_r(t) = U_r† V U_r; then ψ_lab = U_r ψ_rot.
    const DriveParams p{1.0, 0.2, 30.0, 12.5};
    const double t1 = 1.7;
    const Complex2x2 lab = propagator(p, 0.0, t1, kTight);

    const RhsFunction f = [&](double t, std::span<const cplx> y, std::span<cplx> d) {
        const Complex2x2 h = oracle::direct_conjugation(t, p);
        d[0] = cplx{0.0, -1.0} * (h(0, 0) * y[0] + h(0, 1) * y[1]);
        d[1] = cplx{0.0, -1.0} * (h(1, 0) * y[0] + h(1, 1) * y[1]);
    };
    OdeTolerance tol = kTight;
    tol.max_step = p.period() / 50.0;
    const auto rot = integrate_to(f, {cplx{0.6}, cplx{0.0, 0.8}}, 0.0, t1, tol);
    const Complex2x2 ur = rotating_frame_unitary(t1, p);
    const cplx e = ur(0, 0) * rot[0] + ur(0, 1) * rot[1];
    const cplx g = ur(1, 0) * rot[0] + ur(1, 1) * rot[1];
    const cplx e_lab = lab(0, 0) * 0.6 + lab(0, 1) * cplx{0.0, 0.8};
    const cplx g_lab = lab(1, 0) * 0.6 + lab(1, 1) * cplx{0.0, 0.8};
    EXPECT_LT(std::abs(e - e_lab), 1e-8);
    EXPECT_LT(std::abs(g - g_lab), 1e-8);
}

TEST(DriveParams, Validation) {
    EXPECT_THROW((DriveParams{1.0, 0.0, 60.0, 0.0}.validate()), std::invalid_argument);
    EXPECT_NO_THROW((DriveParams{1.0, 0.0, 0.0, 0.0}.validate(false)));
    EXPECT_THROW((DriveParams{NAN, 0.0, 1.0, 1.0}.validate()), std::invalid_argument);
}
