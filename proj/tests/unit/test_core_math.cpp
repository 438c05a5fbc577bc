#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "syncheom/bessel.hpp"
#include "syncheom/complex2x2.hpp"
#include "syncheom/ode.hpp"

using namespace syncheom;

TEST(Pauli, SquaresAndProducts) {
    const cplx i{0.0, 1.0};
    for (const auto& s : {pauli::x, pauli::y, pauli::z}) EXPECT_EQ(max_abs_diff(s * s, pauli::identity), 0.0);
    EXPECT_LT(max_abs_diff(pauli::x * pauli::y, i * pauli::z), 1e-15);
    EXPECT_LT(max_abs_diff(pauli::y * pauli::z, i * pauli::x), 1e-15);
    EXPECT_LT(max_abs_diff(pauli::z * pauli::x, i * pauli::y), 1e-15);
}

TEST(Complex2x2, HermitianAndUnitaryChecks) {
    EXPECT_TRUE(is_hermitian(pauli::y));
    EXPECT_FALSE(is_hermitian(Complex2x2::from(0.0, 1.0, 0.0, 0.0)));
    EXPECT_FALSE(is_hermitian(Complex2x2::from(cplx{1.0, 1e-9}, 0.0, 0.0, 1.0)));
    EXPECT_TRUE(is_unitary(pauli::x));
    EXPECT_FALSE(is_unitary(2.0 * pauli::x));
}

TEST(Complex2x2, PauliRoundTrip) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
        const Complex2x2 h = oracle::random_hermitian(rng);
        EXPECT_LT(max_abs_diff(pauli_compose(pauli_decompose(h)), h), 1e-14);
    }
}

TEST(Bessel, ZeroArgument) {
    EXPECT_EQ(bessel_j(0, 0.0), 1.0);
    EXPECT_EQ(bessel_j(3, 0.0), 0.0);
}

TEST(Bessel, ReflectionIsExact) {
    for (int n = 0; n <= 32; ++n) {
        for (double x : {0.3, 1.0, 2.404, 7.5, 24.0, 60.0, 137.0, 200.0}) {
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            EXPECT_EQ(bessel_j(-n, x), sign * bessel_j(n, x)) << n << " " << x;
        }
    }
}

TEST(Bessel, MatchesIntegralRepresentation) {
    EXPECT_NEAR(bessel_j(1, 1.0), oracle::bessel_integral(1, 1.0), 1e-14);
    double worst = 0.0;
    for (int n = 0; n <= 32; ++n) {
        for (double x : {0.01, 0.5, 0.99, 1.0, 3.3, 10.0, 24.95, 33.0, 60.0, 99.9, 150.0, 200.0}) {
            worst = std::max(worst, std::abs(bessel_j(n, x) - oracle::bessel_integral(n, x)));
        }
    }
    EXPECT_LT(worst, 1e-12);
}

TEST(Bessel, SumRule) {
    for (double x = 0.0; x <= 60.0; x += 0.75) {
        double s = bessel_j(0, x) * bessel_j(0, x);
        for (int n = 1; n <= 80; ++n) s += 2.0 * bessel_j(n, x) * bessel_j(n, x);
        EXPECT_NEAR(s, 1.0, 1e-10) << x;
    }
}

TEST(BesselZeros, MatchBisection) {
    const auto j0 = [](double x) { return oracle::bessel_integral(0, x); };
    EXPECT_NEAR(bessel_j0_zero(1), oracle::bisect(j0, 2.0, 3.0), 1e-12);
    EXPECT_NEAR(bessel_j0_zero(2), oracle::bisect(j0, 5.0, 6.0), 1e-12);
    EXPECT_NEAR(bessel_j0_zero(1), 2.4048, 1e-4);
    EXPECT_NEAR(bessel_j0_zero(2), 5.5201, 1e-4);
}

TEST(BesselZeros, DefiningPropertyAndOrder) {
    for (int k = 1; k <= 5; ++k) EXPECT_LT(std::abs(bessel_j(0, bessel_j0_zero(k))), 1e-12);
    for (int k = 1; k < kMaxBesselZeroIndex; ++k) EXPECT_LT(bessel_j0_zero(k), bessel_j0_zero(k + 1));
}

TEST(BesselZeros, RejectsOutOfRange) {
    EXPECT_THROW(bessel_j0_zero(0), std::out_of_range);
    EXPECT_THROW(bessel_j0_zero(kMaxBesselZeroIndex + 1), std::out_of_range);
}

TEST(ExpmSu2, IdentityAtZero) {
    std::mt19937_64 rng(3);
    EXPECT_LT(max_abs_diff(expm_su2(oracle::random_hermitian(rng), 0.0), pauli::identity), 1e-15);
}

TEST(ExpmSu2, SigmaZAtPi) {
    EXPECT_LT(max_abs_diff(expm_su2(pauli::z, kPi), -1.0 * pauli::identity), 1e-15);
}

TEST(ExpmSu2, ConjugationIdentity) {
    for (double a = -3.0; a <= 3.0; a += 0.1) {
        const Complex2x2 u = expm_su2(pauli::x, -0.5 * a);  // exp(+iα/2 σx)
        const Complex2x2 lhs = u * pauli::z * u.adjoint();
        const Complex2x2 rhs = std::cos(a) * pauli::z + std::sin(a) * pauli::y;
        EXPECT_LT(max_abs_diff(lhs, rhs), 1e-12) << a;
    }
}

TEST(ExpmSu2, UnitaryOnRandomInputs) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> s(-20.0, 20.0);
    for (int i = 0; i < 1000; ++i) {
        EXPECT_LT(unitarity_deviation(expm_su2(oracle::random_hermitian(rng, 3.0), s(rng))), 1e-12);
    }
}

TEST(ExpmSu2, RejectsNonHermitian) {
    EXPECT_THROW(expm_su2(Complex2x2::from(0.0, 1.0, 0.0, 0.0), 1.0), std::invalid_argument);
}

TEST(Ode, ZeroRhsKeepsState) {
    const RhsFunction zero = [](double, std::span<const cplx>, std::span<cplx> d) { std::fill(d.begin(), d.end(), cplx{}); };
    const std::vector<double> times{0.5, 1.0, 3.0};
    const auto traj = integrate_adaptive(zero, {cplx{1.0, 2.0}, cplx{-3.0, 0.5}}, 0.0, times, {});
    for (const auto& s : traj.states) {
        EXPECT_EQ(s[0], cplx(1.0, 2.0));
        EXPECT_EQ(s[1], cplx(-3.0, 0.5));
    }
}

TEST(Ode, ExponentialDecay) {
    const RhsFunction f = [](double, std::span<const cplx> y, std::span<cplx> d) { d[0] = -y[0]; };
    const OdeTolerance tol{1e-10, 1e-10, 0.1, 1e-12};
    const auto y = integrate_to(f, {cplx{1.0}}, 0.0, 1.0, tol);
    EXPECT_NEAR(y[0].real(), std::exp(-1.0), 1e-9);
}

TEST(Ode, LarmorPrecession) {
    // dρ/dt = -i[σz/2, ρ] from |+x>
    const Complex2x2 h = 0.5 * pauli::z;
    const RhsFunction f = [&](double, std::span<const cplx> y, std::span<cplx> d) {
        store(cplx{0.0, -1.0} * commutator(h, load(y)), d);
    };
    std::vector<cplx> y0(4);
    store(Complex2x2::from(0.5, 0.5, 0.5, 0.5), y0);
    const OdeTolerance tol{1e-12, 1e-10, 0.1, 1e-14};
    const auto y = load(integrate_to(f, y0, 0.0, kPi, tol));
    const BlochVector m{2.0 * y(0, 1).real(), -2.0 * y(0, 1).imag(), (y(0, 0) - y(1, 1)).real()};
    const BlochVector want = oracle::larmor({1.0, 0.0, 0.0}, 1.0, kPi);
    EXPECT_NEAR(m.x, want.x, 1e-8);
    EXPECT_NEAR(m.y, want.y, 1e-8);
    EXPECT_NEAR(m.z, want.z, 1e-8);
    EXPECT_NEAR(m.x, -1.0, 1e-8);
}

TEST(Ode, GlobalErrorWithinTenTimesTolerance) {
    // Harmonic oscillator y'' = -w² y as a complex rotation.
    const double w = 3.0;
    const RhsFunction f = [&](double, std::span<const cplx> y, std::span<cplx> d) { d[0] = cplx{0.0, -w} * y[0]; };
    for (double rtol : {1e-6, 1e-8, 1e-10}) {
        const OdeTolerance tol{rtol, rtol, 1.0, 1e-14};
        std::vector<double> times;
        for (int i = 1; i <= 40; ++i) times.push_back(0.25 * i);
        const auto traj = integrate_adaptive(f, {cplx{1.0}}, 0.0, times, tol);
        double worst = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i) {
            worst = std::max(worst, std::abs(traj.states[i][0] - std::polar(1.0, -w * times[i])));
        }
        EXPECT_LT(worst, 10.0 * rtol) << rtol;
    }
}

TEST(Ode, StepUnderflowOnBlowUp) {
    const RhsFunction f = [](double, std::span<const cplx> y, std::span<cplx> d) { d[0] = y[0] * y[0]; };
    const OdeTolerance tol{1e-10, 1e-10, 0.1, 1e-6};
    EXPECT_THROW(integrate_to(f, {cplx{1.0}}, 0.0, 2.0, tol), StepUnderflow);
}

TEST(Ode, ToleranceValidation) {
    EXPECT_THROW((OdeTolerance{0.0, 1e-8, 0.1, 1e-12}.validate()), std::invalid_argument);
    EXPECT_THROW((OdeTolerance{1e-8, 1e-8, 0.1, 0.2}.validate()), std::invalid_argument);
}
