#pragma once

// Independent reference computations. Nothing here calls into the library's
// numerical routines; only its value types are shared.

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "syncheom/complex2x2.hpp"
#include "syncheom/density_matrix.hpp"
#include "syncheom/driven_tls.hpp"

namespace oracle {

using syncheom::BlochVector;
using syncheom::Complex2x2;
using syncheom::cplx;
using syncheom::DensityMatrix;
using syncheom::DriveParams;

// J_n(x) = (1/2π) ∫_0^{2π} cos(nτ - x sin τ) dτ by the periodic trapezoid rule.
double bessel_integral(int n, double x, int nodes = 4096);

// Bisection on a sign change of f over [a, b] down to |b - a| < tol.
double bisect(const std::function<double(double)>& f, double a, double b, double tol = 1e-15);

// exp(-i a σx) = cos a - i sin a σx, written out.
Complex2x2 exp_sigma_x(double a);

// U_r†(t) V U_r(t) with V = (ω0/2)σz + (Δ/2)σx.
Complex2x2 direct_conjugation(double t, const DriveParams& p);

// (1/T) ∫_0^T U_r† V U_r e^{inωt} dt, trapezoid on `nodes` points.
Complex2x2 fourier_integral(int n, const DriveParams& p, int nodes = 2048);

// Lab-frame ψ(t) from ψ(0) under (ω0/2)σz + (Δ/2)σx + (Ω/2)cos(ωt)σx, classical
// fixed-step RK4, sampled at multiples of `every` steps of size dt.
std::vector<std::array<cplx, 2>> schrodinger_rk4(const DriveParams& p, std::array<cplx, 2> psi0, double dt,
                                                 std::size_t steps, std::size_t every);

// Bloch vector after free precession under (ω0/2)σz.
BlochVector larmor(const BlochVector& m0, double omega0, double t);

// Physical ρ(t) for a one-mode, depth-one hierarchy with constant H, built as
// an explicit 8x8 Liouvillian and exponentiated with Eigen. The mode has
// coefficient c, rate nu, terminator weight residual.
DensityMatrix heom_k0_l1_expm(const Complex2x2& h, cplx c, double nu, double residual, const DensityMatrix& rho0,
                              double t);

// Drude pole: c0 = λγ(cot(γ/2T) - i), ν0 = γ. Matsubara: c_k = 4λγT ν_k/(ν_k² - γ²).
cplx drude_coefficient(double lambda, double gamma, double temperature);
double matsubara_coefficient(int k, double lambda, double gamma, double temperature);

// Every multi-index of `modes` entries in [0, depth] with sum <= depth, by nested counting.
std::vector<std::vector<int>> enumerate_indices(int modes, int depth);

// Argmax of (1 + m·n)/4π by scanning an n_theta x n_phi grid.
struct ScanArgmax {
    double theta;
    double phi;
};
ScanArgmax scan_q_argmax(const BlochVector& m, int n_theta = 721, int n_phi = 1440);

// Uniform in the Bloch ball (mixed states) or on the sphere (pure states).
DensityMatrix random_state(std::mt19937_64& rng, bool pure = false);

// Complex 2x2 with i.i.d. normal entries, then made Hermitian.
Complex2x2 random_hermitian(std::mt19937_64& rng, double scale = 1.0);

}  // namespace oracle
