#pragma once

#include <array>
#include <utility>

#include "syncheom/complex2x2.hpp"
#include "syncheom/ode.hpp"

namespace syncheom {

// Units: ħ = k_B = 1; frequencies, energies and inverse times in units of omega0
// (which is 1 in every default).
struct DriveParams {
    double omega0 = 1.0;  // gap ħω0
    double delta = 0.0;   // static σx bias, in units of ħω0
    double Omega = 0.0;   // drive amplitude
    double omega = 1.0;   // drive angular frequency

    double period() const { return kTwoPi / omega; }

    // Throws std::invalid_argument unless every field is finite, omega0 >= 0,
    // and (when require_drive_frequency) omega > 0. omega0 = 0 is accepted so
    // that pure-dephasing configurations can be expressed.
    void validate(bool require_drive_frequency = true) const;
};

// Time-independent part V = (ω0/2)σz + (Δ/2)σx.
Complex2x2 static_part(const DriveParams& p);

// Lab-frame Hamiltonian (ω0/2)σz + (Δ/2)σx + (Ω/2)cos(ωt)σx.
Complex2x2 hamiltonian(double t, const DriveParams& p);

// exp(-i (Ω/2ω) sin(ωt) σx).
Complex2x2 rotating_frame_unitary(double t, const DriveParams& p);

struct FourierComponent {
    int order = 0;
    Complex2x2 op;
};

// H_n of the rotating-frame Hamiltonian H_r(t) = Σ_n H_n e^{-inωt}:
//   n = 2k:   (ω0/2) J_2k(Ω/ω) σz + δ_{k0} (Δ/2) σx
//   n = 2k+1: i (ω0/2) J_{2k+1}(Ω/ω) σy
FourierComponent fourier_component(int n, const DriveParams& p);

// Partial Fourier sum over |n| <= n_max. n_max = 0 gives the static approximation.
Complex2x2 rotating_hamiltonian(double t, const DriveParams& p, int n_max);

// U_r†(t) V U_r(t), the exact rotating-frame Hamiltonian.
Complex2x2 rotating_hamiltonian_exact(double t, const DriveParams& p);

// (ω0/2) J0(Ω/ω) σz + (Δ/2) σx.
Complex2x2 static_hamiltonian(const DriveParams& p);

// Validity predicate for the static approximation: min(ω, Ω) / sqrt(ω0² + Δ²) >= ratio.
bool static_approximation_valid(const DriveParams& p, double ratio = 10.0);

// Ω / z_k. Throws std::invalid_argument for Omega <= 0, std::out_of_range for k.
double rrc_frequency(int k, double Omega);

// Lab-frame Schrödinger propagator U(t1, t0), flattened row-major.
Complex2x2 propagator(const DriveParams& p, double t0, double t1, const OdeTolerance& tol);

struct Quasienergies {
    // Sorted, each in [-ω/2, ω/2).
    std::array<double, 2> values{};
    // Distance between the two on the quasienergy circle of circumference ω.
    double splitting = 0.0;
};

// Quasienergies from the one-period monodromy matrix starting at t0.
Quasienergies floquet_quasienergies(const DriveParams& p, const OdeTolerance& tol, double t0 = 0.0);

// Splitting below which quasienergies count as degenerate.
inline constexpr double kQuasienergyDegeneracyTol = 1e-3;

// Fold x into [-ω/2, ω/2).
double fold_quasienergy(double x, double omega);

}  // namespace syncheom
