#pragma once

#include <vector>

#include "syncheom/complex2x2.hpp"

namespace syncheom {

// Drude–Lorentz bath. lambda = 0 is the decoupled limit.
struct BathParams {
    double lambda = 1.0;       // coupling strength
    double gamma = 0.5;        // cutoff frequency
    double temperature = 0.5;  // k_B T in units of ħω0

    void validate() const;
};

// J(w) = 2λγw / (w² + γ²), odd in w.
double spectral_density(double w, const BathParams& b);

// C(t) = (1/π) ∫_0^∞ dω J(ω) [coth(ω/2T) cos ωt - i sin ωt], by Fourier-type
// quadrature. t must be > 0 (Re C diverges logarithmically at t = 0).
// Throws std::runtime_error when the quadrature error estimate exceeds 1e-8 relative.
cplx correlation_quadrature(double t, const BathParams& b);

// Decoherence exponent Γ(t) = (4/π) ∫_0^∞ dω J(ω) coth(ω/2T) (1 - cos ωt)/ω²
// for coupling operator eigenvalues ±1, by adaptive quadrature.
double dephasing_exponent_quadrature(double t, const BathParams& b);

struct ExpTerm {
    cplx coefficient;  // c_k
    double rate;       // ν_k
};

// C(t) ≈ Σ_k c_k e^{-ν_k t} + 2 residual δ(t).
struct ExponentialExpansion {
    std::vector<ExpTerm> terms;
    double residual = 0.0;  // Δ_K, Markovian weight of the dropped Matsubara tail

    std::size_t size() const { return terms.size(); }
    cplx evaluate(double t) const;
};

// Drude pole plus K Matsubara terms:
//   c_0 = λγ(cot(γ/2T) - i), ν_0 = γ
//   c_k = 4λγT ν_k / (ν_k² - γ²), ν_k = 2πkT
//   Δ_K = 2λT/γ - Re Σ c_k/ν_k
// Throws std::invalid_argument on γ = ν_k or γ/2T at a pole of cot.
ExponentialExpansion matsubara_expansion(const BathParams& b, int K);

// Σ_{k>K} |c_k| e^{-ν_k t}, summed to convergence (the discarded Matsubara tail).
double matsubara_tail(const BathParams& b, int K, double t);

}  // namespace syncheom
