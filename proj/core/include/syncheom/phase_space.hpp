#pragma once

#include <array>
#include <span>
#include <vector>

#include "syncheom/density_matrix.hpp"

namespace syncheom {

// m_i = tr(ρ σ_i)
BlochVector bloch_vector(const DensityMatrix& rho);

// cos(θ/2)|e> + e^{iφ} sin(θ/2)|g>, the +1 eigenvector of σ·n(θ, φ).
std::array<cplx, 2> coherent_state(double theta, double phi);

// Husimi Q = <ψ(θ,φ)|ρ|ψ(θ,φ)> / 2π = (1 + m·n) / 4π.
double husimi_q(const DensityMatrix& rho, double theta, double phi);

// Gauss–Legendre nodes in cos θ times a uniform φ grid. Weights carry the
// sin θ dθ dφ measure and sum to 4π.
struct SphereGrid {
    std::vector<double> theta;         // ascending in θ
    std::vector<double> theta_weight;  // Gauss–Legendre weight in cos θ
    std::vector<double> phi;           // k·2π/n_phi
    double phi_weight = 0.0;

    static SphereGrid make(std::size_t n_theta, std::size_t n_phi);
    double weight(std::size_t i_theta) const { return theta_weight[i_theta] * phi_weight; }
    double total_weight() const;
};

// Gauss–Legendre nodes and weights on [-1, 1], nodes ascending.
void gauss_legendre(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights);

// S(φ) = ¼ (Re c cos φ - Im c sin φ).
double sync_measure_closed(const DensityMatrix& rho, double phi);

// S(φ) = ∫_0^π dθ sin θ Q(θ, φ) - 1/2π by n_theta-point Gauss–Legendre in θ.
// Throws std::invalid_argument for n_theta < 64.
double sync_measure_integral(const DensityMatrix& rho, double phi, std::size_t n_theta = 64);

struct SyncMaximum {
    double phi_star = 0.0;  // in [0, 2π); 0 when c = 0
    double value = 0.0;     // |c| / 4
};

// max_φ |S(φ)|, attained at φ* = -arg(c) mod 2π.
SyncMaximum max_sync(const DensityMatrix& rho);

struct QArgmax {
    double theta = 0.0;
    double phi = 0.0;         // in [0, 2π)
    bool degenerate = false;  // |m| <= 1e-9: Q is uniform
};

// Direction of the Bloch vector, the analytic maximizer of Q.
QArgmax q_argmax(const DensityMatrix& rho);

// Mean of the piecewise-linear interpolant of (times, values) over
// [t_center - width/2, t_center + width/2]. width = 0 returns the nearest sample.
// Throws std::out_of_range when the window leaves the sampled range, and
// std::invalid_argument when no sample falls inside it.
double window_average(std::span<const double> times, std::span<const double> values, double t_center, double width);

// Wrap an angle to [0, 2π).
double wrap_angle(double a);

// Signed distance between two angles on the circle, in (-π, π].
double angle_difference(double a, double b);

}  // namespace syncheom
