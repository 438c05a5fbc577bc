#include "syncheom/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace syncheom {

BlochVector bloch_vector(const DensityMatrix& rho) {
    const cplx c = rho.c();
    return {2.0 * c.real(), -2.0 * c.imag(), 2.0 * rho.p() - 1.0};
}

std::array<cplx, 2> coherent_state(double theta, double phi) {
    return {cplx{std::cos(0.5 * theta), 0.0}, std::polar(std::sin(0.5 * theta), phi)};
}

double husimi_q(const DensityMatrix& rho, double theta, double phi) {
    const auto psi = coherent_state(theta, phi);
    const Complex2x2& m = rho.matrix();
    const cplx expectation = std::conj(psi[0]) * (m(0, 0) * psi[0] + m(0, 1) * psi[1]) +
                             std::conj(psi[1]) * (m(1, 0) * psi[0] + m(1, 1) * psi[1]);
    return expectation.real() / kTwoPi;
}

void gauss_legendre(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n == 0) throw std::invalid_argument("gauss_legendre: need at least one node");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const double nd = static_cast<double>(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (static_cast<double>(i) + 0.75) / (nd + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double kd = static_cast<double>(k);
                const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
                p0 = p1;
                p1 = p2;
            }
            dp = nd * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

SphereGrid SphereGrid::make(std::size_t n_theta, std::size_t n_phi) {
    if (n_theta == 0 || n_phi == 0) throw std::invalid_argument("SphereGrid: empty grid");
    std::vector<double> x, w;
    gauss_legendre(n_theta, x, w);
    SphereGrid g;
    g.theta.resize(n_theta);
    g.theta_weight.resize(n_theta);
    // x = cos θ ascending means θ descending; store θ ascending.
    for (std::size_t i = 0; i < n_theta; ++i) {
        g.theta[i] = std::acos(x[n_theta - 1 - i]);
        g.theta_weight[i] = w[n_theta - 1 - i];
    }
    g.phi.resize(n_phi);
    for (std::size_t k = 0; k < n_phi; ++k) g.phi[k] = kTwoPi * static_cast<double>(k) / static_cast<double>(n_phi);
    g.phi_weight = kTwoPi / static_cast<double>(n_phi);
    return g;
}

double SphereGrid::total_weight() const {
    double s = 0.0;
    for (double w : theta_weight) s += w;
    return s * phi_weight * static_cast<double>(phi.size());
}

double sync_measure_closed(const DensityMatrix& rho, double phi) {
    const cplx c = rho.c();
    return 0.25 * (c.real() * std::cos(phi) - c.imag() * std::sin(phi));
}

double sync_measure_integral(const DensityMatrix& rho, double phi, std::size_t n_theta) {
    if (n_theta < 64) throw std::invalid_argument("sync_measure_integral: need at least 64 theta nodes");
    // Nodes in θ itself: sin θ · Q is smooth in θ, whereas in cos θ it carries sqrt(1 - x²).
    thread_local std::vector<double> x, w;
    if (x.size() != n_theta) gauss_legendre(n_theta, x, w);
    double acc = 0.0;
    for (std::size_t i = 0; i < n_theta; ++i) {
        const double theta = 0.5 * kPi * (x[i] + 1.0);
        acc += w[i] * std::sin(theta) * husimi_q(rho, theta, phi);
    }
    return 0.5 * kPi * acc - 1.0 / kTwoPi;
}

double wrap_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r >= kTwoPi ? 0.0 : r;
}

double angle_difference(double a, double b) {
    double d = std::remainder(a - b, kTwoPi);
    if (d <= -kPi) d += kTwoPi;
    return d;
}

SyncMaximum max_sync(const DensityMatrix& rho) {
    const cplx c = rho.c();
    const double mag = std::abs(c);
    if (mag == 0.0) return {0.0, 0.0};
    return {wrap_angle(-std::arg(c)), 0.25 * mag};
}

QArgmax q_argmax(const DensityMatrix& rho) {
    const BlochVector m = bloch_vector(rho);
    const double norm = m.norm();
    if (norm <= 1e-9) return {0.0, 0.0, true};
    const double theta = std::acos(std::clamp(m.z / norm, -1.0, 1.0));
    const double phi = (m.x == 0.0 && m.y == 0.0) ? 0.0 : wrap_angle(std::atan2(m.y, m.x));
    return {theta, phi, false};
}

double window_average(std::span<const double> times, std::span<const double> values, double t_center, double width) {
    if (times.size() != values.size() || times.empty()) {
        throw std::invalid_argument("window_average: times and values must be non-empty and of equal length");
    }
    if (width < 0.0) throw std::invalid_argument("window_average: negative width");

    if (width == 0.0) {
        const auto it = std::lower_bound(times.begin(), times.end(), t_center);
        std::size_t idx = static_cast<std::size_t>(it - times.begin());
        if (idx == times.size()) {
            idx = times.size() - 1;
        } else if (idx > 0 && t_center - times[idx - 1] <= times[idx] - t_center) {
            --idx;
        }
        return values[idx];
    }

    const double a = t_center - 0.5 * width;
    const double b = t_center + 0.5 * width;
    const double slack = 1e-9 * std::max({1.0, std::abs(times.front()), std::abs(times.back())});
    if (a < times.front() - slack || b > times.back() + slack) {
        throw std::out_of_range("window_average: window leaves the sampled range");
    }
    const bool any_inside = std::any_of(times.begin(), times.end(), [&](double t) { return t >= a && t <= b; });
    if (!any_inside) throw std::invalid_argument("window_average: empty window");

    // Exact integral of the linear interpolant over [a, b].
    const auto value_at = [&](std::size_t i, double t) {
        const double t0 = times[i], t1 = times[i + 1];
        const double s = t1 > t0 ? (t - t0) / (t1 - t0) : 0.0;
        return values[i] + s * (values[i + 1] - values[i]);
    };
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
        const double lo = std::max(a, times[i]);
        const double hi = std::min(b, times[i + 1]);
        if (hi <= lo) continue;
        integral += 0.5 * (hi - lo) * (value_at(i, lo) + value_at(i, hi));
    }
    return integral / (std::min(b, times.back()) - std::max(a, times.front()));
}

}  // namespace syncheom
