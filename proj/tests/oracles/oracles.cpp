#include "oracles.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <cmath>
#include <stdexcept>

namespace oracle {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double bessel_integral(int n, double x, int nodes) {
    double acc = 0.0;
    for (int j = 0; j < nodes; ++j) {
        const double tau = 2.0 * kPi * j / nodes;
        acc += std::cos(n * tau - x * std::sin(tau));
    }
    return acc / nodes;
}

double bisect(const std::function<double(double)>& f, double a, double b, double tol) {
    double fa = f(a);
    if (fa * f(b) > 0.0) throw std::invalid_argument("bisect: no sign change");
    while (b - a > tol) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        const double fm = f(m);
        if ((fm < 0.0) == (fa < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

Complex2x2 exp_sigma_x(double a) {
    const cplx c{std::cos(a), 0.0};
    const cplx s{0.0, -std::sin(a)};
    return Complex2x2::from(c, s, s, c);
}

std::vector<std::array<cplx, 2>> schrodinger_rk4(const DriveParams& p, std::array<cplx, 2> psi, double dt,
                                                 std::size_t steps, std::size_t every) {
    const cplx i{0.0, 1.0};
    auto deriv = [&](double t, const std::array<cplx, 2>& v) {
        const double x = 0.5 * p.delta + 0.5 * p.Omega * std::cos(p.omega * t);
        const double z = 0.5 * p.omega0;
        return std::array<cplx, 2>{-i * (z * v[0] + x * v[1]), -i * (x * v[0] - z * v[1])};
    };
    auto axpy = [](const std::array<cplx, 2>& a, double h, const std::array<cplx, 2>& b) {
        return std::array<cplx, 2>{a[0] + h * b[0], a[1] + h * b[1]};
    };
    std::vector<std::array<cplx, 2>> out{psi};
    for (std::size_t n = 0; n < steps; ++n) {
        const double t = static_cast<double>(n) * dt;
        const auto k1 = deriv(t, psi);
        const auto k2 = deriv(t + 0.5 * dt, axpy(psi, 0.5 * dt, k1));
        const auto k3 = deriv(t + 0.5 * dt, axpy(psi, 0.5 * dt, k2));
        const auto k4 = deriv(t + dt, axpy(psi, dt, k3));
        for (int j = 0; j < 2; ++j) psi[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        if ((n + 1) % every == 0) out.push_back(psi);
    }
    return out;
}

Complex2x2 direct_conjugation(double t, const DriveParams& p) {
    const Complex2x2 v = Complex2x2::from(0.5 * p.omega0, 0.5 * p.delta, 0.5 * p.delta, -0.5 * p.omega0);
    const Complex2x2 u = exp_sigma_x(0.5 * p.Omega / p.omega * std::sin(p.omega * t));
    return u.adjoint() * v * u;
}

Complex2x2 fourier_integral(int n, const DriveParams& p, int nodes) {
    const double period = 2.0 * kPi / p.omega;
    Complex2x2 acc = Complex2x2::zero();
    for (int j = 0; j < nodes; ++j) {
        const double t = period * j / nodes;
        acc += direct_conjugation(t, p) * std::polar(1.0 / nodes, n * p.omega * t);
    }
    return acc;
}

BlochVector larmor(const BlochVector& m0, double omega0, double t) {
    const double c = std::cos(omega0 * t), s = std::sin(omega0 * t);
    return {c * m0.x - s * m0.y, s * m0.x + c * m0.y, m0.z};
}

DensityMatrix heom_k0_l1_expm(const Complex2x2& h, cplx c, double nu, double residual, const DensityMatrix& rho0,
                              double t) {
    using M2 = Eigen::Matrix2cd;
    using M4 = Eigen::Matrix4cd;
    const auto to_eigen = [](const Complex2x2& m) {
        M2 e;
        e << m(0, 0), m(0, 1), m(1, 0), m(1, 1);
        return e;
    };
    const M2 H = to_eigen(h);
    M2 X;
    X << 0, 1, 1, 0;
    const M2 I = M2::Identity();
    // Row-major vec: vec(A ρ B) = (A ⊗ Bᵀ) vec(ρ).
    const auto kron = [](const M2& a, const M2& b) {
        M4 k;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) k.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        return k;
    };
    const cplx iu{0.0, 1.0};
    const M4 comm_h = kron(H, I) - kron(I, H.transpose());
    const M4 comm_x = kron(X, I) - kron(I, X.transpose());
    const M4 left_x = kron(X, I);
    const M4 right_x = kron(I, X.transpose());

    Eigen::Matrix<cplx, 8, 8> gen = Eigen::Matrix<cplx, 8, 8>::Zero();
    gen.block<4, 4>(0, 0) = -iu * comm_h - residual * comm_x * comm_x;
    gen.block<4, 4>(0, 4) = -iu * comm_x;
    gen.block<4, 4>(4, 0) = -iu * (c * left_x - std::conj(c) * right_x);
    gen.block<4, 4>(4, 4) = -iu * comm_h - nu * M4::Identity() - residual * comm_x * comm_x;

    Eigen::Matrix<cplx, 8, 1> y = Eigen::Matrix<cplx, 8, 1>::Zero();
    for (int i = 0; i < 4; ++i) y(i) = rho0.matrix().a[static_cast<std::size_t>(i)];
    const Eigen::Matrix<cplx, 8, 8> prop = (gen * t).exp();
    const Eigen::Matrix<cplx, 8, 1> out = prop * y;
    return DensityMatrix(Complex2x2::from(out(0), out(1), out(2), out(3)));
}

cplx drude_coefficient(double lambda, double gamma, double temperature) {
    return {lambda * gamma / std::tan(gamma / (2.0 * temperature)), -lambda * gamma};
}

double matsubara_coefficient(int k, double lambda, double gamma, double temperature) {
    const double nu = 2.0 * kPi * k * temperature;
    return 4.0 * lambda * gamma * temperature * nu / (nu * nu - gamma * gamma);
}

std::vector<std::vector<int>> enumerate_indices(int modes, int depth) {
    std::vector<std::vector<int>> out;
    std::vector<int> n(static_cast<std::size_t>(modes), 0);
    for (;;) {
        int sum = 0;
        for (int v : n) sum += v;
        if (sum <= depth) out.push_back(n);
        int k = 0;
        while (k < modes) {
            if (++n[static_cast<std::size_t>(k)] <= depth) break;
            n[static_cast<std::size_t>(k)] = 0;
            ++k;
        }
        if (k == modes) break;
    }
    return out;
}

ScanArgmax scan_q_argmax(const BlochVector& m, int n_theta, int n_phi) {
    ScanArgmax best{0.0, 0.0};
    double best_q = -1.0;
    for (int i = 0; i < n_theta; ++i) {
        const double th = kPi * i / (n_theta - 1);
        for (int j = 0; j < n_phi; ++j) {
            const double ph = 2.0 * kPi * j / n_phi;
            const double q = (1.0 + m.x * std::sin(th) * std::cos(ph) + m.y * std::sin(th) * std::sin(ph) +
                              m.z * std::cos(th)) / (4.0 * kPi);
            if (q > best_q) {
                best_q = q;
                best = {th, ph};
            }
        }
    }
    return best;
}

DensityMatrix random_state(std::mt19937_64& rng, bool pure) {
    std::normal_distribution<double> g;
    std::uniform_real_distribution<double> u;
    double x = g(rng), y = g(rng), z = g(rng);
    const double norm = std::sqrt(x * x + y * y + z * z);
    const double r = pure ? 1.0 : std::cbrt(u(rng));
    x *= r / norm;
    y *= r / norm;
    z *= r / norm;
    const cplx c{0.5 * x, -0.5 * y};
    return DensityMatrix(Complex2x2::from(0.5 * (1.0 + z), c, std::conj(c), 0.5 * (1.0 - z)));
}

Complex2x2 random_hermitian(std::mt19937_64& rng, double scale) {
    std::normal_distribution<double> g(0.0, scale);
    const cplx off{g(rng), g(rng)};
    return Complex2x2::from(g(rng), off, std::conj(off), g(rng));
}

}  // namespace oracle
