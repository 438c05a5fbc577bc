#include "syncheom/driven_tls.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "syncheom/bessel.hpp"

namespace syncheom {

void DriveParams::validate(bool require_drive_frequency) const {
    if (!std::isfinite(omega0) || !std::isfinite(delta) || !std::isfinite(Omega) || !std::isfinite(omega)) {
        throw std::invalid_argument("DriveParams: non-finite field");
    }
    if (omega0 < 0.0) throw std::invalid_argument("DriveParams: omega0 must be non-negative");
    if (require_drive_frequency && !(omega > 0.0)) throw std::invalid_argument("DriveParams: omega must be positive");
}

Complex2x2 static_part(const DriveParams& p) { return 0.5 * p.omega0 * pauli::z + 0.5 * p.delta * pauli::x; }

Complex2x2 hamiltonian(double t, const DriveParams& p) {
    return static_part(p) + (0.5 * p.Omega * std::cos(p.omega * t)) * pauli::x;
}

Complex2x2 rotating_frame_unitary(double t, const DriveParams& p) {
    const double angle = p.Omega / (2.0 * p.omega) * std::sin(p.omega * t);
    return expm_su2(pauli::x, angle);
}

FourierComponent fourier_component(int n, const DriveParams& p) {
    const double ratio = p.Omega / p.omega;
    const double jn = bessel_j(n, ratio);
    FourierComponent fc{n, Complex2x2::zero()};
    if (n % 2 == 0) {
        fc.op = (0.5 * p.omega0 * jn) * pauli::z;
        if (n == 0) fc.op += (0.5 * p.delta) * pauli::x;
    } else {
        fc.op = cplx{0.0, 0.5 * p.omega0 * jn} * pauli::y;
    }
    return fc;
}

Complex2x2 rotating_hamiltonian(double t, const DriveParams& p, int n_max) {
    if (n_max < 0) throw std::invalid_argument("rotating_hamiltonian: n_max must be non-negative");
    Complex2x2 h = fourier_component(0, p).op;
    for (int n = 1; n <= n_max; ++n) {
        const cplx phase = std::polar(1.0, -n * p.omega * t);
        h += fourier_component(n, p).op * phase;
        h += fourier_component(-n, p).op * std::conj(phase);
    }
    return h;
}

Complex2x2 rotating_hamiltonian_exact(double t, const DriveParams& p) {
    const Complex2x2 u = rotating_frame_unitary(t, p);
    return u.adjoint() * static_part(p) * u;
}

Complex2x2 static_hamiltonian(const DriveParams& p) {
    return (0.5 * p.omega0 * bessel_j(0, p.Omega / p.omega)) * pauli::z + (0.5 * p.delta) * pauli::x;
}

bool static_approximation_valid(const DriveParams& p, double ratio) {
    const double scale = std::hypot(p.omega0, p.delta);
    return std::min(p.omega, p.Omega) >= ratio * scale;
}

double rrc_frequency(int k, double Omega) {
    if (!(Omega > 0.0)) throw std::invalid_argument("rrc_frequency: Omega must be positive");
    return Omega / bessel_j0_zero(k);
}

namespace {

OdeTolerance drive_resolved(const DriveParams& p, OdeTolerance tol) {
    if (p.Omega != 0.0 && p.omega > 0.0) {
        tol.max_step = std::min(tol.max_step, p.period() / 50.0);
        tol.min_step = std::min(tol.min_step, 0.5 * tol.max_step);
    }
    return tol;
}

}  // namespace

Complex2x2 propagator(const DriveParams& p, double t0, double t1, const OdeTolerance& tol) {
    const RhsFunction rhs = [&p](double t, std::span<const cplx> y, std::span<cplx> dy) {
        const Complex2x2 h = hamiltonian(t, p);
        store(cplx{0.0, -1.0} * (h * load(y)), dy);
    };
    StateVector u0(4);
    store(Complex2x2::identity(), u0);
    return load(integrate_to(rhs, std::move(u0), t0, t1, drive_resolved(p, tol)));
}

double fold_quasienergy(double x, double omega) {
    double r = std::fmod(x + 0.5 * omega, omega);
    if (r < 0.0) r += omega;
    r -= 0.5 * omega;
    return r >= 0.5 * omega ? r - omega : r;
}

Quasienergies floquet_quasienergies(const DriveParams& p, const OdeTolerance& tol, double t0) {
    p.validate();
    const double period = p.period();
    const Complex2x2 monodromy = propagator(p, t0, t0 + period, tol);
    const auto lambdas = eigenvalues(monodromy);
    Quasienergies q;
    for (std::size_t i = 0; i < 2; ++i) {
        // λ = exp(-i ε T) on the principal branch.
        q.values[i] = fold_quasienergy(-std::arg(lambdas[i]) / period, p.omega);
    }
    std::sort(q.values.begin(), q.values.end());
    const double d = q.values[1] - q.values[0];
    q.splitting = std::min(d, p.omega - d);
    return q;
}

}  // namespace syncheom
