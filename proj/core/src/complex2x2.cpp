#include "syncheom/complex2x2.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace syncheom {

double Complex2x2::max_abs() const {
    double m = 0.0;
    for (const auto& x : a) m = std::max(m, std::abs(x));
    return m;
}

double max_abs_diff(const Complex2x2& l, const Complex2x2& r) { return (l - r).max_abs(); }

PauliDecomposition pauli_decompose(const Complex2x2& h) {
    // tr(σ_i H)/2 for each basis element; imaginary parts are dropped.
    PauliDecomposition d;
    d.identity = 0.5 * (h.a[0] + h.a[3]).real();
    d.z = 0.5 * (h.a[0] - h.a[3]).real();
    d.x = 0.5 * (h.a[1] + h.a[2]).real();
    d.y = 0.5 * (h.a[2] - h.a[1]).imag();
    return d;
}

Complex2x2 pauli_compose(const PauliDecomposition& d) {
    return Complex2x2::from(cplx{d.identity + d.z, 0.0}, cplx{d.x, -d.y}, cplx{d.x, d.y},
                            cplx{d.identity - d.z, 0.0});
}

double hermiticity_deviation(const Complex2x2& m) {
    return std::max({std::abs(m.a[1] - std::conj(m.a[2])), std::abs(m.a[0].imag()), std::abs(m.a[3].imag())});
}

bool is_hermitian(const Complex2x2& m, double tol) { return hermiticity_deviation(m) <= tol; }

double unitarity_deviation(const Complex2x2& u) { return max_abs_diff(u.adjoint() * u, Complex2x2::identity()); }

bool is_unitary(const Complex2x2& u, double tol) { return unitarity_deviation(u) <= tol; }

Complex2x2 expm_su2(const Complex2x2& h, double s) {
    const double dev = hermiticity_deviation(h);
    if (!(dev <= 1e-9)) {
        throw std::invalid_argument("expm_su2: operator is not Hermitian (deviation " + std::to_string(dev) + ")");
    }
    const PauliDecomposition d = pauli_decompose(h);
    const double norm = std::sqrt(d.x * d.x + d.y * d.y + d.z * d.z);
    const double angle = s * norm;
    const double c = std::cos(angle);
    // sin(s|b|)/|b| stays finite as |b| -> 0.
    const double sinc = norm > 0.0 ? std::sin(angle) / norm : s;
    const cplx mi{0.0, -sinc};
    Complex2x2 u = Complex2x2::from(cplx{c} + mi * d.z, mi * cplx{d.x, -d.y}, mi * cplx{d.x, d.y}, cplx{c} - mi * d.z);
    u *= std::polar(1.0, -s * d.identity);
    return u;
}

std::array<double, 2> hermitian_eigenvalues(const Complex2x2& h) {
    const PauliDecomposition d = pauli_decompose(h);
    const double r = std::sqrt(d.x * d.x + d.y * d.y + d.z * d.z);
    return {d.identity - r, d.identity + r};
}

std::array<cplx, 2> eigenvalues(const Complex2x2& m) {
    const cplx half_tr = 0.5 * m.trace();
    const cplx disc = std::sqrt(half_tr * half_tr - m.determinant());
    return {half_tr - disc, half_tr + disc};
}

}  // namespace syncheom
