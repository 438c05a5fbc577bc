#include "syncheom/density_matrix.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace syncheom {

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

DensityMatrix DensityMatrix::from_bloch(const BlochVector& b) {
    return DensityMatrix(0.5 * (pauli::identity + b.x * pauli::x + b.y * pauli::y + b.z * pauli::z));
}

DensityMatrix DensityMatrix::from_elements(double p, cplx c) {
    return DensityMatrix(Complex2x2::from(p, c, std::conj(c), 1.0 - p));
}

DensityMatrix DensityMatrix::pure(cplx e_amplitude, cplx g_amplitude) {
    const double n2 = std::norm(e_amplitude) + std::norm(g_amplitude);
    const cplx a = e_amplitude / std::sqrt(n2);
    const cplx b = g_amplitude / std::sqrt(n2);
    return DensityMatrix(Complex2x2::from(a * std::conj(a), a * std::conj(b), b * std::conj(a), b * std::conj(b)));
}

double DensityMatrix::trace_deviation() const { return std::abs(m_.trace() - 1.0); }

double DensityMatrix::hermiticity_deviation() const { return syncheom::hermiticity_deviation(m_); }

double DensityMatrix::min_eigenvalue() const {
    const Complex2x2 herm = 0.5 * (m_ + m_.adjoint());
    return hermitian_eigenvalues(herm)[0];
}

void DensityMatrix::validate(double tol) const {
    std::ostringstream os;
    if (trace_deviation() > tol) os << "trace deviates from 1 by " << trace_deviation() << "; ";
    if (hermiticity_deviation() > tol) os << "not Hermitian (" << hermiticity_deviation() << "); ";
    if (min_eigenvalue() < -tol) os << "negative eigenvalue " << min_eigenvalue() << "; ";
    const std::string msg = os.str();
    if (!msg.empty()) throw std::invalid_argument("invalid density matrix: " + msg);
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    const Complex2x2 d = a.matrix() - b.matrix();
    const auto ev = hermitian_eigenvalues(0.5 * (d + d.adjoint()));
    return 0.5 * (std::abs(ev[0]) + std::abs(ev[1]));
}

}  // namespace syncheom
