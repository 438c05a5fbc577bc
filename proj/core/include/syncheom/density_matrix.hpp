#pragma once

#include "syncheom/complex2x2.hpp"

namespace syncheom {

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const;
};

// Basis order is (|e>, |g>): the σz = +1 eigenstate is the excited state.
//   ρ = [[p, c], [conj(c), 1 - p]]
class DensityMatrix {
public:
    DensityMatrix() : m_(Complex2x2::from(0.5, 0.0, 0.0, 0.5)) {}
    explicit DensityMatrix(const Complex2x2& m) : m_(m) {}

    static DensityMatrix from_bloch(const BlochVector& b);
    static DensityMatrix from_elements(double p, cplx c);
    // |ψ><ψ| for a (not necessarily normalized) state vector.
    static DensityMatrix pure(cplx e_amplitude, cplx g_amplitude);
    static DensityMatrix maximally_mixed() { return DensityMatrix{}; }

    const Complex2x2& matrix() const { return m_; }
    double p() const { return m_(0, 0).real(); }
    cplx c() const { return m_(0, 1); }

    double trace_deviation() const;
    double hermiticity_deviation() const;
    // Smallest eigenvalue of the Hermitian part.
    double min_eigenvalue() const;

    // Throws std::invalid_argument unless trace 1, Hermitian and PSD within tol.
    void validate(double tol = 1e-10) const;

private:
    Complex2x2 m_;
};

// Trace distance ½‖ρ - σ‖₁ (Hermitian parts).
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace syncheom
