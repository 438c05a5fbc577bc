#pragma once

#include <array>
#include <complex>
#include <span>

namespace syncheom {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Row-major 2x2 complex matrix: (a00, a01, a10, a11).
struct Complex2x2 {
    std::array<cplx, 4> a{};

    constexpr cplx& operator()(int r, int c) { return a[static_cast<std::size_t>(2 * r + c)]; }
    constexpr const cplx& operator()(int r, int c) const { return a[static_cast<std::size_t>(2 * r + c)]; }

    static constexpr Complex2x2 zero() { return {}; }
    static constexpr Complex2x2 identity() { return {{cplx{1.0}, cplx{}, cplx{}, cplx{1.0}}}; }
    static constexpr Complex2x2 from(cplx a00, cplx a01, cplx a10, cplx a11) { return {{a00, a01, a10, a11}}; }

    [[nodiscard]] Complex2x2 adjoint() const {
        return from(std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3]));
    }
    [[nodiscard]] cplx trace() const { return a[0] + a[3]; }
    [[nodiscard]] cplx determinant() const { return a[0] * a[3] - a[1] * a[2]; }

    // Largest entry modulus.
    [[nodiscard]] double max_abs() const;

    Complex2x2& operator+=(const Complex2x2& o) {
        for (std::size_t i = 0; i < 4; ++i) a[i] += o.a[i];
        return *this;
    }
    Complex2x2& operator-=(const Complex2x2& o) {
        for (std::size_t i = 0; i < 4; ++i) a[i] -= o.a[i];
        return *this;
    }
    Complex2x2& operator*=(cplx s) {
        for (auto& x : a) x *= s;
        return *this;
    }

    friend bool operator==(const Complex2x2&, const Complex2x2&) = default;
};

inline Complex2x2 operator+(Complex2x2 l, const Complex2x2& r) { return l += r; }
inline Complex2x2 operator-(Complex2x2 l, const Complex2x2& r) { return l -= r; }
inline Complex2x2 operator*(Complex2x2 m, cplx s) { return m *= s; }
inline Complex2x2 operator*(cplx s, Complex2x2 m) { return m *= s; }
inline Complex2x2 operator*(double s, Complex2x2 m) { return m *= cplx{s}; }
inline Complex2x2 operator*(const Complex2x2& l, const Complex2x2& r) {
    return Complex2x2::from(l.a[0] * r.a[0] + l.a[1] * r.a[2], l.a[0] * r.a[1] + l.a[1] * r.a[3],
                            l.a[2] * r.a[0] + l.a[3] * r.a[2], l.a[2] * r.a[1] + l.a[3] * r.a[3]);
}

inline Complex2x2 commutator(const Complex2x2& x, const Complex2x2& y) { return x * y - y * x; }

// Entrywise max |l - r|.
double max_abs_diff(const Complex2x2& l, const Complex2x2& r);

namespace pauli {
inline constexpr Complex2x2 identity = Complex2x2::identity();
inline constexpr Complex2x2 x = Complex2x2::from(0.0, 1.0, 1.0, 0.0);
inline constexpr Complex2x2 y = Complex2x2::from(0.0, cplx{0.0, -1.0}, cplx{0.0, 1.0}, 0.0);
inline constexpr Complex2x2 z = Complex2x2::from(1.0, 0.0, 0.0, -1.0);
}  // namespace pauli

// Real coefficients of a Hermitian matrix in the basis {1, σx, σy, σz}.
struct PauliDecomposition {
    double identity = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

PauliDecomposition pauli_decompose(const Complex2x2& h);
Complex2x2 pauli_compose(const PauliDecomposition& d);

// Max of |a01 - conj(a10)| and the imaginary parts of the diagonal.
double hermiticity_deviation(const Complex2x2& m);
bool is_hermitian(const Complex2x2& m, double tol = 1e-12);

// Entrywise max of |U†U - 1|.
double unitarity_deviation(const Complex2x2& u);
bool is_unitary(const Complex2x2& u, double tol = 1e-10);

// exp(-i s H) for Hermitian H, via the closed Pauli form
//   e^{-i s h0} (cos(s|b|) 1 - i sin(s|b|) b̂·σ).
// Throws std::invalid_argument if H deviates from Hermitian by more than 1e-9.
Complex2x2 expm_su2(const Complex2x2& h, double s);

// Eigenvalues of a Hermitian 2x2 matrix, ascending.
std::array<double, 2> hermitian_eigenvalues(const Complex2x2& h);

// Eigenvalues of a general 2x2 matrix (order unspecified).
std::array<cplx, 2> eigenvalues(const Complex2x2& m);

// Row-major embedding into a flat complex buffer of length 4.
inline void store(const Complex2x2& m, std::span<cplx> out) {
    for (std::size_t i = 0; i < 4; ++i) out[i] = m.a[i];
}
inline Complex2x2 load(std::span<const cplx> in) { return Complex2x2::from(in[0], in[1], in[2], in[3]); }

}  // namespace syncheom
