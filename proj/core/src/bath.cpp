#include "syncheom/bath.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace syncheom {

void BathParams::validate() const {
    if (!std::isfinite(lambda) || !std::isfinite(gamma) || !std::isfinite(temperature)) {
        throw std::invalid_argument("BathParams: non-finite field");
    }
    if (lambda < 0.0) throw std::invalid_argument("BathParams: lambda must be non-negative");
    if (!(gamma > 0.0)) throw std::invalid_argument("BathParams: gamma must be positive");
    if (!(temperature > 0.0)) throw std::invalid_argument("BathParams: temperature must be positive");
}

double spectral_density(double w, const BathParams& b) {
    return 2.0 * b.lambda * b.gamma * w / (w * w + b.gamma * b.gamma);
}

namespace {

// J(ω) coth(ω/2T), with its finite ω -> 0 limit 4λT/γ.
double thermal_density(double w, const BathParams& b) {
    if (w < 1e-8) return 4.0 * b.lambda * b.temperature / b.gamma;
    return spectral_density(w, b) / std::tanh(w / (2.0 * b.temperature));
}

}  // namespace

cplx correlation_quadrature(double t, const BathParams& b) {
    b.validate();
    if (!(t > 0.0)) throw std::invalid_argument("correlation_quadrature: t must be positive");
    if (b.lambda == 0.0) return {0.0, 0.0};

    constexpr double kTol = 1e-11;
    thread_local boost::math::quadrature::ooura_fourier_cos<double> cos_integrator(kTol);
    thread_local boost::math::quadrature::ooura_fourier_sin<double> sin_integrator(kTol);

    const auto [re, re_err] = cos_integrator.integrate([&b](double w) { return thermal_density(w, b); }, t);
    const auto [im, im_err] = sin_integrator.integrate([&b](double w) { return spectral_density(w, b); }, t);

    const double scale = std::max(std::abs(re) + std::abs(im), b.lambda * b.gamma * 1e-12);
    if (!std::isfinite(re) || !std::isfinite(im) || re_err + im_err > 1e-8 * scale) {
        std::ostringstream os;
        os << "correlation_quadrature: no convergence at t = " << t << " (error estimate " << re_err + im_err << ")";
        throw std::runtime_error(os.str());
    }
    return {re / kPi, -im / kPi};
}

double dephasing_exponent_quadrature(double t, const BathParams& b) {
    b.validate();
    if (t <= 0.0 || b.lambda == 0.0) return 0.0;

    // J coth (1 - cos ωt)/ω², written with 2 sin²(ωt/2) to avoid cancellation.
    const auto integrand = [&b, t](double w) {
        const double s = std::sin(0.5 * w * t);
        const double jw = 2.0 * b.lambda * b.gamma / (w * w + b.gamma * b.gamma);  // J(ω)/ω
        return jw / std::tanh(w / (2.0 * b.temperature)) / w * 2.0 * s * s;
    };

    using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;
    const double cutoff = 4000.0 + 200.0 * b.gamma;
    const double width = std::min(kTwoPi / t, 0.5);
    double sum = 0.0;
    for (double a = 0.0; a < cutoff; a += width) {
        sum += Quad::integrate(integrand, a, std::min(a + width, cutoff), 8, 1e-13);
    }
    // Beyond the cutoff coth -> 1, J/ω² -> 2λγ/ω³ and the cosine averages out.
    sum += b.lambda * b.gamma / (cutoff * cutoff);
    return 4.0 / kPi * sum;
}

cplx ExponentialExpansion::evaluate(double t) const {
    cplx sum{0.0, 0.0};
    for (const auto& term : terms) sum += term.coefficient * std::exp(-term.rate * t);
    return sum;
}

ExponentialExpansion matsubara_expansion(const BathParams& b, int K) {
    b.validate();
    if (K < 0) throw std::invalid_argument("matsubara_expansion: K must be non-negative");

    const double lg = b.lambda * b.gamma;
    const double half_beta_gamma = b.gamma / (2.0 * b.temperature);
    if (std::abs(std::sin(half_beta_gamma)) < 1e-12) {
        std::ostringstream os;
        os << "matsubara_expansion: gamma/(2T) = " << half_beta_gamma << " sits on a pole of cot";
        throw std::invalid_argument(os.str());
    }

    ExponentialExpansion exp;
    exp.terms.reserve(static_cast<std::size_t>(K) + 1);
    exp.terms.push_back({cplx{lg / std::tan(half_beta_gamma), -lg}, b.gamma});
    for (int k = 1; k <= K; ++k) {
        const double nu = kTwoPi * k * b.temperature;
        if (std::abs(nu - b.gamma) < 1e-12 * std::max(nu, b.gamma)) {
            std::ostringstream os;
            os << "matsubara_expansion: gamma coincides with Matsubara frequency nu_" << k << " = " << nu;
            throw std::invalid_argument(os.str());
        }
        exp.terms.push_back({cplx{4.0 * lg * b.temperature * nu / (nu * nu - b.gamma * b.gamma), 0.0}, nu});
    }

    double residual = 2.0 * b.lambda * b.temperature / b.gamma;
    for (const auto& term : exp.terms) residual -= term.coefficient.real() / term.rate;
    exp.residual = residual;
    return exp;
}

double matsubara_tail(const BathParams& b, int K, double t) {
    if (t <= 0.0) return b.lambda == 0.0 ? 0.0 : INFINITY;
    const double lg = b.lambda * b.gamma;
    double sum = 0.0;
    for (int k = K + 1; k < K + 1000000; ++k) {
        const double nu = kTwoPi * k * b.temperature;
        const double term = std::abs(4.0 * lg * b.temperature * nu / (nu * nu - b.gamma * b.gamma)) * std::exp(-nu * t);
        sum += term;
        if (term < 1e-17 * sum || term == 0.0) break;
    }
    return sum;
}

}  // namespace syncheom
