#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "syncheom/bath.hpp"

using namespace syncheom;

namespace {
const BathParams kPaper{1.0, 0.5, 0.5};

// Σ_{k>K} c_k/ν_k, summed directly with a 1/k² tail estimate.
double discarded_markov_weight(const BathParams& b, int K) {
    const int n = 200000;
    double s = 0.0;
    for (int k = n; k > K; --k) {
        const double nu = 2.0 * kPi * k * b.temperature;
        s += oracle::matsubara_coefficient(k, b.lambda, b.gamma, b.temperature) / nu;
    }
    const double a = 4.0 * b.lambda * b.gamma * b.temperature / std::pow(2.0 * kPi * b.temperature, 2);
    return s + a / n;
}
}  // namespace

TEST(SpectralDensity, Basics) {
    EXPECT_EQ(spectral_density(0.0, kPaper), 0.0);
    EXPECT_DOUBLE_EQ(spectral_density(0.5, kPaper), 2.0 * 1.0 * 0.5 * 0.5 / 0.5);
    EXPECT_DOUBLE_EQ(spectral_density(-1.3, kPaper), -spectral_density(1.3, kPaper));
    // Peak at w = γ with value λ.
    EXPECT_DOUBLE_EQ(spectral_density(kPaper.gamma, kPaper), kPaper.lambda);
}

TEST(Expansion, CoefficientsMatchClosedForms) {
    const auto e = matsubara_expansion(kPaper, 4);
    ASSERT_EQ(e.size(), 5u);
    EXPECT_LT(std::abs(e.terms[0].coefficient - oracle::drude_coefficient(1.0, 0.5, 0.5)), 1e-14);
    EXPECT_EQ(e.terms[0].rate, 0.5);
    for (int k = 1; k <= 4; ++k) {
        EXPECT_NEAR(e.terms[static_cast<std::size_t>(k)].coefficient.real(), oracle::matsubara_coefficient(k, 1.0, 0.5, 0.5), 1e-14);
        EXPECT_EQ(e.terms[static_cast<std::size_t>(k)].coefficient.imag(), 0.0);
        EXPECT_NEAR(e.terms[static_cast<std::size_t>(k)].rate, 2.0 * kPi * k * 0.5, 1e-13);
    }
}

TEST(Expansion, RatesIncreaseAfterDrudeTerm) {
    const auto e = matsubara_expansion(kPaper, 8);
    for (std::size_t k = 1; k + 1 < e.size(); ++k) EXPECT_LT(e.terms[k].rate, e.terms[k + 1].rate);
}

TEST(Expansion, ResidualIsDiscardedMarkovWeight) {
    for (const BathParams b : {kPaper, BathParams{0.25, 2.0, 0.5}, BathParams{2.0, 0.25, 1.0}}) {
        for (int K : {0, 2, 4, 8}) {
            EXPECT_NEAR(matsubara_expansion(b, K).residual, discarded_markov_weight(b, K), 1e-9) << K;
        }
    }
}

TEST(Expansion, ResidualNonNegativeAndDecreasing) {
    double prev = std::numeric_limits<double>::infinity();
    for (int K = 0; K <= 12; ++K) {
        const double r = matsubara_expansion(kPaper, K).residual;
        EXPECT_GE(r, 0.0);
        EXPECT_LT(r, prev);
        prev = r;
    }
}

TEST(Expansion, MatchesQuadratureUpToTail) {
    for (const BathParams b : {kPaper, BathParams{0.25, 0.5, 0.5}, BathParams{1.5, 2.0, 0.5}}) {
        const auto e = matsubara_expansion(b, 4);
        for (double t : {0.05, 0.2, 0.5, 1.0, 3.0, 10.0}) {
            const cplx quad = correlation_quadrature(t, b);
            const cplx expected = e.evaluate(t) + matsubara_tail(b, 4, t);
            EXPECT_LT(std::abs(quad - expected), 1e-7 * std::max(1.0, std::abs(quad))) << t;
        }
    }
}

TEST(Expansion, PerturbedDrudeCoefficientIsDetected) {
    auto e = matsubara_expansion(kPaper, 4);
    e.terms[0].coefficient *= 1.1;
    const double t = 0.5;
    const cplx quad = correlation_quadrature(t, kPaper);
    EXPECT_GT(std::abs(quad - e.evaluate(t) - matsubara_tail(kPaper, 4, t)), 1e-3);
}

TEST(Expansion, RejectsPoles) {
    // γ = ν_1 = 2πT
    EXPECT_THROW(matsubara_expansion(BathParams{1.0, 2.0 * kPi * 0.5, 0.5}, 2), std::invalid_argument);
    EXPECT_THROW(matsubara_expansion(kPaper, -1), std::invalid_argument);
}

TEST(Correlation, RequiresPositiveTime) {
    EXPECT_THROW(correlation_quadrature(0.0, kPaper), std::invalid_argument);
}

TEST(Correlation, ImaginaryPartIsDrudeOnly) {
    // -(1/π)∫ J sin(ωt) dω = -λγ e^{-γt}
    for (double t : {0.1, 1.0, 4.0}) {
        EXPECT_NEAR(correlation_quadrature(t, kPaper).imag(), -1.0 * 0.5 * std::exp(-0.5 * t), 1e-9);
    }
}

TEST(Dephasing, MatchesDoubleIntegralOfCorrelation) {
    // Γ(t) = 4 Σ_k Re c_k [t/ν_k - (1 - e^{-ν_k t})/ν_k²] over the full Matsubara series.
    const BathParams b{0.25, 0.5, 0.5};
    for (double t : {0.1, 0.5, 1.0, 3.0, 6.0}) {
        const auto term = [&](double c, double nu) { return 4.0 * c * (t / nu - (1.0 - std::exp(-nu * t)) / (nu * nu)); };
        double g = term(oracle::drude_coefficient(b.lambda, b.gamma, b.temperature).real(), b.gamma);
        for (int k = 1; k <= 200000; ++k) {
            g += term(oracle::matsubara_coefficient(k, b.lambda, b.gamma, b.temperature), 2.0 * kPi * k * b.temperature);
        }
        EXPECT_NEAR(dephasing_exponent_quadrature(t, b), g, 1e-6 * std::max(1.0, g)) << t;
    }
}

TEST(Tail, DecaysAndDivergesAtZero) {
    EXPECT_TRUE(std::isinf(matsubara_tail(kPaper, 4, 0.0)));
    EXPECT_GT(matsubara_tail(kPaper, 4, 0.1), matsubara_tail(kPaper, 4, 1.0));
    EXPECT_GT(matsubara_tail(kPaper, 2, 0.5), matsubara_tail(kPaper, 6, 0.5));
}

TEST(BathParams, Validation) {
    EXPECT_NO_THROW((BathParams{0.0, 0.5, 0.5}.validate()));
    EXPECT_THROW((BathParams{-1.0, 0.5, 0.5}.validate()), std::invalid_argument);
    EXPECT_THROW((BathParams{1.0, 0.0, 0.5}.validate()), std::invalid_argument);
    EXPECT_THROW((BathParams{1.0, 0.5, 0.0}.validate()), std::invalid_argument);
}
