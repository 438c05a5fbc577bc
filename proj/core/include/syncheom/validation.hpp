#pragma once

#include <string>
#include <vector>

#include "syncheom/run_config.hpp"

namespace syncheom {

enum class OracleStatus { pass, fail, not_applicable };

std::string to_string(OracleStatus s);

struct OracleResult {
    std::string name;
    OracleStatus status = OracleStatus::fail;
    double error = 0.0;      // measured worst-case error
    double threshold = 0.0;  // pass iff error < threshold
    std::string detail;
};

struct ValidationReport {
    std::vector<OracleResult> oracles;

    bool passed() const;  // no oracle failed
    std::string to_json() const;
};

struct ValidationOptions {
    // Multiplies c_0 of the expansion before it is compared with quadrature.
    double c0_scale = 1.0;
};

// Exact dephasing: ω0 = 0, Ω = 0, so H = (Δ/2)σx commutes with the coupling and
// |coherence| = exp(-Γ(t)). Relative error over the span where Γ <= 3.
OracleResult dephasing_oracle(const RunConfig& cfg);

// λ = 0 HEOM against chained Schrödinger propagators at the configured drive.
OracleResult decoupled_oracle(const RunConfig& cfg);

// H_n against (1/T) ∫ U_r† V U_r e^{inωt} dt by periodic trapezoid quadrature,
// at the configured drive plus two fixed drive points.
OracleResult fourier_oracle(const RunConfig& cfg);

// C_quad(t) - C_exp(t) must equal the discarded Matsubara tail.
OracleResult expansion_oracle(const RunConfig& cfg, double c0_scale = 1.0);

// Splitting at Ω/z_1 at most a tenth of the splitting at ±10 detuning (Δ = 0).
OracleResult floquet_oracle(const RunConfig& cfg);

ValidationReport run_validation(const RunConfig& cfg, const ValidationOptions& opts = {});

}  // namespace syncheom
