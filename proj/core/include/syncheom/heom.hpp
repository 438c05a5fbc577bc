#pragma once

#include <span>
#include <vector>

#include "syncheom/bath.hpp"
#include "syncheom/density_matrix.hpp"
#include "syncheom/driven_tls.hpp"
#include "syncheom/hierarchy.hpp"
#include "syncheom/ode.hpp"

namespace syncheom {

struct SolverConfig {
    int K = 4;  // Matsubara terms beyond the Drude pole
    int L = 6;  // hierarchy depth
    OdeTolerance tolerances{1e-12, 1e-10, 0.05, 1e-12};
    bool use_scaling = true;
    bool use_terminator = true;
    std::size_t max_ados = Hierarchy::kDefaultBudget;

    void validate() const;
};

// Physical-ADO diagnostics at one output time.
struct PropagationSample {
    double t = 0.0;
    DensityMatrix rho;
    double trace_deviation = 0.0;
    double hermiticity_deviation = 0.0;
    double min_eigenvalue = 0.0;
};

struct Hygiene {
    double max_trace_deviation = 0.0;
    double max_hermiticity_deviation = 0.0;
    double min_eigenvalue = 1.0;

    void absorb(const PropagationSample& s);
    void absorb(const Hygiene& h);
    // trace and Hermiticity deviations < 1e-8, min eigenvalue > -1e-6
    bool acceptable() const;
};

struct PropagationResult {
    std::vector<PropagationSample> samples;
    Hygiene hygiene;
    IntegrationStats stats;
};

/// HEOM for σx coupling to a Drude–Lorentz bath, in the lab frame with the
/// full cos(ωt) drive. For each ADO ρ_n:
///
///   dρ_n/dt = -i[H(t), ρ_n] - (Σ_k n_k ν_k) ρ_n - i Σ_k [σx, ρ_{n+e_k}]
///             - i Σ_k n_k (c_k σx ρ_{n-e_k} - c_k* ρ_{n-e_k} σx)
///             [- Δ_K [σx, [σx, ρ_n]]]       (terminator)
///
/// With scaling on, ρ_n is stored as ρ_n / Π_k sqrt(n_k! |c_k|^{n_k}).
///
/// An instance owns its tables and scratch; use one instance per thread.
class HeomSolver {
public:
    HeomSolver(const DriveParams& drive, ExponentialExpansion expansion, const SolverConfig& cfg);
    HeomSolver(const DriveParams& drive, const BathParams& bath, const SolverConfig& cfg);

    const Hierarchy& hierarchy() const { return hierarchy_; }
    const ExponentialExpansion& expansion() const { return expansion_; }
    const SolverConfig& config() const { return cfg_; }
    std::size_t state_size() const { return 4 * hierarchy_.size(); }

    // Derivative of the full hierarchy state (flattened ADOs, row-major 2x2 each).
    // Throws std::invalid_argument on size mismatch.
    void rhs(double t, std::span<const cplx> state, std::span<cplx> derivative) const;

    // Hierarchy state with ρ0 in the physical slot and all other ADOs zero.
    StateVector initial_state(const DensityMatrix& rho0) const;

    // Physical density matrix from a hierarchy state.
    static DensityMatrix physical(std::span<const cplx> state) { return DensityMatrix(load(state.first(4))); }

    // Step ceiling actually used: tolerances.max_step, capped at one fiftieth
    // of the drive period whenever Ω != 0.
    OdeTolerance effective_tolerances() const;

    PropagationResult propagate(const DensityMatrix& rho0, std::span<const double> output_times) const;

private:
    DriveParams drive_;
    ExponentialExpansion expansion_;
    SolverConfig cfg_;
    Hierarchy hierarchy_;
    std::vector<double> damping_;      // Σ n_k ν_k per ADO
    std::vector<double> up_factor_;    // per (ADO, mode)
    std::vector<double> down_factor_;  // per (ADO, mode)
};

// Validates inputs, builds a solver and propagates. Output times must be increasing and start >= 0.
PropagationResult propagate(const DensityMatrix& rho0, const DriveParams& drive, const BathParams& bath,
                            const SolverConfig& cfg, std::span<const double> output_times);

struct ConvergenceReport {
    double depth_deviation = 0.0;      // (K, L) vs (K, L+1)
    double matsubara_deviation = 0.0;  // (K, L) vs (K+1, L)
    double threshold = 1e-3;
    bool converged = true;

    double max_deviation() const { return depth_deviation > matsubara_deviation ? depth_deviation : matsubara_deviation; }
};

// Max Euclidean distance between two Bloch trajectories sampled at the same times.
double max_bloch_deviation(const PropagationResult& a, const PropagationResult& b);

// Uniform sample grid of `samples` points over [0, t_end].
std::vector<double> uniform_times(double t_end, std::size_t samples);

/// Re-runs the propagation over [0, probe_time] at (K, L), (K, L+1) and
/// (K+1, L) and reports the max Bloch-vector deviations.
ConvergenceReport convergence_check(const DriveParams& drive, const BathParams& bath, const SolverConfig& cfg,
                                    const DensityMatrix& probe_state, double probe_time,
                                    std::size_t probe_samples = 201, double threshold = 1e-3);

struct TruncationChoice {
    SolverConfig config;
    ConvergenceReport report;
};

/// Self-auditing truncation: starting from cfg, raises L until (K, L) vs
/// (K, L+1) agrees within threshold or L reaches max_depth, then raises K the
/// same way up to max_matsubara. The returned report describes the final (K, L)
/// and has the same meaning as convergence_check's.
TruncationChoice select_truncation(const DriveParams& drive, const BathParams& bath, const SolverConfig& cfg,
                                   const DensityMatrix& probe_state, double probe_time, std::size_t probe_samples,
                                   double threshold, int max_depth, int max_matsubara);

// deviation(L) = max |m_L - m_{L+1}| over the probe grid, for each L in depths.
std::vector<double> depth_ladder(const DriveParams& drive, const BathParams& bath, const SolverConfig& cfg,
                                 const DensityMatrix& probe_state, double probe_time, std::span<const int> depths,
                                 std::size_t probe_samples = 201);

}  // namespace syncheom
