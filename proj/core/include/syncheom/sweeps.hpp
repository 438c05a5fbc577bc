#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "syncheom/csv.hpp"
#include "syncheom/heom.hpp"
#include "syncheom/run_config.hpp"

namespace syncheom {

// A propagation that could not be completed or trusted (CLI exit code 3).
class SolverFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CellInputs {
    DriveParams drive;
    BathParams bath;
    SolverConfig solver;
    DensityMatrix rho0;
    double t_max = 30.0;
    std::size_t samples = 601;
    double window_width = 0.0;
    std::size_t window_samples = 65;
    std::vector<double> extra_times;  // e.g. snapshot times, merged into the output grid
};

CellInputs cell_inputs(const RunConfig& cfg, const DriveParams& drive, const BathParams& bath);

struct CellOutcome {
    PropagationResult series;  // samples on the uniform [0, t_max] grid
    PropagationResult window;  // samples spanning [t_max - w/2, t_max + w/2]
    PropagationResult extra;   // samples at extra_times, in the given order
    double windowed_sync = 0.0;
    Hygiene hygiene;
    IntegrationStats stats;
};

// One propagation over [0, t_max + w/2]; the averaging window is centred on t_max.
CellOutcome simulate_cell(const CellInputs& in);

std::optional<ConvergenceReport> cell_convergence(const RunConfig& cfg, const CellInputs& in);

// Runs job(i) for i in [0, n) on `workers` threads. Exceptions escape from the
// first failing job after all workers stop.
void run_parallel(std::size_t n, int workers, const std::function<void(std::size_t)>& job);

struct SingleRun {
    DriveParams drive;
    SolverConfig solver;  // truncation actually used
    CellOutcome outcome;
    std::optional<ConvergenceReport> convergence;
};

// Fail-fast: throws SolverFailure when the convergence check fails and cfg.force is off.
// With cfg.auto_truncation the hierarchy is first deepened (see select_truncation).
SingleRun run_single(const RunConfig& cfg);

struct SweepResult {
    std::string axis1;
    std::string axis2;
    std::vector<double> axis1_values;
    std::vector<double> axis2_values;
    std::vector<GridCell> cells;  // axis1-major
    std::vector<std::string> errors;  // per cell, empty on success
    std::vector<std::optional<ConvergenceReport>> convergence;
    Hygiene hygiene;

    const GridCell& at(std::size_t i1, std::size_t i2) const { return cells[i1 * axis2_values.size() + i2]; }
    std::size_t failures() const;
};

// Cells over (Omega, omega). Fail-soft per cell.
SweepResult sweep_drive(const RunConfig& cfg);

// Cells over (lambda, gamma) with omega pinned to Omega / z_{rrc_k}. Fail-soft per cell.
SweepResult sweep_bath(const RunConfig& cfg);

// ω = Ω/z_k for k = 1..k_max and every Ω on the drive axis, grouped by Ω in axis order.
std::vector<RrcLine> rrc_lines(const RunConfig& cfg, int k_max = 3);

struct TrajectoryRun {
    InitialState state;
    PropagationResult series;
    SolverConfig solver;
    std::optional<ConvergenceReport> convergence;
};

std::vector<TrajectoryRun> trajectories(const RunConfig& cfg);

struct QSnapshotRun {
    std::vector<double> times;
    std::vector<DensityMatrix> states;  // at `times`
    PropagationResult series;
    SolverConfig solver;
    std::optional<ConvergenceReport> convergence;
};

QSnapshotRun qsnapshot(const RunConfig& cfg);

// File-producing entry points used by the CLI. Each writes into cfg.out_dir
// along with a summary.json and returns the summary text.
std::string write_simulate(const RunConfig& cfg);
std::string write_trajectories(const RunConfig& cfg);
std::string write_qsnapshot(const RunConfig& cfg);
std::string write_sweep_drive(const RunConfig& cfg);
std::string write_sweep_bath(const RunConfig& cfg);
std::string write_floquet(const RunConfig& cfg);
std::string write_fourier(const RunConfig& cfg);

}  // namespace syncheom
