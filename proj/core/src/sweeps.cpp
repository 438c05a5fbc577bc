#include "syncheom/sweeps.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "json.hpp"
#include "syncheom/bessel.hpp"

namespace syncheom {

using nlohmann::json;

namespace {

std::size_t nearest_index(const std::vector<double>& grid, double t) {
    const auto it = std::lower_bound(grid.begin(), grid.end(), t);
    std::size_t i = static_cast<std::size_t>(it - grid.begin());
    if (i == grid.size()) return grid.size() - 1;
    if (i > 0 && t - grid[i - 1] < grid[i] - t) --i;
    return i;
}

PropagationResult pick(const PropagationResult& full, const std::vector<double>& merged, const std::vector<double>& want) {
    PropagationResult out;
    out.stats = full.stats;
    out.samples.reserve(want.size());
    for (const double t : want) {
        out.samples.push_back(full.samples[nearest_index(merged, t)]);
        out.samples.back().t = t;
        out.hygiene.absorb(out.samples.back());
    }
    return out;
}

json hygiene_json(const Hygiene& h) {
    return {{"max_trace_deviation", h.max_trace_deviation},
            {"max_hermiticity_deviation", h.max_hermiticity_deviation},
            {"min_eigenvalue", h.min_eigenvalue},
            {"acceptable", h.acceptable()}};
}

json convergence_json(const std::optional<ConvergenceReport>& c) {
    if (!c) return "not checked";
    return {{"depth_deviation", c->depth_deviation},
            {"matsubara_deviation", c->matsubara_deviation},
            {"threshold", c->threshold},
            {"converged", c->converged}};
}

json drive_json(const DriveParams& d) {
    return {{"omega0", d.omega0}, {"delta", d.delta}, {"Omega", d.Omega}, {"omega", d.omega}};
}

json stats_json(const IntegrationStats& s) {
    return {{"accepted", s.accepted}, {"rejected", s.rejected}, {"rhs_evaluations", s.rhs_evaluations}};
}

json base_summary(const std::string& command, const RunConfig& cfg) {
    return {{"command", command}, {"config", json::parse(config_to_json(cfg))}};
}

std::string path_in(const RunConfig& cfg, const std::string& name) { return cfg.out_dir + "/" + name; }

std::string finish(const RunConfig& cfg, const json& summary) {
    std::string text = summary.dump(2);
    text += '\n';
    write_text_file(path_in(cfg, "summary.json"), text);
    return text;
}

struct CheckedRun {
    CellOutcome outcome;
    SolverConfig solver;
    std::optional<ConvergenceReport> convergence;
};

// Fail-fast path shared by the single-run commands.
CheckedRun checked_run(const RunConfig& cfg, CellInputs in, const std::string& label) {
    CheckedRun r;
    try {
        if (cfg.check_convergence && cfg.auto_truncation) {
            const TruncationChoice choice =
                select_truncation(in.drive, in.bath, in.solver, in.rho0, std::min(cfg.convergence_probe_time, in.t_max),
                                  cfg.convergence_probe_samples, cfg.convergence_threshold, cfg.max_depth, cfg.max_matsubara);
            in.solver = choice.config;
            r.convergence = choice.report;
        } else {
            r.convergence = cell_convergence(cfg, in);
        }
    } catch (const std::exception& e) {
        throw SolverFailure(label + ": convergence check failed to run: " + e.what());
    }
    r.solver = in.solver;
    if (r.convergence && !r.convergence->converged && !cfg.force) {
        throw SolverFailure(label + ": hierarchy not converged at K=" + std::to_string(in.solver.K) + ", L=" +
                            std::to_string(in.solver.L) + " (deviation " + format_number(r.convergence->max_deviation()) +
                            " >= " + format_number(r.convergence->threshold) + "); raise max_depth/max_matsubara or pass --force");
    }
    try {
        r.outcome = simulate_cell(in);
    } catch (const std::exception& e) {
        throw SolverFailure(label + ": " + e.what());
    }
    return r;
}

template <class CellFn>
SweepResult run_grid(const RunConfig& cfg, std::string axis1, std::string axis2, std::vector<double> v1,
                     std::vector<double> v2, CellFn make_cell) {
    if (v1.empty() || v2.empty()) throw ConfigError("sweep axes must be non-empty");
    SweepResult res;
    res.axis1 = std::move(axis1);
    res.axis2 = std::move(axis2);
    res.axis1_values = std::move(v1);
    res.axis2_values = std::move(v2);
    const std::size_t n = res.axis1_values.size() * res.axis2_values.size();
    res.cells.resize(n);
    res.errors.resize(n);
    res.convergence.resize(n);
    std::vector<Hygiene> hygiene(n);

    run_parallel(n, cfg.workers, [&](std::size_t i) {
        const double a = res.axis1_values[i / res.axis2_values.size()];
        const double b = res.axis2_values[i % res.axis2_values.size()];
        GridCell cell{a, b, std::numeric_limits<double>::quiet_NaN(), false};
        try {
            const CellInputs in = make_cell(a, b);
            res.convergence[i] = cell_convergence(cfg, in);
            const CellOutcome out = simulate_cell(in);
            cell.value = out.windowed_sync;
            cell.converged = res.convergence[i] && res.convergence[i]->converged && out.hygiene.acceptable();
            hygiene[i] = out.hygiene;
        } catch (const std::exception& e) {
            res.errors[i] = e.what();
        }
        res.cells[i] = cell;
    });
    for (const auto& h : hygiene) res.hygiene.absorb(h);
    return res;
}

json sweep_summary(const std::string& command, const RunConfig& cfg, const SweepResult& r, const std::string& file) {
    json s = base_summary(command, cfg);
    s["grid_file"] = file;
    s["axis1"] = r.axis1;
    s["axis2"] = r.axis2;
    s["axis1_values"] = r.axis1_values;
    s["axis2_values"] = r.axis2_values;
    s["failures"] = r.failures();
    std::size_t unconverged = 0;
    json failed = json::array();
    double worst = 0.0;
    for (std::size_t i = 0; i < r.cells.size(); ++i) {
        if (!r.cells[i].converged) ++unconverged;
        if (!r.errors[i].empty()) {
            failed.push_back({{"axis1", r.cells[i].axis1}, {"axis2", r.cells[i].axis2}, {"error", r.errors[i]}});
        }
        if (r.convergence[i]) worst = std::max(worst, r.convergence[i]->max_deviation());
    }
    s["unconverged_cells"] = unconverged;
    s["failed_cells"] = failed;
    s["max_convergence_deviation"] = worst;
    s["hygiene"] = hygiene_json(r.hygiene);
    return s;
}

}  // namespace

CellInputs cell_inputs(const RunConfig& cfg, const DriveParams& drive, const BathParams& bath) {
    CellInputs in;
    in.drive = drive;
    in.bath = bath;
    in.solver = cfg.solver;
    in.rho0 = cfg.initial_state.resolve();
    in.t_max = cfg.t_max;
    in.samples = cfg.samples;
    in.window_width = cfg.resolved_window_width(drive);
    in.window_samples = cfg.window_samples;
    return in;
}

CellOutcome simulate_cell(const CellInputs& in) {
    const double w = in.window_width;
    if (w < 0.0 || in.t_max - 0.5 * w < 0.0) throw std::invalid_argument("averaging window must lie within [0, inf)");

    const std::vector<double> series_times = uniform_times(in.t_max, in.samples);
    std::vector<double> window_times;
    if (w == 0.0 || in.window_samples < 2) {
        window_times = {in.t_max};
    } else {
        window_times.resize(in.window_samples);
        for (std::size_t i = 0; i < in.window_samples; ++i) {
            window_times[i] = in.t_max - 0.5 * w + w * static_cast<double>(i) / static_cast<double>(in.window_samples - 1);
        }
        window_times.back() = in.t_max + 0.5 * w;
    }

    std::vector<double> merged = series_times;
    merged.insert(merged.end(), window_times.begin(), window_times.end());
    merged.insert(merged.end(), in.extra_times.begin(), in.extra_times.end());
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end(),
                             [](double a, double b) { return b - a <= 1e-12 * std::max(1.0, std::abs(b)); }),
                 merged.end());

    const PropagationResult full = propagate(in.rho0, in.drive, in.bath, in.solver, merged);

    CellOutcome out;
    out.series = pick(full, merged, series_times);
    out.window = pick(full, merged, window_times);
    out.extra = pick(full, merged, in.extra_times);
    out.hygiene = full.hygiene;
    out.stats = full.stats;

    std::vector<double> s_max(window_times.size());
    for (std::size_t i = 0; i < window_times.size(); ++i) s_max[i] = max_sync(out.window.samples[i].rho).value;
    out.windowed_sync = window_average(window_times, s_max, in.t_max, window_times.size() == 1 ? 0.0 : w);
    return out;
}

std::optional<ConvergenceReport> cell_convergence(const RunConfig& cfg, const CellInputs& in) {
    if (!cfg.check_convergence) return std::nullopt;
    const double probe = std::min(cfg.convergence_probe_time, in.t_max);
    return convergence_check(in.drive, in.bath, in.solver, in.rho0, probe, cfg.convergence_probe_samples,
                             cfg.convergence_threshold);
}

void run_parallel(std::size_t n, int workers, const std::function<void(std::size_t)>& job) {
    const std::size_t threads = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(workers, 1)));
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    const auto worker = [&] {
        for (;;) {
            if (stop.load()) return;
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                job(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                stop.store(true);
            }
        }
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);
}

std::size_t SweepResult::failures() const {
    return static_cast<std::size_t>(std::count_if(errors.begin(), errors.end(), [](const std::string& e) { return !e.empty(); }));
}

SingleRun run_single(const RunConfig& cfg) {
    cfg.validate();
    SingleRun run;
    run.drive = cfg.resolved_drive();
    CheckedRun r = checked_run(cfg, cell_inputs(cfg, run.drive, cfg.bath), "simulate");
    run.outcome = std::move(r.outcome);
    run.solver = r.solver;
    run.convergence = r.convergence;
    return run;
}

SweepResult sweep_drive(const RunConfig& cfg) {
    cfg.validate();
    return run_grid(cfg, "Omega", "omega", cfg.Omega_axis.values(), cfg.omega_axis.values(), [&](double Omega, double omega) {
        DriveParams d = cfg.drive;
        d.Omega = Omega;
        d.omega = omega;
        return cell_inputs(cfg, d, cfg.bath);
    });
}

SweepResult sweep_bath(const RunConfig& cfg) {
    cfg.validate();
    DriveParams d = cfg.drive;
    d.omega = rrc_frequency(cfg.rrc_k, d.Omega);
    return run_grid(cfg, "lambda", "gamma", cfg.lambda_axis.values(), cfg.gamma_axis.values(), [&](double lambda, double gamma) {
        BathParams b = cfg.bath;
        b.lambda = lambda;
        b.gamma = gamma;
        return cell_inputs(cfg, d, b);
    });
}

std::vector<RrcLine> rrc_lines(const RunConfig& cfg, int k_max) {
    std::vector<RrcLine> lines;
    for (const double Omega : cfg.Omega_axis.values()) {
        for (int k = 1; k <= k_max; ++k) lines.push_back({k, bessel_j0_zero(k), rrc_frequency(k, Omega)});
    }
    return lines;
}

std::vector<TrajectoryRun> trajectories(const RunConfig& cfg) {
    cfg.validate();
    const auto states = cfg.resolved_trajectory_states();
    if (states.empty()) throw ConfigError("trajectories needs at least one initial state");
    const DriveParams drive = cfg.resolved_drive();
    std::vector<TrajectoryRun> runs(states.size());
    run_parallel(states.size(), cfg.workers, [&](std::size_t i) {
        CellInputs in = cell_inputs(cfg, drive, cfg.bath);
        in.rho0 = states[i].resolve();
        runs[i].state = states[i];
        CheckedRun r = checked_run(cfg, in, "trajectory " + states[i].label());
        runs[i].series = std::move(r.outcome.series);
        runs[i].solver = r.solver;
        runs[i].convergence = r.convergence;
    });
    return runs;
}

QSnapshotRun qsnapshot(const RunConfig& cfg) {
    cfg.validate();
    QSnapshotRun run;
    run.times = cfg.resolved_snapshot_times();
    CellInputs in = cell_inputs(cfg, cfg.resolved_drive(), cfg.bath);
    in.extra_times = run.times;
    CheckedRun r = checked_run(cfg, in, "qsnapshot");
    for (const auto& s : r.outcome.extra.samples) run.states.push_back(s.rho);
    run.solver = r.solver;
    run.convergence = r.convergence;
    run.series = std::move(r.outcome.series);
    return run;
}

std::string write_simulate(const RunConfig& cfg) {
    const SingleRun run = run_single(cfg);
    const auto rows = time_series(run.outcome.series);
    write_text_file(path_in(cfg, "timeseries.csv"), time_series_csv(rows));
    json s = base_summary("simulate", cfg);
    s["drive"] = drive_json(run.drive);
    s["windowed_sync"] = run.outcome.windowed_sync;
    s["window_width"] = cfg.resolved_window_width(run.drive);
    s["convergence"] = convergence_json(run.convergence);
    s["K"] = run.solver.K;
    s["L"] = run.solver.L;
    s["hygiene"] = hygiene_json(run.outcome.hygiene);
    s["stats"] = stats_json(run.outcome.stats);
    s["files"] = {"timeseries.csv"};
    return finish(cfg, s);
}

std::string write_trajectories(const RunConfig& cfg) {
    const auto runs = trajectories(cfg);
    json files = json::array();
    Hygiene h;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const std::string name = "trajectory_" + std::to_string(i) + ".csv";
        write_text_file(path_in(cfg, name), time_series_csv(time_series(runs[i].series)));
        files.push_back({{"file", name},
                         {"initial_state", runs[i].state.label()},
                         {"K", runs[i].solver.K},
                         {"L", runs[i].solver.L},
                         {"convergence", convergence_json(runs[i].convergence)}});
        h.absorb(runs[i].series.hygiene);
    }
    json s = base_summary("trajectories", cfg);
    s["drive"] = drive_json(cfg.resolved_drive());
    s["trajectories"] = files;
    s["hygiene"] = hygiene_json(h);
    return finish(cfg, s);
}

std::string write_qsnapshot(const RunConfig& cfg) {
    const QSnapshotRun run = qsnapshot(cfg);
    const SphereGrid grid = SphereGrid::make(cfg.theta_nodes, cfg.phi_nodes);
    json snaps = json::array();
    for (std::size_t i = 0; i < run.times.size(); ++i) {
        const std::string name = "q_snapshot_" + std::to_string(i) + ".csv";
        write_text_file(path_in(cfg, name), q_field_csv(run.states[i], grid));
        snaps.push_back({{"file", name}, {"t", run.times[i]}});
    }
    write_text_file(path_in(cfg, "q_argmax.csv"), q_argmax_csv(run.series));
    write_text_file(path_in(cfg, "timeseries.csv"), time_series_csv(time_series(run.series)));
    json s = base_summary("qsnapshot", cfg);
    s["drive"] = drive_json(cfg.resolved_drive());
    s["snapshots"] = snaps;
    s["K"] = run.solver.K;
    s["L"] = run.solver.L;
    s["convergence"] = convergence_json(run.convergence);
    s["files"] = {"q_argmax.csv", "timeseries.csv"};
    s["hygiene"] = hygiene_json(run.series.hygiene);
    return finish(cfg, s);
}

std::string write_sweep_drive(const RunConfig& cfg) {
    const SweepResult r = sweep_drive(cfg);
    write_text_file(path_in(cfg, "sweep_drive.csv"), grid_csv(r.cells));
    write_text_file(path_in(cfg, "rrc_lines.csv"), rrc_lines_csv(rrc_lines(cfg)));
    json s = sweep_summary("sweep-drive", cfg, r, "sweep_drive.csv");
    s["rrc_file"] = "rrc_lines.csv";
    return finish(cfg, s);
}

std::string write_sweep_bath(const RunConfig& cfg) {
    const SweepResult r = sweep_bath(cfg);
    write_text_file(path_in(cfg, "sweep_bath.csv"), grid_csv(r.cells));
    json s = sweep_summary("sweep-bath", cfg, r, "sweep_bath.csv");
    DriveParams d = cfg.drive;
    d.omega = rrc_frequency(cfg.rrc_k, d.Omega);
    s["drive"] = drive_json(d);
    return finish(cfg, s);
}

std::string write_floquet(const RunConfig& cfg) {
    cfg.validate();
    const DriveParams base = cfg.resolved_drive();
    const OdeTolerance tol = cfg.solver.tolerances;

    std::string csv = "omega,eps_minus,eps_plus,splitting\n";
    for (const double omega : cfg.omega_axis.values()) {
        DriveParams d = base;
        d.omega = omega;
        const Quasienergies q = floquet_quasienergies(d, tol);
        csv += format_number(omega) + ',' + format_number(q.values[0]) + ',' + format_number(q.values[1]) + ',' +
               format_number(q.splitting) + '\n';
    }
    write_text_file(path_in(cfg, "floquet.csv"), csv);

    json points = json::array();
    for (const double shift : {-10.0, 0.0, 10.0}) {
        DriveParams d = base;
        d.omega = base.omega + shift;
        if (!(d.omega > 0.0)) continue;
        const Quasienergies q = floquet_quasienergies(d, tol);
        points.push_back({{"omega", d.omega},
                          {"quasienergies", {q.values[0], q.values[1]}},
                          {"splitting", q.splitting},
                          {"degenerate", q.splitting < kQuasienergyDegeneracyTol}});
    }
    json s = base_summary("floquet", cfg);
    s["drive"] = drive_json(base);
    s["points"] = points;
    s["files"] = {"floquet.csv"};
    return finish(cfg, s);
}

std::string write_fourier(const RunConfig& cfg) {
    cfg.validate();
    const DriveParams d = cfg.resolved_drive();
    std::string csv = "n,re_a00,im_a00,re_a01,im_a01,re_a10,im_a10,re_a11,im_a11\n";
    for (int n = -cfg.fourier_n_max; n <= cfg.fourier_n_max; ++n) {
        const FourierComponent f = fourier_component(n, d);
        csv += std::to_string(n);
        for (const cplx& z : f.op.a) csv += ',' + format_number(z.real()) + ',' + format_number(z.imag());
        csv += '\n';
    }
    write_text_file(path_in(cfg, "fourier.csv"), csv);
    json s = base_summary("fourier", cfg);
    s["drive"] = drive_json(d);
    s["ratio"] = d.Omega / d.omega;
    s["static_approximation_valid"] = static_approximation_valid(d);
    s["files"] = {"fourier.csv"};
    return finish(cfg, s);
}

}  // namespace syncheom
