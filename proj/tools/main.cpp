#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "syncheom/csv.hpp"
#include "syncheom/sweeps.hpp"
#include "syncheom/validation.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitValidation = 4;

struct GlobalOptions {
    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<int> workers;
    bool force = false;
    std::vector<std::string> overrides;
};

syncheom::RunConfig resolve_config(const GlobalOptions& g) {
    syncheom::RunConfig cfg = g.config_path.empty() ? syncheom::RunConfig{} : syncheom::load_config_file(g.config_path);
    for (const auto& o : g.overrides) syncheom::apply_override(cfg, o);
    if (g.out_dir) cfg.out_dir = *g.out_dir;
    if (g.workers) cfg.workers = *g.workers;
    if (g.force) cfg.force = true;
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Driven two-level system in a Drude-Lorentz bath: HEOM propagation and synchronization analysis"};
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--config", g.config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--out", g.out_dir, "Output directory");
    app.add_option("--workers", g.workers, "Worker threads for sweeps")->check(CLI::PositiveNumber);
    app.add_flag("--force", g.force, "Run even when the hierarchy convergence check fails");
    app.add_option("--set", g.overrides, "Override a config key, e.g. --set lambda=0.5")->take_all();

    double perturb_c0 = 1.0;
    auto* validate = app.add_subcommand("validate", "Run the oracle suite and print a JSON report");
    validate->add_option("--perturb-c0", perturb_c0, "Scale c0 before the expansion check (fault injection)");

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"simulate", "Single run: time series and windowed max-sync"},
        {"trajectories", "Bloch trajectories for several initial states"},
        {"qsnapshot", "Husimi Q snapshots and argmax series"},
        {"sweep-drive", "Windowed max-sync over (Omega, omega)"},
        {"sweep-bath", "Windowed max-sync over (lambda, gamma) at the RRC"},
        {"floquet", "Floquet quasienergies over the omega axis"},
        {"fourier", "Fourier components of the rotating-frame Hamiltonian"},
    };
    for (const auto& [name, help] : commands) app.add_subcommand(name, help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        const syncheom::RunConfig cfg = resolve_config(g);
        if (command == "validate") {
            const auto report = syncheom::run_validation(cfg, {perturb_c0});
            const std::string text = report.to_json();
            syncheom::write_text_file(cfg.out_dir + "/validation.json", text);
            std::cout << text;
            return report.passed() ? 0 : kExitValidation;
        }
        std::string summary;
        if (command == "simulate") summary = syncheom::write_simulate(cfg);
        else if (command == "trajectories") summary = syncheom::write_trajectories(cfg);
        else if (command == "qsnapshot") summary = syncheom::write_qsnapshot(cfg);
        else if (command == "sweep-drive") summary = syncheom::write_sweep_drive(cfg);
        else if (command == "sweep-bath") summary = syncheom::write_sweep_bath(cfg);
        else if (command == "floquet") summary = syncheom::write_floquet(cfg);
        else if (command == "fourier") summary = syncheom::write_fourier(cfg);
        std::cout << summary;
        return 0;
    } catch (const syncheom::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const syncheom::SolverFailure& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kExitSolver;
    }
}
