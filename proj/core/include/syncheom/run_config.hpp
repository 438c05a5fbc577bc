#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "syncheom/bath.hpp"
#include "syncheom/density_matrix.hpp"
#include "syncheom/driven_tls.hpp"
#include "syncheom/heom.hpp"

namespace syncheom {

// Invalid or unreadable run configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Sweep axis: either `count` uniform points over [min, max] or an explicit list.
struct AxisSpec {
    double min = 0.0;
    double max = 0.0;
    int count = 0;
    std::vector<double> explicit_values;

    std::vector<double> values() const;
    bool empty() const { return count <= 0 && explicit_values.empty(); }
};

// Named states: "+x", "-x", "+y", "-y", "e" (excited, +z), "g", "mixed";
// or an explicit Bloch vector.
struct InitialState {
    std::string name = "+x";
    std::optional<BlochVector> bloch;

    DensityMatrix resolve() const;
    std::string label() const;
};

struct RunConfig {
    DriveParams drive{1.0, 0.0, 60.0, 0.0};
    // When omega is not given explicitly it is set to Omega / z_k with k = rrc_k.
    bool omega_from_rrc = true;
    int rrc_k = 1;

    BathParams bath{1.0, 0.5, 0.5};
    SolverConfig solver;

    InitialState initial_state;
    std::vector<InitialState> trajectory_states;  // for `trajectories`

    double t_max = 30.0;
    std::size_t samples = 601;

    AxisSpec Omega_axis{20.0, 80.0, 9, {}};
    AxisSpec omega_axis{5.0, 45.0, 9, {}};
    AxisSpec lambda_axis{0.0, 0.0, 0, {0.25, 0.5, 1.0, 1.5, 2.0}};
    AxisSpec gamma_axis{0.0, 0.0, 0, {0.25, 0.5, 1.0, 1.5, 2.0}};

    std::optional<double> window_width;  // default: one drive period
    std::size_t window_samples = 65;

    std::vector<double> snapshot_times;  // default: 0, t_max/2, t_max
    std::size_t theta_nodes = 64;
    std::size_t phi_nodes = 128;

    bool check_convergence = true;
    double convergence_probe_time = 5.0;
    std::size_t convergence_probe_samples = 101;
    double convergence_threshold = 1e-3;
    bool force = false;
    // Single-run commands raise L (then K) until the check passes, up to these caps.
    bool auto_truncation = true;
    int max_depth = 12;
    int max_matsubara = 6;

    int fourier_n_max = 7;

    std::string out_dir = "out";
    int workers = 1;
    std::uint64_t seed = 0;

    // Drive with omega resolved from the RRC when requested.
    DriveParams resolved_drive() const;
    double resolved_window_width(const DriveParams& drive) const;
    std::vector<double> resolved_snapshot_times() const;
    std::vector<InitialState> resolved_trajectory_states() const;

    // Throws ConfigError.
    void validate() const;
};

// Parse a flat JSON object on top of the defaults. Throws ConfigError.
RunConfig parse_config(std::string_view json_text);
RunConfig parse_config(std::string_view json_text, RunConfig base);
RunConfig load_config_file(const std::string& path);

// Apply one `key=value` override; value is parsed as JSON, falling back to a string.
void apply_override(RunConfig& cfg, std::string_view assignment);

// Serialized effective configuration (same flat key set).
std::string config_to_json(const RunConfig& cfg);

}  // namespace syncheom
