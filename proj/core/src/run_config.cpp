#include "syncheom/run_config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"

namespace syncheom {

using nlohmann::json;

std::vector<double> AxisSpec::values() const {
    if (!explicit_values.empty()) return explicit_values;
    std::vector<double> v;
    if (count <= 0) return v;
    if (count == 1) return {min};
    v.resize(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = min + (max - min) * i / (count - 1);
    v.back() = max;
    return v;
}

DensityMatrix InitialState::resolve() const {
    if (bloch) return DensityMatrix::from_bloch(*bloch);
    static const std::map<std::string, BlochVector, std::less<>> named = {
        {"+x", {1, 0, 0}}, {"-x", {-1, 0, 0}}, {"+y", {0, 1, 0}}, {"-y", {0, -1, 0}},
        {"e", {0, 0, 1}},  {"g", {0, 0, -1}},  {"mixed", {0, 0, 0}}};
    const auto it = named.find(name);
    if (it == named.end()) throw ConfigError("unknown initial state '" + name + "'");
    return DensityMatrix::from_bloch(it->second);
}

std::string InitialState::label() const {
    if (!bloch) return name;
    std::ostringstream os;
    os << "bloch(" << bloch->x << "," << bloch->y << "," << bloch->z << ")";
    return os.str();
}

DriveParams RunConfig::resolved_drive() const {
    DriveParams d = drive;
    if (omega_from_rrc) d.omega = rrc_frequency(rrc_k, d.Omega);
    return d;
}

double RunConfig::resolved_window_width(const DriveParams& d) const { return window_width.value_or(d.period()); }

std::vector<double> RunConfig::resolved_snapshot_times() const {
    if (!snapshot_times.empty()) return snapshot_times;
    return {0.0, 0.5 * t_max, t_max};
}

std::vector<InitialState> RunConfig::resolved_trajectory_states() const {
    if (!trajectory_states.empty()) return trajectory_states;
    // Pure states in the x–z plane with m_x = 0.8, 0.5, 0.
    std::vector<InitialState> out;
    for (const double mx : {0.8, 0.5, 0.0}) {
        InitialState s;
        s.bloch = BlochVector{mx, 0.0, std::sqrt(1.0 - mx * mx)};
        out.push_back(s);
    }
    return out;
}

void RunConfig::validate() const {
    const auto fail = [](const std::string& m) { throw ConfigError(m); };
    if (!(drive.omega0 > 0.0) || !std::isfinite(drive.omega0)) fail("omega0 must be positive");
    if (!std::isfinite(drive.delta) || !std::isfinite(drive.Omega)) fail("delta and Omega must be finite");
    if (omega_from_rrc) {
        if (!(drive.Omega > 0.0)) fail("omega derived from the RRC needs Omega > 0");
        if (rrc_k < 1 || rrc_k > 16) fail("rrc_k must be in [1, 16]");
    } else if (!(drive.omega > 0.0)) {
        fail("omega must be positive");
    }
    try {
        bath.validate();
        solver.validate();
    } catch (const std::invalid_argument& e) {
        fail(e.what());
    }
    if (!(t_max > 0.0)) fail("t_max must be positive");
    if (samples < 2) fail("samples must be at least 2");
    if (window_width && *window_width < 0.0) fail("window_width must be non-negative");
    if (window_samples < 2) fail("window_samples must be at least 2");
    if (theta_nodes < 64) fail("theta_nodes must be at least 64");
    if (phi_nodes < 1) fail("phi_nodes must be at least 1");
    if (workers < 1) fail("workers must be at least 1");
    if (!(convergence_probe_time > 0.0)) fail("convergence_probe_time must be positive");
    if (convergence_probe_samples < 2) fail("convergence_probe_samples must be at least 2");
    for (const double t : snapshot_times) {
        if (t < 0.0 || t > t_max) fail("snapshot times must lie in [0, t_max]");
    }
    if (max_depth < solver.L) fail("max_depth must be at least L");
    if (max_matsubara < solver.K) fail("max_matsubara must be at least K");
    if (fourier_n_max < 0) fail("fourier_n_max must be non-negative");
    if (out_dir.empty()) fail("out_dir must not be empty");
}

namespace {

BlochVector bloch_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) throw ConfigError("Bloch vector must be an array of three numbers");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

InitialState state_from_json(const json& j) {
    InitialState s;
    if (j.is_string()) {
        s.name = j.get<std::string>();
        (void)s.resolve();
    } else {
        s.bloch = bloch_from_json(j);
        s.name.clear();
    }
    return s;
}

json state_to_json(const InitialState& s) {
    if (s.bloch) return json::array({s.bloch->x, s.bloch->y, s.bloch->z});
    return s.name;
}

using Setter = std::function<void(RunConfig&, const json&)>;

template <class T>
Setter number(T RunConfig::*field) {
    return [field](RunConfig& c, const json& v) { c.*field = v.get<T>(); };
}

void axis_keys(std::map<std::string, Setter, std::less<>>& m, const std::string& prefix, AxisSpec RunConfig::*axis) {
    m[prefix + "_min"] = [axis](RunConfig& c, const json& v) {
        (c.*axis).min = v.get<double>();
        (c.*axis).explicit_values.clear();
    };
    m[prefix + "_max"] = [axis](RunConfig& c, const json& v) {
        (c.*axis).max = v.get<double>();
        (c.*axis).explicit_values.clear();
    };
    m[prefix + "_count"] = [axis](RunConfig& c, const json& v) {
        (c.*axis).count = v.get<int>();
        (c.*axis).explicit_values.clear();
    };
    m[prefix + "_values"] = [axis](RunConfig& c, const json& v) {
        (c.*axis).explicit_values = v.get<std::vector<double>>();
    };
}

const std::map<std::string, Setter, std::less<>>& setters() {
    static const auto table = [] {
        std::map<std::string, Setter, std::less<>> m;
        m["omega0"] = [](RunConfig& c, const json& v) { c.drive.omega0 = v.get<double>(); };
        m["delta"] = [](RunConfig& c, const json& v) { c.drive.delta = v.get<double>(); };
        m["Omega"] = [](RunConfig& c, const json& v) { c.drive.Omega = v.get<double>(); };
        m["omega"] = [](RunConfig& c, const json& v) {
            if (v.is_null()) {
                c.omega_from_rrc = true;
            } else {
                c.drive.omega = v.get<double>();
                c.omega_from_rrc = false;
            }
        };
        m["rrc_k"] = number(&RunConfig::rrc_k);
        m["lambda"] = [](RunConfig& c, const json& v) { c.bath.lambda = v.get<double>(); };
        m["gamma"] = [](RunConfig& c, const json& v) { c.bath.gamma = v.get<double>(); };
        m["temperature"] = [](RunConfig& c, const json& v) { c.bath.temperature = v.get<double>(); };
        m["K"] = [](RunConfig& c, const json& v) { c.solver.K = v.get<int>(); };
        m["L"] = [](RunConfig& c, const json& v) { c.solver.L = v.get<int>(); };
        m["abs_tol"] = [](RunConfig& c, const json& v) { c.solver.tolerances.abs_tol = v.get<double>(); };
        m["rel_tol"] = [](RunConfig& c, const json& v) { c.solver.tolerances.rel_tol = v.get<double>(); };
        m["max_step"] = [](RunConfig& c, const json& v) { c.solver.tolerances.max_step = v.get<double>(); };
        m["min_step"] = [](RunConfig& c, const json& v) { c.solver.tolerances.min_step = v.get<double>(); };
        m["use_scaling"] = [](RunConfig& c, const json& v) { c.solver.use_scaling = v.get<bool>(); };
        m["use_terminator"] = [](RunConfig& c, const json& v) { c.solver.use_terminator = v.get<bool>(); };
        m["max_ados"] = [](RunConfig& c, const json& v) { c.solver.max_ados = v.get<std::size_t>(); };
        m["initial_state"] = [](RunConfig& c, const json& v) { c.initial_state = state_from_json(v); };
        m["trajectory_states"] = [](RunConfig& c, const json& v) {
            c.trajectory_states.clear();
            for (const auto& s : v) c.trajectory_states.push_back(state_from_json(s));
        };
        m["t_max"] = number(&RunConfig::t_max);
        m["samples"] = number(&RunConfig::samples);
        axis_keys(m, "Omega", &RunConfig::Omega_axis);
        axis_keys(m, "omega", &RunConfig::omega_axis);
        axis_keys(m, "lambda", &RunConfig::lambda_axis);
        axis_keys(m, "gamma", &RunConfig::gamma_axis);
        m["window_width"] = [](RunConfig& c, const json& v) {
            if (v.is_null()) {
                c.window_width.reset();
            } else {
                c.window_width = v.get<double>();
            }
        };
        m["window_samples"] = number(&RunConfig::window_samples);
        m["snapshot_times"] = [](RunConfig& c, const json& v) { c.snapshot_times = v.get<std::vector<double>>(); };
        m["theta_nodes"] = number(&RunConfig::theta_nodes);
        m["phi_nodes"] = number(&RunConfig::phi_nodes);
        m["check_convergence"] = number(&RunConfig::check_convergence);
        m["convergence_probe_time"] = number(&RunConfig::convergence_probe_time);
        m["convergence_probe_samples"] = number(&RunConfig::convergence_probe_samples);
        m["convergence_threshold"] = number(&RunConfig::convergence_threshold);
        m["force"] = number(&RunConfig::force);
        m["auto_truncation"] = number(&RunConfig::auto_truncation);
        m["max_depth"] = number(&RunConfig::max_depth);
        m["max_matsubara"] = number(&RunConfig::max_matsubara);
        m["fourier_n_max"] = number(&RunConfig::fourier_n_max);
        m["out_dir"] = number(&RunConfig::out_dir);
        m["workers"] = number(&RunConfig::workers);
        m["seed"] = number(&RunConfig::seed);
        return m;
    }();
    return table;
}

void apply_key(RunConfig& cfg, std::string_view key, const json& value) {
    const auto& table = setters();
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError("unknown configuration key '" + std::string(key) + "'");
    try {
        it->second(cfg, value);
    } catch (const json::exception& e) {
        throw ConfigError("bad value for '" + std::string(key) + "': " + e.what());
    }
}

}  // namespace

RunConfig parse_config(std::string_view json_text) { return parse_config(json_text, RunConfig{}); }

RunConfig parse_config(std::string_view json_text, RunConfig base) {
    json j;
    try {
        j = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) apply_key(base, key, value);
    return base;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void apply_override(RunConfig& cfg, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw ConfigError("override must look like key=value, got '" + std::string(assignment) + "'");
    }
    const std::string_view key = assignment.substr(0, eq);
    const std::string_view raw = assignment.substr(eq + 1);
    json value;
    try {
        value = json::parse(raw.begin(), raw.end());
    } catch (const json::parse_error&) {
        value = std::string(raw);
    }
    apply_key(cfg, key, value);
}

std::string config_to_json(const RunConfig& c) {
    json j;
    j["omega0"] = c.drive.omega0;
    j["delta"] = c.drive.delta;
    j["Omega"] = c.drive.Omega;
    j["omega"] = c.omega_from_rrc ? json(nullptr) : json(c.drive.omega);
    j["rrc_k"] = c.rrc_k;
    j["lambda"] = c.bath.lambda;
    j["gamma"] = c.bath.gamma;
    j["temperature"] = c.bath.temperature;
    j["K"] = c.solver.K;
    j["L"] = c.solver.L;
    j["abs_tol"] = c.solver.tolerances.abs_tol;
    j["rel_tol"] = c.solver.tolerances.rel_tol;
    j["max_step"] = c.solver.tolerances.max_step;
    j["min_step"] = c.solver.tolerances.min_step;
    j["use_scaling"] = c.solver.use_scaling;
    j["use_terminator"] = c.solver.use_terminator;
    j["max_ados"] = c.solver.max_ados;
    j["initial_state"] = state_to_json(c.initial_state);
    json states = json::array();
    for (const auto& s : c.trajectory_states) states.push_back(state_to_json(s));
    j["trajectory_states"] = states;
    j["t_max"] = c.t_max;
    j["samples"] = c.samples;
    const auto put_axis = [&j](const std::string& p, const AxisSpec& a) {
        if (!a.explicit_values.empty()) {
            j[p + "_values"] = a.explicit_values;
        } else {
            j[p + "_min"] = a.min;
            j[p + "_max"] = a.max;
            j[p + "_count"] = a.count;
        }
    };
    put_axis("Omega", c.Omega_axis);
    put_axis("omega", c.omega_axis);
    put_axis("lambda", c.lambda_axis);
    put_axis("gamma", c.gamma_axis);
    j["window_width"] = c.window_width ? json(*c.window_width) : json(nullptr);
    j["window_samples"] = c.window_samples;
    j["snapshot_times"] = c.snapshot_times;
    j["theta_nodes"] = c.theta_nodes;
    j["phi_nodes"] = c.phi_nodes;
    j["check_convergence"] = c.check_convergence;
    j["convergence_probe_time"] = c.convergence_probe_time;
    j["convergence_probe_samples"] = c.convergence_probe_samples;
    j["convergence_threshold"] = c.convergence_threshold;
    j["force"] = c.force;
    j["auto_truncation"] = c.auto_truncation;
    j["max_depth"] = c.max_depth;
    j["max_matsubara"] = c.max_matsubara;
    j["fourier_n_max"] = c.fourier_n_max;
    j["out_dir"] = c.out_dir;
    j["workers"] = c.workers;
    j["seed"] = c.seed;
    return j.dump(2);
}

}  // namespace syncheom
