#include "syncheom/validation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "syncheom/heom.hpp"
#include "syncheom/phase_space.hpp"

namespace syncheom {

namespace {

OracleResult judge(std::string name, double error, double threshold, std::string detail) {
    OracleResult r;
    r.name = std::move(name);
    r.error = error;
    r.threshold = threshold;
    r.status = (std::isfinite(error) && error < threshold) ? OracleStatus::pass : OracleStatus::fail;
    r.detail = std::move(detail);
    return r;
}

OracleResult crashed(std::string name, double threshold, const std::exception& e) {
    OracleResult r;
    r.name = std::move(name);
    r.error = std::numeric_limits<double>::infinity();
    r.threshold = threshold;
    r.status = OracleStatus::fail;
    r.detail = std::string("exception: ") + e.what();
    return r;
}

constexpr OdeTolerance kTightTolerance{1e-12, 1e-11, 0.05, 1e-14};

}  // namespace

std::string to_string(OracleStatus s) {
    switch (s) {
        case OracleStatus::pass: return "pass";
        case OracleStatus::fail: return "fail";
        case OracleStatus::not_applicable: return "not applicable";
    }
    return "fail";
}

bool ValidationReport::passed() const {
    return std::none_of(oracles.begin(), oracles.end(), [](const OracleResult& o) { return o.status == OracleStatus::fail; });
}

std::string ValidationReport::to_json() const {
    nlohmann::json j;
    j["passed"] = passed();
    auto& list = j["oracles"] = nlohmann::json::array();
    for (const auto& o : oracles) {
        nlohmann::json e = {{"name", o.name}, {"status", to_string(o.status)}, {"threshold", o.threshold}, {"detail", o.detail}};
        e["error"] = std::isfinite(o.error) ? nlohmann::json(o.error) : nlohmann::json(nullptr);
        list.push_back(e);
    }
    return j.dump(2) + "\n";
}

OracleResult dephasing_oracle(const RunConfig& cfg) {
    const std::string name = "dephasing";
    constexpr double threshold = 0.02;
    if (cfg.bath.lambda == 0.0) {
        OracleResult r;
        r.name = name;
        r.status = OracleStatus::not_applicable;
        r.threshold = threshold;
        r.detail = "lambda = 0: no bath, nothing dephases";
        return r;
    }
    try {
        const DriveParams d{0.0, 0.3, 0.0, 1.0};
        constexpr double dt = 0.05;
        std::vector<double> times{0.0};
        std::vector<double> gammas{0.0};
        while (times.back() + dt <= cfg.t_max + 1e-12) {
            const double t = times.back() + dt;
            const double g = dephasing_exponent_quadrature(t, cfg.bath);
            if (g > 3.0) break;
            times.push_back(t);
            gammas.push_back(g);
        }
        if (times.size() < 2) throw std::runtime_error("Gamma exceeds 3 before the first sample");

        const auto res = propagate(DensityMatrix::from_bloch({0.0, 0.0, 1.0}), d, cfg.bath, cfg.solver, times);
        double worst = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i) {
            const BlochVector m = bloch_vector(res.samples[i].rho);
            const double exact = std::exp(-gammas[i]);
            worst = std::max(worst, std::abs(std::hypot(m.y, m.z) - exact) / exact);
        }
        std::ostringstream os;
        os << "max relative error of |coherence| vs exp(-Gamma) over t in [0, " << times.back()
           << "], Gamma(end) = " << gammas.back();
        return judge(name, worst, threshold, os.str());
    } catch (const std::exception& e) {
        return crashed(name, threshold, e);
    }
}

OracleResult decoupled_oracle(const RunConfig& cfg) {
    const std::string name = "decoupled";
    constexpr double threshold = 1e-6;
    try {
        const DriveParams d = cfg.resolved_drive();
        BathParams b = cfg.bath;
        b.lambda = 0.0;
        const DensityMatrix rho0 = cfg.initial_state.resolve();
        const auto times = uniform_times(cfg.t_max, 61);
        const auto res = propagate(rho0, d, b, cfg.solver, times);

        Complex2x2 u = Complex2x2::identity();
        double worst = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i) {
            if (i > 0) u = propagator(d, times[i - 1], times[i], kTightTolerance) * u;
            const DensityMatrix exact(u * rho0.matrix() * u.adjoint());
            worst = std::max(worst, trace_distance(res.samples[i].rho, exact));
        }
        return judge(name, worst, threshold, "max trace distance, lambda = 0 HEOM vs unitary evolution");
    } catch (const std::exception& e) {
        return crashed(name, threshold, e);
    }
}

OracleResult fourier_oracle(const RunConfig& cfg) {
    const std::string name = "fourier";
    constexpr double threshold = 1e-8;
    try {
        std::vector<DriveParams> points{cfg.resolved_drive()};
        points.push_back({cfg.drive.omega0, cfg.drive.delta, 60.0, 35.0});
        points.push_back({cfg.drive.omega0, cfg.drive.delta, 30.0, 12.5});
        constexpr int nodes = 1024;
        double worst = 0.0;
        for (const DriveParams& p : points) {
            const double period = p.period();
            const Complex2x2 v = static_part(p);
            std::vector<Complex2x2> samples(nodes);
            for (int j = 0; j < nodes; ++j) {
                const double t = period * j / nodes;
                const Complex2x2 u = rotating_frame_unitary(t, p);
                samples[static_cast<std::size_t>(j)] = u.adjoint() * v * u;
            }
            for (int n = -7; n <= 7; ++n) {
                Complex2x2 acc = Complex2x2::zero();
                for (int j = 0; j < nodes; ++j) {
                    const cplx phase = std::polar(1.0, kTwoPi * n * j / nodes);
                    acc = acc + samples[static_cast<std::size_t>(j)] * phase;
                }
                acc = acc * cplx{1.0 / nodes, 0.0};
                worst = std::max(worst, max_abs_diff(acc, fourier_component(n, p).op));
            }
        }
        return judge(name, worst, threshold, "max entrywise error over |n| <= 7 at three drive points");
    } catch (const std::exception& e) {
        return crashed(name, threshold, e);
    }
}

OracleResult expansion_oracle(const RunConfig& cfg, double c0_scale) {
    const std::string name = "expansion_vs_quadrature";
    constexpr double threshold = 1e-6;
    if (cfg.bath.lambda == 0.0) {
        OracleResult r;
        r.name = name;
        r.status = OracleStatus::not_applicable;
        r.threshold = threshold;
        r.detail = "lambda = 0: correlation function vanishes";
        return r;
    }
    try {
        ExponentialExpansion e = matsubara_expansion(cfg.bath, cfg.solver.K);
        e.terms[0].coefficient *= c0_scale;
        double worst = 0.0;
        for (const double t : {0.1, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0}) {
            const cplx quad = correlation_quadrature(t, cfg.bath);
            const cplx expected = e.evaluate(t) + matsubara_tail(cfg.bath, cfg.solver.K, t);
            worst = std::max(worst, std::abs(quad - expected) / std::max(1.0, std::abs(quad)));
        }
        std::ostringstream os;
        os << "max |C_quad - C_exp - tail| / max(1, |C|), K = " << cfg.solver.K;
        if (c0_scale != 1.0) os << ", c0 scaled by " << c0_scale;
        return judge(name, worst, threshold, os.str());
    } catch (const std::exception& e) {
        return crashed(name, threshold, e);
    }
}

OracleResult floquet_oracle(const RunConfig& cfg) {
    const std::string name = "floquet_contrast";
    constexpr double threshold = 0.1;
    try {
        DriveParams d = cfg.drive;
        d.delta = 0.0;
        d.omega = rrc_frequency(1, d.Omega);
        const double at_rrc = floquet_quasienergies(d, kTightTolerance).splitting;
        double detuned = std::numeric_limits<double>::infinity();
        for (const double shift : {-10.0, 10.0}) {
            DriveParams q = d;
            q.omega = d.omega + shift;
            if (q.omega > 0.0) detuned = std::min(detuned, floquet_quasienergies(q, kTightTolerance).splitting);
        }
        std::ostringstream os;
        os << "splitting " << at_rrc << " at omega = " << d.omega << ", min " << detuned << " at +-10 detuning";
        return judge(name, at_rrc / detuned, threshold, os.str());
    } catch (const std::exception& e) {
        return crashed(name, threshold, e);
    }
}

ValidationReport run_validation(const RunConfig& cfg, const ValidationOptions& opts) {
    ValidationReport r;
    r.oracles.push_back(dephasing_oracle(cfg));
    r.oracles.push_back(decoupled_oracle(cfg));
    r.oracles.push_back(fourier_oracle(cfg));
    r.oracles.push_back(expansion_oracle(cfg, opts.c0_scale));
    r.oracles.push_back(floquet_oracle(cfg));
    return r;
}

}  // namespace syncheom
