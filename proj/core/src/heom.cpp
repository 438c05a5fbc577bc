#include "syncheom/heom.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "syncheom/phase_space.hpp"

namespace syncheom {

void SolverConfig::validate() const {
    if (K < 0) throw std::invalid_argument("SolverConfig: K must be non-negative");
    if (L < 1) throw std::invalid_argument("SolverConfig: L must be at least 1");
    tolerances.validate();
}

void Hygiene::absorb(const PropagationSample& s) {
    max_trace_deviation = std::max(max_trace_deviation, s.trace_deviation);
    max_hermiticity_deviation = std::max(max_hermiticity_deviation, s.hermiticity_deviation);
    min_eigenvalue = std::min(min_eigenvalue, s.min_eigenvalue);
}

void Hygiene::absorb(const Hygiene& h) {
    max_trace_deviation = std::max(max_trace_deviation, h.max_trace_deviation);
    max_hermiticity_deviation = std::max(max_hermiticity_deviation, h.max_hermiticity_deviation);
    min_eigenvalue = std::min(min_eigenvalue, h.min_eigenvalue);
}

bool Hygiene::acceptable() const {
    return max_trace_deviation < 1e-8 && max_hermiticity_deviation < 1e-8 && min_eigenvalue > -1e-6;
}

HeomSolver::HeomSolver(const DriveParams& drive, const BathParams& bath, const SolverConfig& cfg)
    : HeomSolver(drive, matsubara_expansion(bath, cfg.K), cfg) {}

HeomSolver::HeomSolver(const DriveParams& drive, ExponentialExpansion expansion, const SolverConfig& cfg)
    : drive_(drive), expansion_(std::move(expansion)), cfg_(cfg), hierarchy_(build_hierarchy(cfg.K, cfg.L, cfg.max_ados)) {
    cfg_.validate();
    if (expansion_.size() != static_cast<std::size_t>(cfg_.K) + 1) {
        throw std::invalid_argument("HeomSolver: expansion has " + std::to_string(expansion_.size()) +
                                    " terms, configuration expects K + 1 = " + std::to_string(cfg_.K + 1));
    }

    const std::size_t n_ado = hierarchy_.size();
    const auto modes = static_cast<std::size_t>(hierarchy_.modes());
    damping_.assign(n_ado, 0.0);
    up_factor_.assign(n_ado * modes, 0.0);
    down_factor_.assign(n_ado * modes, 0.0);
    for (std::size_t i = 0; i < n_ado; ++i) {
        const auto n = hierarchy_.index(i);
        for (std::size_t k = 0; k < modes; ++k) {
            const double nk = n[k];
            const double ck = std::abs(expansion_.terms[k].coefficient);
            damping_[i] += nk * expansion_.terms[k].rate;
            if (cfg_.use_scaling) {
                up_factor_[i * modes + k] = std::sqrt((nk + 1.0) * ck);
                down_factor_[i * modes + k] = ck > 0.0 ? std::sqrt(nk / ck) : 0.0;
            } else {
                up_factor_[i * modes + k] = 1.0;
                down_factor_[i * modes + k] = nk;
            }
        }
    }
}

OdeTolerance HeomSolver::effective_tolerances() const {
    OdeTolerance tol = cfg_.tolerances;
    if (drive_.Omega != 0.0 && drive_.omega > 0.0) {
        tol.max_step = std::min(tol.max_step, drive_.period() / 50.0);
        tol.min_step = std::min(tol.min_step, 0.5 * tol.max_step);
    }
    return tol;
}

void HeomSolver::rhs(double t, std::span<const cplx> state, std::span<cplx> derivative) const {
    const std::size_t n_ado = hierarchy_.size();
    if (state.size() != 4 * n_ado || derivative.size() != 4 * n_ado) {
        std::ostringstream os;
        os << "HeomSolver::rhs: state size " << state.size() << " / derivative size " << derivative.size()
           << " do not match 4 x " << n_ado << " ADOs";
        throw std::invalid_argument(os.str());
    }

    const Complex2x2 h = hamiltonian(t, drive_);
    const cplx h00 = h.a[0], h01 = h.a[1], h10 = h.a[2], h11 = h.a[3];
    const auto modes = static_cast<std::size_t>(hierarchy_.modes());
    const double term = cfg_.use_terminator ? expansion_.residual : 0.0;
    const cplx* y = state.data();
    cplx* dy = derivative.data();
    constexpr cplx I{0.0, 1.0};

    for (std::size_t i = 0; i < n_ado; ++i) {
        const cplx* r = y + 4 * i;
        const cplx r00 = r[0], r01 = r[1], r10 = r[2], r11 = r[3];

        // -i[H, ρ] - damping ρ
        const cplx c00 = h00 * r00 + h01 * r10 - (r00 * h00 + r01 * h10);
        const cplx c01 = h00 * r01 + h01 * r11 - (r00 * h01 + r01 * h11);
        const cplx c10 = h10 * r00 + h11 * r10 - (r10 * h00 + r11 * h10);
        const cplx c11 = h10 * r01 + h11 * r11 - (r10 * h01 + r11 * h11);
        const double g = damping_[i];
        cplx d00 = -I * c00 - g * r00;
        cplx d01 = -I * c01 - g * r01;
        cplx d10 = -I * c10 - g * r10;
        cplx d11 = -I * c11 - g * r11;

        // Terminator: [σx,[σx,X]] = 2 [[a-d, b-c], [c-b, d-a]].
        if (term != 0.0) {
            const double two_term = 2.0 * term;
            const cplx ad = r00 - r11;
            const cplx bc = r01 - r10;
            d00 -= two_term * ad;
            d01 -= two_term * bc;
            d10 += two_term * bc;
            d11 += two_term * ad;
        }

        // Accumulate Σ_k f_k [σx, ρ_up] and Σ_k f_k (c_k σx ρ_down - c_k* ρ_down σx), then multiply by -i.
        cplx u00{}, u01{}, u10{}, u11{};
        for (std::size_t k = 0; k < modes; ++k) {
            const std::uint32_t j_up = hierarchy_.up(i, static_cast<int>(k));
            if (j_up != Hierarchy::kNone) {
                const double f = up_factor_[i * modes + k];
                const cplx* s = y + 4 * static_cast<std::size_t>(j_up);
                // [σx, X] = [[c-b, d-a], [a-d, b-c]]
                const cplx cb = s[2] - s[1];
                const cplx da = s[3] - s[0];
                u00 += f * cb;
                u01 += f * da;
                u10 -= f * da;
                u11 -= f * cb;
            }
            const std::uint32_t j_dn = hierarchy_.down(i, static_cast<int>(k));
            if (j_dn != Hierarchy::kNone) {
                const double f = down_factor_[i * modes + k];
                const cplx ck = f * expansion_.terms[k].coefficient;
                const cplx ckc = std::conj(ck);
                const cplx* s = y + 4 * static_cast<std::size_t>(j_dn);
                // c σx X - c* X σx = [[c x10 - c* x01, c x11 - c* x00], [c x00 - c* x11, c x01 - c* x10]]
                u00 += ck * s[2] - ckc * s[1];
                u01 += ck * s[3] - ckc * s[0];
                u10 += ck * s[0] - ckc * s[3];
                u11 += ck * s[1] - ckc * s[2];
            }
        }
        cplx* out = dy + 4 * i;
        out[0] = d00 - I * u00;
        out[1] = d01 - I * u01;
        out[2] = d10 - I * u10;
        out[3] = d11 - I * u11;
    }
}

StateVector HeomSolver::initial_state(const DensityMatrix& rho0) const {
    StateVector y(state_size(), cplx{});
    store(rho0.matrix(), std::span<cplx>(y).first(4));
    return y;
}

namespace {

PropagationSample make_sample(double t, std::span<const cplx> state) {
    PropagationSample s;
    s.t = t;
    s.rho = HeomSolver::physical(state);
    s.trace_deviation = s.rho.trace_deviation();
    s.hermiticity_deviation = s.rho.hermiticity_deviation();
    s.min_eigenvalue = s.rho.min_eigenvalue();
    return s;
}

}  // namespace

PropagationResult HeomSolver::propagate(const DensityMatrix& rho0, std::span<const double> output_times) const {
    const RhsFunction f = [this](double t, std::span<const cplx> y, std::span<cplx> dy) { rhs(t, y, dy); };
    Trajectory traj = integrate_adaptive(f, initial_state(rho0), 0.0, output_times, effective_tolerances());

    PropagationResult result;
    result.stats = traj.stats;
    result.samples.reserve(traj.times.size());
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        result.samples.push_back(make_sample(traj.times[i], traj.states[i]));
        result.hygiene.absorb(result.samples.back());
    }
    return result;
}

PropagationResult propagate(const DensityMatrix& rho0, const DriveParams& drive, const BathParams& bath,
                            const SolverConfig& cfg, std::span<const double> output_times) {
    rho0.validate(1e-10);
    drive.validate(drive.Omega != 0.0);
    bath.validate();
    cfg.validate();
    if (output_times.empty() || output_times.front() < 0.0 ||
        std::adjacent_find(output_times.begin(), output_times.end(), std::greater_equal<>()) != output_times.end()) {
        throw std::invalid_argument("propagate: output times must be non-negative and strictly increasing");
    }
    return HeomSolver(drive, bath, cfg).propagate(rho0, output_times);
}

double max_bloch_deviation(const PropagationResult& a, const PropagationResult& b) {
    if (a.samples.size() != b.samples.size()) throw std::invalid_argument("max_bloch_deviation: sample count mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        const BlochVector ma = bloch_vector(a.samples[i].rho);
        const BlochVector mb = bloch_vector(b.samples[i].rho);
        worst = std::max(worst, BlochVector{ma.x - mb.x, ma.y - mb.y, ma.z - mb.z}.norm());
    }
    return worst;
}

std::vector<double> uniform_times(double t_end, std::size_t samples) {
    if (samples < 2) throw std::invalid_argument("uniform_times: need at least two samples");
    std::vector<double> times(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        times[i] = t_end * static_cast<double>(i) / static_cast<double>(samples - 1);
    }
    times.back() = t_end;
    return times;
}

ConvergenceReport convergence_check(const DriveParams& drive, const BathParams& bath, const SolverConfig& cfg,
                                    const DensityMatrix& probe_state, double probe_time, std::size_t probe_samples,
                                    double threshold) {
    const auto times = uniform_times(probe_time, probe_samples);
    const auto base = propagate(probe_state, drive, bath, cfg, times);

    SolverConfig deeper = cfg;
    deeper.L += 1;
    SolverConfig wider = cfg;
    wider.K += 1;

    ConvergenceReport report;
    report.threshold = threshold;
    report.depth_deviation = max_bloch_deviation(base, propagate(probe_state, drive, bath, deeper, times));
    report.matsubara_deviation = max_bloch_deviation(base, propagate(probe_state, drive, bath, wider, times));
    report.converged = report.max_deviation() < threshold;
    return report;
}

TruncationChoice select_truncation(const DriveParams& drive, const BathParams& bath, const SolverConfig& cfg,
                                   const DensityMatrix& probe_state, double probe_time, std::size_t probe_samples,
                                   double threshold, int max_depth, int max_matsubara) {
    const auto times = uniform_times(probe_time, probe_samples);
    const auto run = [&](int K, int L) {
        SolverConfig c = cfg;
        c.K = K;
        c.L = L;
        return propagate(probe_state, drive, bath, c, times);
    };

    int K = cfg.K;
    int L = cfg.L;
    PropagationResult base = run(K, L);
    double depth_dev = 0.0;
    for (;;) {
        PropagationResult deeper = run(K, L + 1);
        depth_dev = max_bloch_deviation(base, deeper);
        if (depth_dev < threshold || L >= max_depth) break;
        ++L;
        base = std::move(deeper);
    }

    double matsubara_dev = max_bloch_deviation(base, run(K + 1, L));
    const int K_start = K;
    while (matsubara_dev >= threshold && K < max_matsubara) {
        ++K;
        base = run(K, L);
        matsubara_dev = max_bloch_deviation(base, run(K + 1, L));
    }
    if (K != K_start) depth_dev = max_bloch_deviation(base, run(K, L + 1));

    TruncationChoice choice;
    choice.config = cfg;
    choice.config.K = K;
    choice.config.L = L;
    choice.report.depth_deviation = depth_dev;
    choice.report.matsubara_deviation = matsubara_dev;
    choice.report.threshold = threshold;
    choice.report.converged = choice.report.max_deviation() < threshold;
    return choice;
}

std::vector<double> depth_ladder(const DriveParams& drive, const BathParams& bath, const SolverConfig& cfg,
                                 const DensityMatrix& probe_state, double probe_time, std::span<const int> depths,
                                 std::size_t probe_samples) {
    const auto times = uniform_times(probe_time, probe_samples);
    std::vector<double> out;
    out.reserve(depths.size());
    for (const int depth : depths) {
        SolverConfig lo = cfg;
        lo.L = depth;
        SolverConfig hi = cfg;
        hi.L = depth + 1;
        out.push_back(max_bloch_deviation(propagate(probe_state, drive, bath, lo, times),
                                          propagate(probe_state, drive, bath, hi, times)));
    }
    return out;
}

}  // namespace syncheom
