#include "syncheom/ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace syncheom {

void OdeTolerance::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw std::invalid_argument("OdeTolerance: tolerances must be positive");
    if (!(min_step > 0.0) || !(min_step < max_step)) {
        throw std::invalid_argument("OdeTolerance: require 0 < min_step < max_step");
    }
}

namespace {

std::string underflow_message(double t, double h) {
    std::ostringstream os;
    os << "step size " << h << " below min_step at t = " << t;
    return os.str();
}

// Dormand–Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

// PI controller constants (Hairer & Wanner's dopri5 defaults).
constexpr double kSafety = 0.9;
constexpr double kBeta = 0.04;
constexpr double kExpo = 0.2 - 0.75 * kBeta;
constexpr double kFacMin = 0.2;
constexpr double kFacMax = 10.0;

class Stepper {
public:
    Stepper(const RhsFunction& rhs, std::size_t n, IntegrationStats& stats)
        : rhs_(rhs), stats_(stats), k1_(n), k2_(n), k3_(n), k4_(n), k5_(n), k6_(n), k7_(n), tmp_(n), y_new_(n),
          rc2_(n), rc3_(n), rc4_(n), rc5_(n) {}

    void eval(double t, const StateVector& y, StateVector& out) {
        rhs_(t, y, out);
        ++stats_.rhs_evaluations;
    }

    // Trial step from (t, y) with k1 = f(t, y) already in k1_. Returns the scaled error norm.
    double attempt(double t, const StateVector& y, double h, const OdeTolerance& tol) {
        const std::size_t n = y.size();
        for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + h * (a21 * k1_[i]);
        eval(t + c2 * h, tmp_, k2_);
        for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + h * (a31 * k1_[i] + a32 * k2_[i]);
        eval(t + c3 * h, tmp_, k3_);
        for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + h * (a41 * k1_[i] + a42 * k2_[i] + a43 * k3_[i]);
        eval(t + c4 * h, tmp_, k4_);
        for (std::size_t i = 0; i < n; ++i)
            tmp_[i] = y[i] + h * (a51 * k1_[i] + a52 * k2_[i] + a53 * k3_[i] + a54 * k4_[i]);
        eval(t + c5 * h, tmp_, k5_);
        for (std::size_t i = 0; i < n; ++i)
            tmp_[i] = y[i] + h * (a61 * k1_[i] + a62 * k2_[i] + a63 * k3_[i] + a64 * k4_[i] + a65 * k5_[i]);
        eval(t + h, tmp_, k6_);
        for (std::size_t i = 0; i < n; ++i)
            y_new_[i] = y[i] + h * (a71 * k1_[i] + a73 * k3_[i] + a74 * k4_[i] + a75 * k5_[i] + a76 * k6_[i]);
        eval(t + h, y_new_, k7_);

        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const cplx err =
                h * (e1 * k1_[i] + e3 * k3_[i] + e4 * k4_[i] + e5 * k5_[i] + e6 * k6_[i] + e7 * k7_[i]);
            const double scale = tol.abs_tol + tol.rel_tol * std::max(std::abs(y[i]), std::abs(y_new_[i]));
            const double r = std::abs(err) / scale;
            acc += r * r;
        }
        return std::sqrt(acc / static_cast<double>(std::max<std::size_t>(n, 1)));
    }

    // Prepare the continuous extension for the step just attempted.
    void build_dense(const StateVector& y, double h) {
        const std::size_t n = y.size();
        for (std::size_t i = 0; i < n; ++i) {
            rc2_[i] = y_new_[i] - y[i];
            rc3_[i] = h * k1_[i] - rc2_[i];
            rc4_[i] = rc2_[i] - h * k7_[i] - rc3_[i];
            rc5_[i] = h * (d1 * k1_[i] + d3 * k3_[i] + d4 * k4_[i] + d5 * k5_[i] + d6 * k6_[i] + d7 * k7_[i]);
        }
    }

    void interpolate(const StateVector& y_old, double s, StateVector& out) const {
        const double s1 = 1.0 - s;
        out.resize(y_old.size());
        for (std::size_t i = 0; i < y_old.size(); ++i) {
            out[i] = y_old[i] + s * (rc2_[i] + s1 * (rc3_[i] + s * (rc4_[i] + s1 * rc5_[i])));
        }
    }

    StateVector& k1() { return k1_; }
    StateVector& k7() { return k7_; }
    StateVector& y_new() { return y_new_; }

private:
    const RhsFunction& rhs_;
    IntegrationStats& stats_;
    StateVector k1_, k2_, k3_, k4_, k5_, k6_, k7_, tmp_, y_new_;
    StateVector rc2_, rc3_, rc4_, rc5_;
};

double rms(const StateVector& v, const StateVector& y, const OdeTolerance& tol) {
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double r = std::abs(v[i]) / (tol.abs_tol + tol.rel_tol * std::abs(y[i]));
        acc += r * r;
    }
    return std::sqrt(acc / static_cast<double>(std::max<std::size_t>(v.size(), 1)));
}

}  // namespace

StepUnderflow::StepUnderflow(double t, double h) : std::runtime_error(underflow_message(t, h)), time_(t), step_(h) {}

Trajectory integrate_adaptive(const RhsFunction& rhs, StateVector y0, double t0, std::span<const double> output_times,
                              const OdeTolerance& tol) {
    tol.validate();
    if (output_times.empty()) throw std::invalid_argument("integrate_adaptive: no output times");
    if (!std::is_sorted(output_times.begin(), output_times.end()) || output_times.front() < t0) {
        throw std::invalid_argument("integrate_adaptive: output times must be sorted and >= t0");
    }

    Trajectory traj;
    traj.times.assign(output_times.begin(), output_times.end());
    traj.states.reserve(output_times.size());

    const double t_end = output_times.back();
    const std::size_t n = y0.size();
    Stepper stepper(rhs, n, traj.stats);

    std::size_t next_out = 0;
    while (next_out < output_times.size() && output_times[next_out] <= t0) {
        traj.states.push_back(y0);
        ++next_out;
    }
    if (next_out == output_times.size()) return traj;

    StateVector y = std::move(y0);
    double t = t0;
    stepper.eval(t, y, stepper.k1());

    // Initial step guess from the local derivative scale.
    double h;
    {
        const double d0 = rms(y, y, tol);
        const double d1 = rms(stepper.k1(), y, tol);
        h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h = std::clamp(h, tol.min_step, tol.max_step);
    }

    double err_old = 1e-4;
    bool last_rejected = false;
    StateVector interp;

    while (t < t_end) {
        const double remaining = t_end - t;
        bool final_step = false;
        if (h >= remaining) {
            h = remaining;
            final_step = true;
        }

        const double err = stepper.attempt(t, y, h, tol);
        if (!std::isfinite(err) || err > 1.0) {
            ++traj.stats.rejected;
            double fac = std::isfinite(err) ? std::clamp(std::pow(err, kExpo) / kSafety, 1.0, 1.0 / kFacMin) : 10.0;
            if (last_rejected) fac = std::max(fac, 2.0);
            const double h_new = h / fac;
            if (h_new < tol.min_step) throw StepUnderflow(t, h_new);
            h = h_new;
            last_rejected = true;
            continue;
        }

        ++traj.stats.accepted;
        const double t_new = final_step ? t_end : t + h;
        stepper.build_dense(y, h);
        while (next_out < output_times.size() && output_times[next_out] <= t_new) {
            const double to = output_times[next_out];
            if (to == t_new) {
                traj.states.push_back(stepper.y_new());
            } else {
                stepper.interpolate(y, (to - t) / h, interp);
                traj.states.push_back(interp);
            }
            ++next_out;
        }

        y.swap(stepper.y_new());
        stepper.k1().swap(stepper.k7());  // FSAL
        t = t_new;

        double fac = std::pow(err, kExpo) / std::pow(err_old, kBeta) / kSafety;
        fac = std::clamp(fac, 1.0 / kFacMax, 1.0 / kFacMin);
        double h_new = h / fac;
        if (last_rejected) h_new = std::min(h_new, h);
        err_old = std::max(err, 1e-4);
        last_rejected = false;
        h = std::min(h_new, tol.max_step);
        if (h < tol.min_step && t_end - t > tol.min_step) throw StepUnderflow(t, h);
    }
    return traj;
}

StateVector integrate_to(const RhsFunction& rhs, StateVector y0, double t0, double t1, const OdeTolerance& tol) {
    if (!(t1 > t0)) throw std::invalid_argument("integrate_to: require t1 > t0");
    const double times[] = {t1};
    return std::move(integrate_adaptive(rhs, std::move(y0), t0, times, tol).states.front());
}

}  // namespace syncheom
