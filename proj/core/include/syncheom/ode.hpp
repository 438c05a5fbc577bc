#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "syncheom/complex2x2.hpp"

namespace syncheom {

using StateVector = std::vector<cplx>;

struct OdeTolerance {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    double max_step = 0.1;
    double min_step = 1e-12;

    /// Throws std::invalid_argument on non-positive tolerances or min_step >= max_step.
    void validate() const;
};

// Raised when the controller needs a step below OdeTolerance::min_step.
class StepUnderflow : public std::runtime_error {
public:
    StepUnderflow(double t, double h);
    double time() const noexcept { return time_; }
    double step() const noexcept { return step_; }

private:
    double time_;
    double step_;
};

// dy/dt = f(t, y); the callee writes into dydt (same length as y).
using RhsFunction = std::function<void(double t, std::span<const cplx> y, std::span<cplx> dydt)>;

struct IntegrationStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t rhs_evaluations = 0;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<StateVector> states;
    IntegrationStats stats;
};

/// Dormand–Prince 5(4) with PI step-size control and 4th-order dense output.
///
/// Integrates from t0 to the last of `output_times` (which must be sorted,
/// non-decreasing and >= t0) and returns the state at each output time.
/// An output time equal to t0 returns y0 unchanged.
Trajectory integrate_adaptive(const RhsFunction& rhs, StateVector y0, double t0, std::span<const double> output_times,
                              const OdeTolerance& tol);

/// Convenience overload: state at t1 only.
StateVector integrate_to(const RhsFunction& rhs, StateVector y0, double t0, double t1, const OdeTolerance& tol);

}  // namespace syncheom
