#pragma once

#include "viadel/model.hpp"

#include <cstddef>
#include <functional>

namespace viadel {

/// Thrown when the integrator detects an inconsistent state (NaN, or the
/// trajectory leaving the physical triangle beyond tolerance).
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StepConfig {
    double dt = 0.0;          // <= 0 selects delay/600
    double t_max = 1000.0;
    bool hold_control = true; // zero-order hold of the control over each step

    /// Returns a copy with dt snapped down to an exact divisor of the delay.
    StepConfig normalized(const Params& p) const;
};

/// Dense solution of one integration: RK4 states and node derivatives on a
/// uniform grid starting at t = 0, with the initial condition covering
/// [-delay, 0]. Evaluation between nodes is cubic Hermite.
class Trajectory {
  public:
    Trajectory(InitialCondition prefix, Params params, double dt);

    double dt() const { return dt_; }
    double t_end() const { return dt_ * static_cast<double>(states.size() - 1); }
    std::size_t size() const { return states.size(); }
    const Params& params() const { return params_; }
    const InitialCondition& prefix() const { return prefix_; }

    /// Dense state at any t in [-delay, t_end]: the initial condition for
    /// t <= 0, Hermite interpolation beyond; exact at grid nodes.
    State at(double t) const;

    /// Infected fraction one delay in the past, i(t - delay), for t >= 0.
    double infected_delayed(double t) const;

    std::vector<State> states;
    std::vector<Derivative> slopes;  // node derivatives, control of the step at the node
    std::vector<double> control;     // b applied on the step starting at the node

  private:
    InitialCondition prefix_;
    Params params_;
    double dt_;
};

/// Control law sampled at the start of each step: b(t, x(t), i(t - delay)).
using ControlRule = std::function<double(double t, State x, double i_del)>;

/// Optional termination test, evaluated at grid nodes.
using StopRule = std::function<bool(double t, State x)>;

/// Integrates the delayed system by the method of steps with classical RK4.
/// Delayed values are read from the dense trajectory (prefix or Hermite);
/// the control is frozen over each step when cfg.hold_control is set.
/// Stops at cfg.t_max or at the first grid node where stop() holds.
Trajectory integrate(const InitialCondition& ic, const ControlRule& rule,
                     const Params& p, const StepConfig& cfg,
                     const StopRule& stop = {});

}  // namespace viadel
