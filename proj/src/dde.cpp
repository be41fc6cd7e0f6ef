#include "viadel/dde.hpp"

#include <cmath>
#include <utility>

namespace viadel {

StepConfig StepConfig::normalized(const Params& p) const {
    StepConfig out = *this;
    double want = dt > 0.0 ? dt : p.delay / 600.0;
    want = std::min(want, p.delay);
    const double steps = std::ceil(p.delay / want - 1e-12);
    out.dt = p.delay / steps;
    if (!(out.t_max >= p.delay))
        throw std::invalid_argument("t_max must be at least one delay");
    return out;
}

Trajectory::Trajectory(InitialCondition prefix, Params params, double dt)
    : prefix_(std::move(prefix)), params_(std::move(params)), dt_(dt) {}

State Trajectory::at(double t) const {
    if (t <= 0.0) return eval_initial(prefix_, t, params_);

    // Snap to the grid so node queries return stored states exactly.
    const double kr = std::round(t / dt_);
    const auto last = static_cast<double>(states.size() - 1);
    if (std::abs(t - kr * dt_) <= 1e-9 * dt_ && kr <= last)
        return states[static_cast<std::size_t>(kr)];

    if (t > t_end() + 1e-9 * dt_)
        throw std::invalid_argument("trajectory evaluated past its end");

    auto k = static_cast<std::size_t>(t / dt_);
    k = std::min(k, states.size() - 2);
    const double th = t / dt_ - static_cast<double>(k);
    const double h00 = (1.0 + 2.0 * th) * (1.0 - th) * (1.0 - th);
    const double h10 = th * (1.0 - th) * (1.0 - th);
    const double h01 = th * th * (3.0 - 2.0 * th);
    const double h11 = th * th * (th - 1.0);
    const State& a = states[k];
    const State& b = states[k + 1];
    const Derivative& ma = slopes[k];
    const Derivative& mb = slopes[k + 1];
    return {h00 * a.s + h01 * b.s + dt_ * (h10 * ma.ds + h11 * mb.ds),
            h00 * a.i + h01 * b.i + dt_ * (h10 * ma.di + h11 * mb.di)};
}

double Trajectory::infected_delayed(double t) const {
    return at(t - params_.delay).i;
}

namespace {

void check_state(State x, double t) {
    if (!std::isfinite(x.s) || !std::isfinite(x.i))
        throw SolverError("non-finite state at t = " + std::to_string(t));
    if (!in_triangle(x, 1e-6))
        throw SolverError("state left the physical triangle at t = " + std::to_string(t));
}

}  // namespace

Trajectory integrate(const InitialCondition& ic, const ControlRule& rule,
                     const Params& p, const StepConfig& cfg_in, const StopRule& stop) {
    p.validate();
    const StepConfig cfg = cfg_in.normalized(p);
    {
        const auto rep = check_admissible(ic, p);
        if (!rep.in_C)
            throw std::invalid_argument("initial condition not admissible: " + rep.detail);
    }

    Trajectory traj(ic, p, cfg.dt);
    const auto n_max = static_cast<std::size_t>(std::llround(cfg.t_max / cfg.dt));
    traj.states.reserve(n_max + 1);
    traj.slopes.reserve(n_max + 1);
    traj.control.reserve(n_max + 1);

    const double dt = cfg.dt;
    State x = eval_initial(ic, 0.0, p);
    traj.states.push_back(x);

    auto delayed = [&](double t) { return std::max(0.0, traj.infected_delayed(t)); };

    for (std::size_t k = 0; k <= n_max; ++k) {
        const double t = static_cast<double>(k) * dt;
        const double d0 = delayed(t);
        const double b = rule(t, x, d0);
        traj.control.push_back(b);
        traj.slopes.push_back(rhs_delayed(x, d0, b, p));
        if (k == n_max || (stop && stop(t, x))) break;

        const double dmid = delayed(t + 0.5 * dt);
        const double dend = delayed(t + dt);
        const double bmid = cfg.hold_control ? b : rule(t + 0.5 * dt, x, dmid);
        const double bend = cfg.hold_control ? b : rule(t + dt, x, dend);

        const Derivative k1 = traj.slopes.back();
        const Derivative k2 =
            rhs_delayed({x.s + 0.5 * dt * k1.ds, x.i + 0.5 * dt * k1.di}, dmid, bmid, p);
        const Derivative k3 =
            rhs_delayed({x.s + 0.5 * dt * k2.ds, x.i + 0.5 * dt * k2.di}, dmid, bmid, p);
        const Derivative k4 =
            rhs_delayed({x.s + dt * k3.ds, x.i + dt * k3.di}, dend, bend, p);

        x = {x.s + dt / 6.0 * (k1.ds + 2.0 * k2.ds + 2.0 * k3.ds + k4.ds),
             x.i + dt / 6.0 * (k1.di + 2.0 * k2.di + 2.0 * k3.di + k4.di)};
        check_state(x, t + dt);
        traj.states.push_back(x);
    }
    return traj;
}

}  // namespace viadel
