#pragma once

#include "viadel/regions.hpp"

#include <span>

namespace viadel {

enum class PolicyVariant { ContinuousPast, LipschitzPast };

/// Greedy feedback configuration. The band replaces the measure-zero
/// boundary pieces: a cap engages whenever the state is within band*i_max
/// of the matching boundary, which keeps the sampled loop well posed.
struct PolicyConfig {
    PolicyVariant variant = PolicyVariant::ContinuousPast;
    double band = 1e-3;
    RegionSpec region;
};

/// Builds the policy together with its matching region curves.
PolicyConfig make_policy(PolicyVariant variant, const Params& p, double band = 1e-3);

/// Running cost of the intervention effort u = beta - b. Convex, strictly
/// increasing, zero at zero; identity by default.
struct CostSpec {
    std::function<double(double)> g = [](double u) { return u; };
    void validate(double u_max) const;
};

struct ClosedLoopResult {
    Trajectory trajectory;
    std::vector<double> b{};  // applied transmission rate per node
    std::vector<double> u{};  // intervention effort beta - b
    double J = 0.0;
    double t_lock = 0.0;    // last time the control was below beta
    double s_inf = 0.0;     // susceptibles at termination
    double max_infected = 0.0;
    bool constraint_ok = false;  // max i <= i_max * (1 + band)
    bool reached_herd = false;   // final s below gamma/beta
    bool zero_infected = false;  // degenerate frozen history
    int clamp_events = 0;        // raw policy value below beta_star, clamped up
    double t_end = 0.0;
};

/// The greedy transmission rate for one sampled state: beta in the
/// interior, the ICU cap rate on S1, the frontier-tangency rate on S2,
/// the minimum of the two near the corner; always clamped to
/// [beta_star, beta]. A delayed value of zero lifts every cap.
double greedy_transmission(State x, double i_del, BoundaryClass cls,
                           const PolicyConfig& policy, const Params& p);

/// Closed-loop integration of the greedy feedback with zero-order hold,
/// trapezoidal cost accumulation, and termination once the state is past
/// herd immunity with a negligible infected fraction.
ClosedLoopResult run_greedy(const InitialCondition& ic, const PolicyConfig& policy,
                            const Params& p, const StepConfig& cfg,
                            const CostSpec& cost = CostSpec{});

/// Trapezoidal integral of g(u) over the uniform control grid.
double accumulate_cost(std::span<const double> u, double dt, const CostSpec& cost);

struct AsymptoticsReport {
    double s_inf = 0.0;
    double herd = 0.0;           // gamma/beta
    bool below_herd = false;
    bool residual_checked = false;
    double residual_rel = 0.0;   // relative defect of the terminal-state relation
    double m_factor = 0.0;
};

/// Terminal diagnostics: the herd-immunity check on s_inf and the relative
/// residual of the limit relation s_inf e^{-(b/gamma) s_inf} =
/// M_T s(T) e^{-(b/gamma) s(T)} evaluated at T = t_lock with b = beta.
AsymptoticsReport asymptotics(const ClosedLoopResult& result, const Params& p);

/// Largest violation of the sliding-window decrease property: for runs with
/// s(0) <= gamma/beta, i(tau + t) may never exceed the running maximum of i
/// over [tau - delay, tau]. Returns max over the grid of the excess.
double weak_monotone_violation(const Trajectory& traj, const Params& p);

}  // namespace viadel
