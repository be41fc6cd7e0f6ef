#include "viadel/control.hpp"

#include <cmath>
#include <deque>
#include <limits>

namespace viadel {

PolicyConfig make_policy(PolicyVariant variant, const Params& p, double band) {
    PolicyConfig policy;
    policy.variant = variant;
    policy.band = band;
    policy.region = make_region(variant == PolicyVariant::LipschitzPast
                                    ? PastVariant::Lipschitz
                                    : PastVariant::Continuous,
                                p);
    return policy;
}

void CostSpec::validate(double u_max) const {
    if (std::abs(g(0.0)) > 1e-12)
        throw std::invalid_argument("running cost must vanish at zero");
    double prev = g(0.0);
    for (int k = 1; k <= 100; ++k) {
        const double v = g(u_max * k / 100.0);
        if (v < prev) throw std::invalid_argument("running cost must be increasing");
        prev = v;
    }
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Raw greedy value before clamping. Both caps are evaluated from the band
/// conditions so the corner, where S1 and S2 meet, gets their minimum.
double greedy_raw(State x, double i_del, BoundaryClass cls,
                  const PolicyConfig& policy, const Params& p) {
    if (cls == BoundaryClass::Outside)
        throw std::logic_error("greedy policy queried outside the viable set");

    const FrontierCurve& frontier = policy.region.viable_curve;
    const double band_i = policy.band * p.i_max;
    const double s_tol = policy.band * frontier.s_lo();

    const bool near_cap = cls == BoundaryClass::OnS1 ||
                          (x.i >= p.i_max * (1.0 - policy.band) &&
                           x.s >= p.herd_threshold() - s_tol &&
                           x.s <= frontier.s_lo() + s_tol);
    const bool near_frontier =
        cls == BoundaryClass::OnS2 ||
        (x.s > frontier.s_lo() && x.s <= frontier.s_hat() &&
         x.i >= frontier.eval(x.s) - band_i);

    double b = p.beta;
    if (near_cap) {
        const double denom = x.s * i_del;
        b = std::min(b, denom > 0.0 ? p.gamma * p.i_max / denom : kInf);
    }
    if (near_frontier) {
        const double n = policy.variant == PolicyVariant::LipschitzPast
                             ? psi_truncate(x.i, policy.region.lipschitz, p.delay, p.i_max)
                             : x.i;
        b = std::min(b, i_del > 0.0 ? p.beta_star * n / i_del : kInf);
    }
    return b;
}

}  // namespace

double greedy_transmission(State x, double i_del, BoundaryClass cls,
                           const PolicyConfig& policy, const Params& p) {
    return std::clamp(greedy_raw(x, i_del, cls, policy, p), p.beta_star, p.beta);
}

ClosedLoopResult run_greedy(const InitialCondition& ic, const PolicyConfig& policy,
                            const Params& p, const StepConfig& cfg,
                            const CostSpec& cost) {
    p.validate();
    cost.validate(p.beta - p.beta_star);

    const auto report = check_admissible(ic, p);
    if (!report.in_C)
        throw std::invalid_argument("initial condition not admissible: " + report.detail);
    if (policy.variant == PolicyVariant::LipschitzPast) {
        Params with_l = p;
        with_l.lipschitz = policy.region.lipschitz;
        const auto lrep = check_admissible(ic, with_l);
        if (!lrep.lipschitz_ok)
            throw std::invalid_argument("initial condition not admissible: " + lrep.detail);
    }
    const State x0 = eval_initial(ic, 0.0, p);
    if (!region_contains(policy.region, RegionSet::Viable, x0))
        throw std::invalid_argument("initial state outside the viable set");

    const StepConfig run_cfg = cfg.normalized(p);
    // One sampling step can carry the state across the whole activation band
    // before a cap fires; escapes within the band plus one step of maximal
    // drift are recoverable, the caps re-engage and pull the state back.
    const double margin = policy.band * p.i_max + p.min_lipschitz() * run_cfg.dt;

    int clamps = 0;
    auto rule = [&](double t, State x, double i_del) {
        BoundaryClass cls = classify_boundary(policy.region, x, policy.band);
        if (cls == BoundaryClass::Outside) {
            const FrontierCurve& frontier = policy.region.viable_curve;
            const bool near =
                in_triangle(x, margin) && x.i <= p.i_max + margin &&
                (x.s <= frontier.s_lo() ||
                 (x.s <= frontier.s_hat() + margin &&
                  x.i <= frontier.envelope(std::min(x.s, frontier.s_hat())) + margin));
            if (!near)
                throw SolverError("closed loop left the viable set at t = " +
                                  std::to_string(t) + ", s = " + std::to_string(x.s) +
                                  ", i = " + std::to_string(x.i));
            cls = BoundaryClass::Interior;  // the band conditions pick the caps
        }
        const double raw = greedy_raw(x, i_del, cls, policy, p);
        if (raw < p.beta_star * (1.0 - 1e-12)) ++clamps;
        return std::clamp(raw, p.beta_star, p.beta);
    };

    const double herd = p.herd_threshold();
    auto stop = [&](double, State x) { return x.s < herd && x.i < 1e-6; };

    ClosedLoopResult out{integrate(ic, rule, p, run_cfg, stop)};
    const Trajectory& traj = out.trajectory;
    const double dt = traj.dt();

    out.b = traj.control;
    out.u.resize(out.b.size());
    out.max_infected = 0.0;
    out.t_lock = 0.0;
    for (std::size_t k = 0; k < out.b.size(); ++k) {
        out.u[k] = p.beta - out.b[k];
        if (out.u[k] > 1e-15) out.t_lock = static_cast<double>(k) * dt;
        out.max_infected = std::max(out.max_infected, traj.states[k].i);
    }
    out.J = accumulate_cost(out.u, dt, cost);
    out.t_end = traj.t_end();
    out.s_inf = traj.states.back().s;
    out.constraint_ok = out.max_infected <= p.i_max * (1.0 + policy.band);
    out.reached_herd = out.s_inf < herd;
    out.zero_infected = report.zero_infected;
    out.clamp_events = clamps;
    return out;
}

double accumulate_cost(std::span<const double> u, double dt, const CostSpec& cost) {
    if (u.size() < 2) return 0.0;
    double acc = 0.0;
    double prev = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        double v = u[k];
        if (v < -1e-12) throw std::invalid_argument("negative intervention effort");
        v = std::max(v, 0.0);
        const double gv = cost.g(v);
        if (k > 0) acc += 0.5 * dt * (prev + gv);
        prev = gv;
    }
    return acc;
}

AsymptoticsReport asymptotics(const ClosedLoopResult& result, const Params& p) {
    AsymptoticsReport rep;
    rep.herd = p.herd_threshold();
    rep.s_inf = result.s_inf;
    rep.below_herd = rep.s_inf < rep.herd;
    if (result.zero_infected) return rep;  // frozen dynamics, relation is vacuous

    const Trajectory& traj = result.trajectory;
    const double dt = traj.dt();
    const double T = std::round(result.t_lock / dt) * dt;
    const auto m = static_cast<std::size_t>(std::llround(p.delay / dt));

    // Trapezoid of i over [T - delay, T]; the prefix covers negative times.
    double integral = 0.0;
    double prev = traj.at(T - p.delay).i;
    for (std::size_t j = 1; j <= m; ++j) {
        const double cur = traj.at(T - p.delay + static_cast<double>(j) * dt).i;
        integral += 0.5 * dt * (prev + cur);
        prev = cur;
    }

    const double b_inf = p.beta;  // the greedy control locks at beta
    const State xT = traj.at(T);
    rep.m_factor = std::exp(-b_inf * integral - (b_inf / p.gamma) * xT.i);
    const double lhs = rep.s_inf * std::exp(-(b_inf / p.gamma) * rep.s_inf);
    const double rhs = rep.m_factor * xT.s * std::exp(-(b_inf / p.gamma) * xT.s);
    rep.residual_rel = std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
    rep.residual_checked = true;
    return rep;
}

double weak_monotone_violation(const Trajectory& traj, const Params& p) {
    if (traj.states.front().s > p.herd_threshold())
        throw std::invalid_argument("weak monotonicity requires s(0) <= gamma/beta");

    const double dt = traj.dt();
    const auto m = static_cast<std::size_t>(std::llround(p.delay / dt));
    const auto n = traj.size();

    // Series extended with the prefix on [-delay, 0), aligned to the grid.
    std::vector<double> series(m + n);
    for (std::size_t j = 0; j < m; ++j)
        series[j] = traj.at(-p.delay + static_cast<double>(j) * dt).i;
    for (std::size_t k = 0; k < n; ++k) series[m + k] = traj.states[k].i;

    // window_max[k] = max of i over [tau - delay, tau] at tau = k*dt.
    std::vector<double> window_max(n);
    std::deque<std::size_t> dq;
    for (std::size_t j = 0; j < series.size(); ++j) {
        while (!dq.empty() && series[dq.back()] <= series[j]) dq.pop_back();
        dq.push_back(j);
        while (dq.front() + m + 1 <= j) dq.pop_front();
        if (j >= m) window_max[j - m] = series[dq.front()];
    }

    // For each grid point l, the binding bound is the smallest window max
    // over starting times tau in [l - delay, l].
    double violation = -kInf;
    std::deque<std::size_t> mins;
    for (std::size_t l = 0; l < n; ++l) {
        while (!mins.empty() && window_max[mins.back()] >= window_max[l]) mins.pop_back();
        mins.push_back(l);
        while (mins.front() + m < l) mins.pop_front();
        violation = std::max(violation, traj.states[l].i - window_max[mins.front()]);
    }
    return violation;
}

}  // namespace viadel
