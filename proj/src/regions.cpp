#include "viadel/regions.hpp"

#include "viadel/parallel.hpp"

#include <cmath>
#include <cstdlib>

namespace viadel {

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("VIADEL_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

RegionSpec make_region(PastVariant variant, const Params& p) {
    p.validate();
    RegionSpec spec;
    spec.variant = variant;
    spec.params = p;
    switch (variant) {
        case PastVariant::Continuous:
            spec.invariant_curve = FrontierCurve(ClosedFormCurve(p.beta, p));
            spec.viable_curve = FrontierCurve(ClosedFormCurve(p.beta_star, p));
            break;
        case PastVariant::Lipschitz: {
            spec.lipschitz = p.lipschitz.value_or(p.min_lipschitz());
            spec.invariant_curve =
                FrontierCurve(build_truncated_curve(p.beta, spec.lipschitz, p.delay, p));
            spec.viable_curve = FrontierCurve(
                build_truncated_curve(p.beta_star, spec.lipschitz, p.delay, p));
            break;
        }
        case PastVariant::DelayFree:
            spec.invariant_curve = FrontierCurve(DelayFreeCurve(p.beta, p));
            spec.viable_curve = FrontierCurve(DelayFreeCurve(p.beta_star, p));
            break;
    }
    return spec;
}

namespace {

const FrontierCurve& curve_of(const RegionSpec& spec, RegionSet set) {
    return set == RegionSet::Invariant ? spec.invariant_curve : spec.viable_curve;
}

}  // namespace

bool region_contains(const RegionSpec& spec, RegionSet set, State x) {
    if (!in_triangle(x)) return false;
    const FrontierCurve& curve = curve_of(spec, set);
    if (x.s <= curve.s_lo()) return x.i <= spec.params.i_max;
    if (x.s <= curve.s_hat()) return x.i <= curve.eval(x.s);
    return false;
}

BoundaryClass classify_boundary(const RegionSpec& spec, State x, double band) {
    if (!region_contains(spec, RegionSet::Viable, x)) return BoundaryClass::Outside;
    const Params& p = spec.params;
    const FrontierCurve& curve = spec.viable_curve;
    const double s_tol = band * curve.s_lo();

    const bool on_cap = x.i >= p.i_max * (1.0 - band) &&
                        x.s >= p.herd_threshold() - s_tol &&
                        x.s <= curve.s_lo() + s_tol;
    if (on_cap) return BoundaryClass::OnS1;

    if (x.s > curve.s_lo() && x.i >= curve.eval(x.s) - band * p.i_max)
        return BoundaryClass::OnS2;
    return BoundaryClass::Interior;
}

double curve_sup_distance(const FrontierCurve& c1, const FrontierCurve& c2, int samples) {
    const double lo = std::max(c1.s_lo(), c2.s_lo());
    const double hi = std::min(c1.s_hat(), c2.s_hat());
    if (!(hi > lo)) throw std::invalid_argument("curve domains do not overlap");
    double sup = 0.0;
    for (int k = 0; k < samples; ++k) {
        const double s = lo + (hi - lo) * static_cast<double>(k) /
                                  static_cast<double>(samples - 1);
        sup = std::max(sup, std::abs(c1.eval(s) - c2.eval(s)));
    }
    return sup;
}

namespace {

/// Past pinned at the ICU cap, dropping to the trial state over the last
/// grid step. The s-component of the past is dynamically irrelevant and is
/// kept inside the triangle.
InitialCondition worst_past(State x, const Params& p, double dt) {
    const double s_past = std::min(x.s, 1.0 - p.i_max);
    SampledHistory h;
    h.t = {-p.delay, -dt, 0.0};
    h.x = {{s_past, p.i_max}, {s_past, p.i_max}, x};
    return h;
}

State sample_in(const RegionSpec& spec, RegionSet set, Rng& rng) {
    const FrontierCurve& curve = curve_of(spec, set);
    for (;;) {
        const State x{rng.uniform(0.0, curve.s_hat()),
                      rng.uniform(0.0, spec.params.i_max)};
        if (region_contains(spec, set, x)) return x;
    }
}

}  // namespace

InvarianceReport invariance_probe(const RegionSpec& spec, int n_trials,
                                  std::uint64_t seed, const Params& p,
                                  const StepConfig& cfg_in, int workers) {
    const StepConfig cfg = [&] {
        StepConfig c = cfg_in;
        c.t_max = 300.0;
        return c.normalized(p);
    }();

    std::vector<double> violation(static_cast<std::size_t>(n_trials), 0.0);
    std::vector<double> when(static_cast<std::size_t>(n_trials), 0.0);

    parallel_for(static_cast<std::size_t>(n_trials), resolve_workers(workers),
                 [&](std::size_t trial) {
                     Rng rng{seed ^ (0x9e3779b97f4a7c15ull * (trial + 1))};
                     rng.uniform();
                     const State x0 = sample_in(spec, RegionSet::Invariant, rng);

                     // Piecewise-constant random control, one-day pieces.
                     std::vector<double> levels(
                         static_cast<std::size_t>(std::ceil(cfg.t_max)) + 1);
                     for (auto& v : levels) v = rng.uniform(p.beta_star, p.beta);
                     auto rule = [&levels](double t, State, double) {
                         return levels[static_cast<std::size_t>(t)];
                     };

                     const Trajectory traj =
                         integrate(worst_past(x0, p, cfg.dt), rule, p, cfg);
                     double worst = -1.0, worst_t = 0.0;
                     for (std::size_t k = 0; k < traj.size(); ++k) {
                         const double v = traj.states[k].i - p.i_max;
                         if (v > worst) {
                             worst = v;
                             worst_t = static_cast<double>(k) * cfg.dt;
                         }
                     }
                     violation[trial] = worst;
                     when[trial] = worst_t;
                 });

    InvarianceReport rep;
    rep.trials = n_trials;
    rep.max_violation = -1.0;
    for (int k = 0; k < n_trials; ++k) {
        if (violation[static_cast<std::size_t>(k)] > rep.max_violation) {
            rep.max_violation = violation[static_cast<std::size_t>(k)];
            rep.worst_time = when[static_cast<std::size_t>(k)];
            rep.worst_trial = k;
        }
    }
    return rep;
}

std::optional<double> maximality_probe(const RegionSpec& spec, double delta,
                                       const Params& p, const StepConfig& cfg_in) {
    if (!(delta >= 0.0)) throw std::invalid_argument("offset must be non-negative");
    const StepConfig cfg = cfg_in.normalized(p);
    const FrontierCurve& curve = spec.invariant_curve;
    const double s0 = 0.5 * (curve.s_lo() + curve.s_hat());

    // Worst admissible delayed value for this past class; re-imposing it at
    // every instant is exactly the escape construction behind maximality.
    auto worst_delayed = [&](double i) {
        switch (spec.variant) {
            case PastVariant::Lipschitz:
                return psi_truncate(i, spec.lipschitz, p.delay, p.i_max);
            case PastVariant::DelayFree:
                return i;
            default:
                return p.i_max;
        }
    };

    const double dt = cfg.dt;
    const double threshold = p.i_max * (1.0 + 1e-9);
    State x{s0, curve.eval(s0) + delta};
    const auto n = static_cast<std::size_t>(std::llround(cfg.t_max / dt));
    for (std::size_t k = 0; k <= n; ++k) {
        if (x.i > threshold) return static_cast<double>(k) * dt;
        auto f = [&](State y) { return rhs_delayed(y, worst_delayed(y.i), p.beta, p); };
        const Derivative k1 = f(x);
        const Derivative k2 = f({x.s + 0.5 * dt * k1.ds, x.i + 0.5 * dt * k1.di});
        const Derivative k3 = f({x.s + 0.5 * dt * k2.ds, x.i + 0.5 * dt * k2.di});
        const Derivative k4 = f({x.s + dt * k3.ds, x.i + dt * k3.di});
        x = {x.s + dt / 6.0 * (k1.ds + 2.0 * k2.ds + 2.0 * k3.ds + k4.ds),
             x.i + dt / 6.0 * (k1.di + 2.0 * k2.di + 2.0 * k3.di + k4.di)};
    }
    return std::nullopt;
}

}  // namespace viadel
