#include "viadel/model.hpp"

#include <cmath>
#include <limits>

namespace viadel {

void Params::validate() const {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("gamma must lie in (0,1)");
    if (!(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("beta must lie in (0,1)");
    if (!(beta_star > 0.0 && beta_star <= beta))
        throw std::invalid_argument("beta_star must lie in (0, beta]");
    if (!(i_max > 0.0 && i_max <= 1.0))
        throw std::invalid_argument("i_max must lie in (0,1]");
    if (!(delay > 0.0))
        throw std::invalid_argument("delay must be positive");
    if (lipschitz && !(*lipschitz >= min_lipschitz()))
        throw std::invalid_argument("lipschitz bound below i_max*max(beta,gamma)");
}

Derivative rhs_delayed(State x, double i_del, double b, const Params& p) {
    const double flux = b * x.s * i_del;
    return {-flux, flux - p.gamma * x.i};
}

double psi_truncate(double i, double lipschitz, double delay, double i_max) {
    const double lh = lipschitz * delay;
    if (i <= -i_max - lh) return -i_max;
    if (i <= i_max - lh) return i + lh;
    return i_max;
}

double psi_truncate(double i, const Params& p) {
    if (!p.lipschitz)
        throw std::invalid_argument("psi_truncate requires a lipschitz bound");
    return psi_truncate(i, *p.lipschitz, p.delay, p.i_max);
}

bool in_triangle(State x, double tol) {
    return x.s >= -tol && x.i >= -tol && x.s + x.i <= 1.0 + tol;
}

bool in_C(State x, const Params& p) {
    return in_triangle(x) && x.i <= p.i_max;
}

namespace {

State eval_sampled(const SampledHistory& h, double t) {
    if (h.t.size() < 2 || h.t.size() != h.x.size())
        throw std::invalid_argument("sampled history needs matching t/x nodes (>= 2)");
    if (t <= h.t.front()) return h.x.front();
    if (t >= h.t.back()) return h.x.back();
    const auto it = std::upper_bound(h.t.begin(), h.t.end(), t);
    const std::size_t k = static_cast<std::size_t>(it - h.t.begin()) - 1;
    const double span = h.t[k + 1] - h.t[k];
    const double w = span > 0.0 ? (t - h.t[k]) / span : 0.0;
    return {h.x[k].s + w * (h.x[k + 1].s - h.x[k].s),
            h.x[k].i + w * (h.x[k + 1].i - h.x[k].i)};
}

}  // namespace

State eval_initial(const InitialCondition& ic, double t, const Params& p) {
    const double slack = 1e-9 * std::max(1.0, p.delay);
    if (t < -p.delay - slack || t > slack)
        throw std::invalid_argument("history evaluated outside [-delay, 0]");
    t = std::clamp(t, -p.delay, 0.0);
    return std::visit(
        [&](const auto& h) -> State {
            using T = std::decay_t<decltype(h)>;
            if constexpr (std::is_same_v<T, ConstantHistory>) {
                return h.x;
            } else if constexpr (std::is_same_v<T, RecoveryHistory>) {
                return {h.s0, h.i0 * std::exp(-p.gamma * t)};
            } else if constexpr (std::is_same_v<T, SurgeHistory>) {
                const double gain = (p.i_max - h.i0) / (1.0 - std::exp(-5.0 * p.delay));
                return {h.s0, h.i0 + gain * (1.0 - std::exp(5.0 * t))};
            } else {
                return eval_sampled(h, t);
            }
        },
        ic);
}

AdmissibilityReport check_admissible(const InitialCondition& ic, const Params& p,
                                     int grid) {
    grid = std::max(grid, 1000);
    const double lim = p.lipschitz.value_or(std::numeric_limits<double>::infinity());
    const double dt = p.delay / grid;
    const double slack = 1e-12;  // absorbs rounding in the history formulas

    AdmissibilityReport rep;
    rep.in_C = true;
    rep.lipschitz_ok = true;

    State prev{};
    for (int k = 0; k <= grid; ++k) {
        const double t = -p.delay + k * dt;
        const State x = eval_initial(ic, t, p);
        rep.max_i = std::max(rep.max_i, x.i);
        const bool ok = x.s >= -slack && x.i >= -slack && x.s + x.i <= 1.0 + slack &&
                        x.i <= p.i_max + slack;
        if (!ok && rep.in_C) {
            rep.in_C = false;
            rep.detail = "history leaves C at t = " + std::to_string(t);
        }
        if (k > 0) {
            const double speed =
                std::max(std::abs(x.s - prev.s), std::abs(x.i - prev.i)) / dt;
            rep.max_speed = std::max(rep.max_speed, speed);
            if (speed > lim * (1.0 + 1e-9) && rep.lipschitz_ok) {
                rep.lipschitz_ok = false;
                if (rep.detail.empty())
                    rep.detail = "history exceeds the speed bound at t = " + std::to_string(t);
            }
        }
        prev = x;
    }
    rep.zero_infected = rep.max_i <= 0.0;
    return rep;
}

}  // namespace viadel
