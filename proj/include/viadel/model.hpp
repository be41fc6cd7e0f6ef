#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace viadel {

/// Epidemic and control constants. Rates are per day, populations are
/// fractions of the total.
struct Params {
    double gamma = 0.0714;     // recovery rate
    double beta = 0.5;         // natural transmission rate
    double beta_star = 0.185;  // lowest transmission rate reachable by interventions
    double i_max = 0.021;      // ICU capacity as a fraction of infected
    double delay = 6.0;        // latency between contraction and infectivity, days
    std::optional<double> lipschitz;  // optional bound on the past speed, 1/day

    // Throws std::invalid_argument on the first violated constraint.
    void validate() const;

    // Smallest admissible Lipschitz bound, i_max * max(beta, gamma).
    double min_lipschitz() const { return i_max * std::max(beta, gamma); }

    double herd_threshold() const { return gamma / beta; }            // gamma/beta
    double herd_threshold_star() const { return gamma / beta_star; }  // gamma/beta_star
};

struct State {
    double s = 0.0;  // susceptible fraction
    double i = 0.0;  // infected fraction
};

struct Derivative {
    double ds = 0.0;
    double di = 0.0;
};

/// Vector field of the delayed system. i_del is the infected fraction one
/// delay in the past; the two components sum to -gamma * x.i.
Derivative rhs_delayed(State x, double i_del, double b, const Params& p);

/// Worst admissible past value of i compatible with a lipschitz-bounded
/// history: clamps i + L*h to [-i_max, i_max].
double psi_truncate(double i, double lipschitz, double delay, double i_max);
double psi_truncate(double i, const Params& p);

/// Membership in the triangle {s >= 0, i >= 0, s + i <= 1}, optionally
/// inflated by tol.
bool in_triangle(State x, double tol = 0.0);

/// Membership in the feasible set C: triangle plus the ICU cap i <= i_max.
bool in_C(State x, const Params& p);

// ---------------------------------------------------------------------------
// Initial conditions (histories on [-delay, 0])

/// History frozen at a single point.
struct ConstantHistory {
    State x;
};

/// i decays at the recovery rate going forward: i(t) = i0 * exp(-gamma t).
struct RecoveryHistory {
    double s0 = 0.0;
    double i0 = 0.0;
};

/// i starts at i_max at t = -delay and relaxes exponentially to i0 at t = 0.
struct SurgeHistory {
    double s0 = 0.0;
    double i0 = 0.0;
};

/// Piecewise-linear history through sampled nodes covering [-delay, 0].
struct SampledHistory {
    std::vector<double> t;  // strictly increasing
    std::vector<State> x;
};

using InitialCondition =
    std::variant<ConstantHistory, RecoveryHistory, SurgeHistory, SampledHistory>;

/// Evaluates the history at t in [-delay, 0]. Out-of-range t is a domain
/// error (std::invalid_argument).
State eval_initial(const InitialCondition& ic, double t, const Params& p);

struct AdmissibilityReport {
    bool in_C = false;          // every grid point lies in C
    bool lipschitz_ok = false;  // grid increments within L * dt (true when no L given)
    bool zero_infected = false; // i vanishes on the whole grid
    double max_i = 0.0;
    double max_speed = 0.0;     // largest max-norm increment per unit time
    std::string detail;         // first failed check, empty when admissible
};

/// Checks membership in C and (when the Params carry a Lipschitz bound)
/// the speed bound on a uniform grid of at least `grid` points.
AdmissibilityReport check_admissible(const InitialCondition& ic, const Params& p,
                                     int grid = 1000);

}  // namespace viadel
