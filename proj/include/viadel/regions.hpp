#pragma once

#include "viadel/curves.hpp"
#include "viadel/dde.hpp"

#include <cstdint>
#include <optional>

namespace viadel {

enum class PastVariant { Continuous, Lipschitz, DelayFree };

/// Region description: the pair of frontier curves matching one past class.
/// The invariant family (level beta) bounds the all-controls-safe set; the
/// viable family (level beta_star) bounds the controllable-safe set.
struct RegionSpec {
    PastVariant variant = PastVariant::Continuous;
    double lipschitz = 0.0;  // used by the Lipschitz variant
    FrontierCurve invariant_curve;
    FrontierCurve viable_curve;
    Params params;
};

/// Builds the curves for the requested past class. The Lipschitz variant
/// takes the bound from p.lipschitz, defaulting to the model minimum.
RegionSpec make_region(PastVariant variant, const Params& p);

enum class RegionSet { Invariant, Viable };

/// Closed-set membership: the rectangle up to gamma/b plus the hypograph of
/// the frontier curve, intersected with the physical triangle.
bool region_contains(const RegionSpec& spec, RegionSet set, State x);

enum class BoundaryClass { Interior, OnS1, OnS2, Outside };

/// Classifies a state of the viable set against the two control-active
/// boundary pieces: the ICU cap segment (S1) and the viable frontier curve
/// (S2). band is relative to i_max; the corner where the pieces meet
/// reports OnS1.
BoundaryClass classify_boundary(const RegionSpec& spec, State x, double band);

struct InvarianceReport {
    int trials = 0;
    double max_violation = 0.0;  // max over trials of max_t i(t) - i_max
    double worst_time = 0.0;
    int worst_trial = -1;
};

/// Draws trial starts uniformly in the invariant set with the worst
/// admissible past (i pinned at i_max), applies piecewise-constant random
/// controls with one-day pieces, and integrates 300 days per trial.
InvarianceReport invariance_probe(const RegionSpec& spec, int n_trials,
                                  std::uint64_t seed, const Params& p,
                                  const StepConfig& cfg, int workers = 0);

/// Escape witness for points above the invariant frontier: starts offset
/// delta above the curve at the domain midpoint, holds the delayed term at
/// the worst admissible value (the construction that proves maximality) with
/// b = beta, and returns the first grid time with i beyond i_max, if any,
/// before cfg.t_max.
std::optional<double> maximality_probe(const RegionSpec& spec, double delta,
                                       const Params& p, const StepConfig& cfg);

/// Max vertical gap between two frontier curves over their common domain,
/// sampled uniformly. Throws when the domains do not overlap.
double curve_sup_distance(const FrontierCurve& c1, const FrontierCurve& c2,
                          int samples = 4096);

}  // namespace viadel
