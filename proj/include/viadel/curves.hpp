#pragma once

#include "viadel/model.hpp"

#include <memory>

namespace viadel {

/// Closed-form frontier i = Gamma(s) generated by the backward worst-case
/// flow with the delayed term pinned at i_max. Defined on [gamma/b, s_hat],
/// equal to i_max at the left end and 0 at the right end.
class ClosedFormCurve {
  public:
    ClosedFormCurve(double b_level, const Params& p);

    double b_level() const { return b_; }
    double s_lo() const { return s_lo_; }
    double s_hat() const { return s_hat_; }
    double t_cross() const { return t_cross_; }
    double omega() const { return omega_; }

    /// Value clamped to [0, i_max]; s outside the domain is an error.
    double eval(double s) const;

    /// Unclamped closed form, for identity checks.
    double raw(double s) const;

  private:
    double b_ = 0, gamma_ = 0, i_max_ = 0;
    double omega_ = 0, coeff_c_ = 0, coeff_c1_ = 0;
    bool unit_omega_ = false;
    double s_lo_ = 0, s_hat_ = 0, t_cross_ = 0;
};

/// Right endpoint of the closed-form frontier.
double s_hat_closed_form(double b_level, const Params& p);

/// Time at which the generating backward flow crosses i = 0.
double t_cross_closed_form(double b_level, const Params& p);

/// Delay-free frontier: flat at i_max up to gamma/b, then the logarithmic
/// branch down to its root s_hat.
class DelayFreeCurve {
  public:
    DelayFreeCurve(double b_level, const Params& p);

    double b_level() const { return b_; }
    double s_lo() const { return s_lo_; }
    double s_hat() const { return s_hat_; }

    /// Defined on [0, s_hat]; clamped to [0, i_max].
    double eval(double s) const;

  private:
    double b_ = 0, gamma_ = 0, i_max_ = 0, s_lo_ = 0, s_hat_ = 0;
};

/// Tabulated frontier from the psi-truncated worst-case flow, sampled on a
/// uniform s-grid with monotone Hermite evaluation.
class TabulatedCurve {
  public:
    double b_level() const { return b_; }
    double s_lo() const { return s_nodes.front(); }
    double s_hat() const { return s_nodes.back(); }
    double t_cross() const { return t_cross_; }

    /// Monotone cubic Hermite on the table, clamped to [0, i_max]; exact at
    /// nodes; s outside the domain is an error.
    double eval(double s) const;

    std::vector<double> s_nodes;   // uniform, increasing
    std::vector<double> i_values;  // strictly decreasing, i_max down to ~0
    std::vector<double> slopes;    // di/ds after monotonicity limiting

  private:
    friend TabulatedCurve build_truncated_curve(double, double, double, const Params&, int);
    double b_ = 0, i_max_ = 0, t_cross_ = 0;
};

/// Integrates the truncated worst-case system from (gamma/b, i_max) until
/// the i = 0 crossing (localized by bisection to |i| <= 1e-12) and resamples
/// the arc on n_nodes uniform s-values. Requires lipschitz >= the model
/// minimum. Fails with SolverError if the crossing is not bracketed before
/// ten closed-form crossing times.
TabulatedCurve build_truncated_curve(double b_level, double lipschitz, double delay,
                                     const Params& p, int n_nodes = 2048);

/// Shared handle over the three curve families.
class FrontierCurve {
  public:
    FrontierCurve() = default;
    FrontierCurve(ClosedFormCurve c);
    FrontierCurve(DelayFreeCurve c);
    FrontierCurve(TabulatedCurve c);

    double s_lo() const;
    double s_hat() const;
    double eval(double s) const;

    /// eval extended flat at i_max below s_lo (the rectangle cap).
    double envelope(double s) const;

  private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

}  // namespace viadel
