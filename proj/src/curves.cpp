#include "viadel/curves.hpp"

#include "viadel/dde.hpp"

#include <cmath>
#include <variant>

namespace viadel {

namespace {

constexpr double kBranchTol = 1e-12;

bool unit_branch(double a, double b) {
    return std::abs(a - b) <= kBranchTol * std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace

double t_cross_closed_form(double b_level, const Params& p) {
    const double bi = b_level * p.i_max;
    if (unit_branch(bi, p.gamma)) return 1.0;
    return std::log(bi / p.gamma) / (bi - p.gamma);
}

double s_hat_closed_form(double b_level, const Params& p) {
    const double bi = b_level * p.i_max;
    const double s_lo = p.gamma / b_level;
    if (unit_branch(bi, p.gamma)) return s_lo * std::exp(bi);
    return s_lo * std::pow(bi / p.gamma, bi / (bi - p.gamma));
}

ClosedFormCurve::ClosedFormCurve(double b_level, const Params& p)
    : b_(b_level), gamma_(p.gamma), i_max_(p.i_max) {
    if (!(b_level > 0.0)) throw std::invalid_argument("curve level must be positive");
    omega_ = gamma_ / (b_ * i_max_);
    unit_omega_ = unit_branch(omega_, 1.0);
    s_lo_ = gamma_ / b_;
    if (unit_omega_) {
        coeff_c1_ = 1.0 + std::log(s_lo_);
    } else {
        coeff_c_ = std::pow(s_lo_, -omega_) * (i_max_ - gamma_ / (b_ * (omega_ - 1.0)));
    }
    s_hat_ = s_hat_closed_form(b_, p);
    t_cross_ = t_cross_closed_form(b_, p);
}

double ClosedFormCurve::raw(double s) const {
    if (unit_omega_) return coeff_c1_ * s - s * std::log(s);
    return coeff_c_ * std::pow(s, omega_) + s / (omega_ - 1.0);
}

double ClosedFormCurve::eval(double s) const {
    const double tol = 1e-9 * std::max(1.0, s_hat_);
    if (s < s_lo_ - tol || s > s_hat_ + tol)
        throw std::invalid_argument("curve evaluated outside [gamma/b, s_hat]");
    return std::clamp(raw(std::clamp(s, s_lo_, s_hat_)), 0.0, i_max_);
}

DelayFreeCurve::DelayFreeCurve(double b_level, const Params& p)
    : b_(b_level), gamma_(p.gamma), i_max_(p.i_max), s_lo_(p.gamma / b_level) {
    if (!(b_level > 0.0)) throw std::invalid_argument("curve level must be positive");
    // Root of the logarithmic branch, bracketed then bisected.
    auto f = [&](double s) {
        return s_lo_ + i_max_ - s + s_lo_ * std::log(s / s_lo_);
    };
    double lo = s_lo_, hi = 2.0 * s_lo_;
    while (f(hi) > 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e6) throw SolverError("delay-free frontier root not bracketed");
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    s_hat_ = 0.5 * (lo + hi);
}

double DelayFreeCurve::eval(double s) const {
    const double tol = 1e-9 * std::max(1.0, s_hat_);
    if (s < -tol || s > s_hat_ + tol)
        throw std::invalid_argument("curve evaluated outside [0, s_hat]");
    if (s <= s_lo_) return i_max_;
    const double v = s_lo_ + i_max_ - s + s_lo_ * std::log(s / s_lo_);
    return std::clamp(v, 0.0, i_max_);
}

// ---------------------------------------------------------------------------
// Truncated worst-case curve

namespace {

struct Arc {
    std::vector<double> s, i, ds, di;
    double dt = 0;

    double seval(double t, bool want_i) const {
        const double kr = std::round(t / dt);
        const auto last = static_cast<double>(s.size() - 1);
        if (std::abs(t - kr * dt) <= 1e-12 * dt && kr >= 0 && kr <= last) {
            const auto k = static_cast<std::size_t>(kr);
            return want_i ? i[k] : s[k];
        }
        auto k = static_cast<std::size_t>(t / dt);
        k = std::min(k, s.size() - 2);
        const double th = t / dt - static_cast<double>(k);
        const double h00 = (1.0 + 2.0 * th) * (1.0 - th) * (1.0 - th);
        const double h10 = th * (1.0 - th) * (1.0 - th);
        const double h01 = th * th * (3.0 - 2.0 * th);
        const double h11 = th * th * (th - 1.0);
        if (want_i)
            return h00 * i[k] + h01 * i[k + 1] + dt * (h10 * di[k] + h11 * di[k + 1]);
        return h00 * s[k] + h01 * s[k + 1] + dt * (h10 * ds[k] + h11 * ds[k + 1]);
    }
};

}  // namespace

TabulatedCurve build_truncated_curve(double b_level, double lipschitz, double delay,
                                     const Params& p, int n_nodes) {
    p.validate();
    if (!(b_level > 0.0)) throw std::invalid_argument("curve level must be positive");
    if (!(delay > 0.0)) throw std::invalid_argument("delay must be positive");
    if (!(lipschitz >= p.min_lipschitz() * (1.0 - 1e-12)))
        throw std::invalid_argument("lipschitz bound below i_max*max(beta,gamma)");
    if (n_nodes < 64) throw std::invalid_argument("curve needs at least 64 nodes");

    const double t_ref = t_cross_closed_form(b_level, p);
    const double t_abort = 10.0 * t_ref;
    const double dt = t_ref / 4096.0;

    auto field = [&](double s, double i) -> Derivative {
        const double flow = b_level * s * psi_truncate(i, lipschitz, delay, p.i_max);
        return {flow, -flow + p.gamma * i};
    };

    Arc arc;
    arc.dt = dt;
    double s = p.gamma / b_level, i = p.i_max;
    {
        const Derivative d = field(s, i);
        arc.s.push_back(s);
        arc.i.push_back(i);
        arc.ds.push_back(d.ds);
        arc.di.push_back(d.di);
    }
    bool bracketed = false;
    while (!bracketed) {
        if (arc.dt * static_cast<double>(arc.s.size()) > t_abort)
            throw SolverError("truncated frontier: i = 0 crossing not reached before 10 "
                              "closed-form crossing times");
        const Derivative k1 = field(s, i);
        const Derivative k2 = field(s + 0.5 * dt * k1.ds, i + 0.5 * dt * k1.di);
        const Derivative k3 = field(s + 0.5 * dt * k2.ds, i + 0.5 * dt * k2.di);
        const Derivative k4 = field(s + dt * k3.ds, i + dt * k3.di);
        s += dt / 6.0 * (k1.ds + 2.0 * k2.ds + 2.0 * k3.ds + k4.ds);
        i += dt / 6.0 * (k1.di + 2.0 * k2.di + 2.0 * k3.di + k4.di);
        const Derivative d = field(s, i);
        arc.s.push_back(s);
        arc.i.push_back(i);
        arc.ds.push_back(d.ds);
        arc.di.push_back(d.di);
        bracketed = i <= 0.0;
    }

    // Localize the crossing on the dense output.
    double lo = arc.dt * static_cast<double>(arc.s.size() - 2);
    double hi = arc.dt * static_cast<double>(arc.s.size() - 1);
    double t_cross = hi;
    for (int it = 0; it < 200; ++it) {
        t_cross = 0.5 * (lo + hi);
        const double im = arc.seval(t_cross, true);
        if (std::abs(im) <= 1e-12 && it > 40) break;
        (im > 0.0 ? lo : hi) = t_cross;
    }
    if (std::abs(arc.seval(t_cross, true)) > 1e-12)
        throw SolverError("truncated frontier: crossing not localized to 1e-12");

    TabulatedCurve out;
    out.b_ = b_level;
    out.i_max_ = p.i_max;
    out.t_cross_ = t_cross;

    const double s_lo = p.gamma / b_level;
    const double s_hat = arc.seval(t_cross, false);
    out.s_nodes.resize(n_nodes);
    out.i_values.resize(n_nodes);
    out.slopes.resize(n_nodes);

    // s(t) is strictly increasing; invert it per target abscissa.
    auto time_of_s = [&](double target) {
        double a = 0.0, b = t_cross;
        for (int it = 0; it < 120 && (b - a) > 1e-15 * std::max(t_cross, 1.0); ++it) {
            const double mid = 0.5 * (a + b);
            (arc.seval(mid, false) < target ? a : b) = mid;
        }
        return 0.5 * (a + b);
    };

    for (int j = 0; j < n_nodes; ++j) {
        const double w = static_cast<double>(j) / static_cast<double>(n_nodes - 1);
        const double sj = s_lo + w * (s_hat - s_lo);
        out.s_nodes[j] = sj;
        if (j == 0) {
            out.i_values[j] = p.i_max;
        } else if (j == n_nodes - 1) {
            out.i_values[j] = std::max(0.0, arc.seval(t_cross, true));
        } else {
            out.i_values[j] = arc.seval(time_of_s(sj), true);
        }
        const double psi = psi_truncate(out.i_values[j], lipschitz, delay, p.i_max);
        out.slopes[j] = -1.0 + p.gamma * out.i_values[j] / (b_level * sj * psi);
    }

    // Monotonicity limiting: cap each slope at three times the smaller
    // adjacent secant so the Hermite stays decreasing between nodes.
    const double ds = (s_hat - s_lo) / static_cast<double>(n_nodes - 1);
    auto secant = [&](int j) { return (out.i_values[j + 1] - out.i_values[j]) / ds; };
    for (int j = 0; j < n_nodes; ++j) {
        double limit = 0.0;
        if (j == 0)
            limit = 3.0 * std::abs(secant(0));
        else if (j == n_nodes - 1)
            limit = 3.0 * std::abs(secant(n_nodes - 2));
        else
            limit = 3.0 * std::min(std::abs(secant(j - 1)), std::abs(secant(j)));
        out.slopes[j] = -std::min(std::abs(out.slopes[j]), limit);
    }
    return out;
}

double TabulatedCurve::eval(double s) const {
    const double lo = s_nodes.front(), hi = s_nodes.back();
    const double tol = 1e-9 * std::max(1.0, hi);
    if (s < lo - tol || s > hi + tol)
        throw std::invalid_argument("curve evaluated outside [gamma/b, s_hat]");
    s = std::clamp(s, lo, hi);
    const auto n = s_nodes.size();
    const double ds = (hi - lo) / static_cast<double>(n - 1);
    const double kr = std::round((s - lo) / ds);
    if (std::abs(s - (lo + kr * ds)) <= 1e-12 * std::max(1.0, hi))
        return i_values[static_cast<std::size_t>(kr)];
    auto k = static_cast<std::size_t>((s - lo) / ds);
    k = std::min(k, n - 2);
    const double th = (s - (lo + static_cast<double>(k) * ds)) / ds;
    const double h00 = (1.0 + 2.0 * th) * (1.0 - th) * (1.0 - th);
    const double h10 = th * (1.0 - th) * (1.0 - th);
    const double h01 = th * th * (3.0 - 2.0 * th);
    const double h11 = th * th * (th - 1.0);
    const double v = h00 * i_values[k] + h01 * i_values[k + 1] +
                     ds * (h10 * slopes[k] + h11 * slopes[k + 1]);
    return std::clamp(v, 0.0, i_max_);
}

// ---------------------------------------------------------------------------
// FrontierCurve handle

struct FrontierCurve::Impl {
    std::variant<ClosedFormCurve, DelayFreeCurve, TabulatedCurve> curve;
};

FrontierCurve::FrontierCurve(ClosedFormCurve c)
    : impl_(std::make_shared<Impl>(Impl{std::move(c)})) {}
FrontierCurve::FrontierCurve(DelayFreeCurve c)
    : impl_(std::make_shared<Impl>(Impl{std::move(c)})) {}
FrontierCurve::FrontierCurve(TabulatedCurve c)
    : impl_(std::make_shared<Impl>(Impl{std::move(c)})) {}

double FrontierCurve::s_lo() const {
    return std::visit([](const auto& c) { return c.s_lo(); }, impl_->curve);
}

double FrontierCurve::s_hat() const {
    return std::visit([](const auto& c) { return c.s_hat(); }, impl_->curve);
}

double FrontierCurve::eval(double s) const {
    return std::visit([&](const auto& c) { return c.eval(s); }, impl_->curve);
}

double FrontierCurve::envelope(double s) const {
    if (s <= s_lo())
        return std::visit([](const auto& c) { return c.eval(c.s_lo()); }, impl_->curve);
    return eval(s);
}

}  // namespace viadel
