#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "viadel/control.hpp"
#include "viadel/parallel.hpp"

#include <cmath>

using namespace viadel;

namespace {

Params paper_params() {
    Params p;
    p.gamma = 0.0714;
    p.beta = 0.5;
    p.beta_star = 0.185;
    p.i_max = 0.021;
    p.delay = 6.0;
    return p;
}

StepConfig default_step() {
    StepConfig cfg;
    cfg.dt = 0.01;
    cfg.t_max = 1000.0;
    return cfg;
}

}  // namespace

TEST_CASE("greedy rate by boundary class") {
    Params p = paper_params();
    const PolicyConfig policy = make_policy(PolicyVariant::ContinuousPast, p);

    SUBCASE("interior runs free") {
        CHECK(greedy_transmission({0.1, 0.001}, 0.01, BoundaryClass::Interior, policy,
                                  p) == p.beta);
    }

    SUBCASE("cap segment") {
        const double b =
            greedy_transmission({0.2, p.i_max}, 0.021, BoundaryClass::OnS1, policy, p);
        CHECK(b == doctest::Approx(0.357).epsilon(1e-12));
    }

    SUBCASE("zero delayed value lifts the caps") {
        CHECK(greedy_transmission({0.2, p.i_max}, 0.0, BoundaryClass::OnS1, policy, p) ==
              p.beta);
        const double s2 = policy.region.viable_curve.eval(0.42);
        CHECK(greedy_transmission({0.42, s2}, 0.0, BoundaryClass::OnS2, policy, p) ==
              p.beta);
    }

    SUBCASE("frontier cap clamps at beta_star") {
        // Raw value 0.185*0.015/0.021 = 0.1321... is below the admissible range.
        const double b =
            greedy_transmission({0.42, 0.015}, 0.021, BoundaryClass::OnS2, policy, p);
        CHECK(b == p.beta_star);
    }

    SUBCASE("corner caps agree") {
        const State corner{p.herd_threshold_star(), p.i_max};
        const double b1 =
            greedy_transmission(corner, 0.015, BoundaryClass::OnS1, policy, p);
        const double b2 =
            greedy_transmission(corner, 0.015, BoundaryClass::OnS2, policy, p);
        CHECK(std::abs(b1 - b2) <= 1e-12);
        CHECK(b1 == doctest::Approx(p.beta_star * p.i_max / 0.015).epsilon(1e-12));
    }

    SUBCASE("outside is a contract violation") {
        CHECK_THROWS_AS(greedy_transmission({0.42, 0.05}, 0.01, BoundaryClass::Outside,
                                            policy, p),
                        std::logic_error);
    }

    SUBCASE("policy range over random states") {
        Rng rng{3};
        for (int k = 0; k < 20000; ++k) {
            const State x{rng.uniform(0.0, 0.45), rng.uniform(0.0, p.i_max)};
            const BoundaryClass cls = classify_boundary(policy.region, x, policy.band);
            if (cls == BoundaryClass::Outside) continue;
            const double b =
                greedy_transmission(x, rng.uniform(0.0, p.i_max), cls, policy, p);
            REQUIRE(b >= p.beta_star);
            REQUIRE(b <= p.beta);
        }
    }
}

TEST_CASE("lipschitz variant is never stricter on the frontier") {
    Params p = paper_params();
    p.delay = 1.0;  // L*h = 0.0105 < i_max keeps the truncation active
    const PolicyConfig cont = make_policy(PolicyVariant::ContinuousPast, p);
    const PolicyConfig lip = make_policy(PolicyVariant::LipschitzPast, p);

    Rng rng{17};
    for (int k = 0; k < 2000; ++k) {
        // States on the continuous-past frontier, where both S2 caps engage.
        const double s = rng.uniform(cont.region.viable_curve.s_lo() + 1e-6,
                                     cont.region.viable_curve.s_hat());
        const State x{s, cont.region.viable_curve.eval(s)};
        const double i_del = rng.uniform(1e-4, p.i_max);
        const double bc = greedy_transmission(x, i_del, BoundaryClass::OnS2, cont, p);
        const double bl = greedy_transmission(x, i_del, BoundaryClass::OnS2, lip, p);
        REQUIRE(bl >= bc - 1e-15);
    }
}

TEST_CASE("scenario costs land on the reference values") {
    Params p = paper_params();
    const PolicyConfig policy = make_policy(PolicyVariant::ContinuousPast, p);
    const StepConfig cfg = default_step();

    SUBCASE("constant history") {
        const ClosedLoopResult r =
            run_greedy(ConstantHistory{{0.45, 0.001}}, policy, p, cfg);
        CHECK(r.J == doctest::Approx(38.766).epsilon(0.02));
        CHECK(r.constraint_ok);
        CHECK(r.reached_herd);
        CHECK(r.max_infected <= p.i_max * (1.0 + policy.band));
        CHECK(r.t_lock > 0.0);
        CHECK(r.t_lock < r.t_end);
        // After the lock the control stays at beta.
        const auto lock = static_cast<std::size_t>(std::llround(r.t_lock / cfg.dt));
        for (std::size_t k = lock + 1; k < r.b.size(); ++k)
            REQUIRE(r.b[k] == p.beta);
        // Greedy cannot beat the recorded optimum by more than slack.
        CHECK(r.J >= 38.5263 - 0.2);
    }

    SUBCASE("recovery history") {
        const ClosedLoopResult r =
            run_greedy(RecoveryHistory{0.45, 0.001}, policy, p, cfg);
        CHECK(r.J == doctest::Approx(38.799).epsilon(0.02));
        CHECK(r.constraint_ok);
    }

    SUBCASE("surge history") {
        const ClosedLoopResult r = run_greedy(SurgeHistory{0.45, 0.001}, policy, p, cfg);
        CHECK(r.J == doctest::Approx(41.004).epsilon(0.025));
        CHECK(r.constraint_ok);
        // The worst-case-like past forces the lockdown rate early on.
        CHECK(r.clamp_events > 0);
    }
}

TEST_CASE("coarser sampling survives the band crossing") {
    // One 0.02-day step can jump the whole activation band during the steep
    // growth phase; the caps must still catch the state and recover.
    Params p = paper_params();
    const PolicyConfig policy = make_policy(PolicyVariant::ContinuousPast, p);
    for (const double dt : {0.02, 0.05}) {
        StepConfig cfg;
        cfg.dt = dt;
        cfg.t_max = 1000.0;
        const ClosedLoopResult r =
            run_greedy(RecoveryHistory{0.45, 0.001}, policy, p, cfg);
        // The ICU excess can exceed the band at coarse steps (reported via
        // constraint_ok) but never the band plus one step of maximal drift.
        CHECK(r.max_infected <=
              p.i_max * (1.0 + policy.band) + p.min_lipschitz() * dt);
        CHECK(r.J == doctest::Approx(38.8).epsilon(0.02));
        if (dt <= 0.02) CHECK(r.constraint_ok);
    }
}

TEST_CASE("lipschitz-variant closed loop stays viable") {
    Params p = paper_params();
    p.delay = 1.0;  // truncation active
    const PolicyConfig policy = make_policy(PolicyVariant::LipschitzPast, p);
    StepConfig cfg;
    cfg.dt = 0.01;
    cfg.t_max = 1000.0;
    const ClosedLoopResult r = run_greedy(ConstantHistory{{0.45, 0.001}}, policy, p, cfg);
    CHECK(r.constraint_ok);
    CHECK(r.reached_herd);
    CHECK(r.J > 0.0);
    CHECK(std::isfinite(r.J));
    // The same start under the continuous-past policy pays at least as much:
    // the wider frontier lets the Lipschitz controller act later.
    const PolicyConfig cont = make_policy(PolicyVariant::ContinuousPast, p);
    const ClosedLoopResult rc =
        run_greedy(ConstantHistory{{0.45, 0.001}}, cont, p, cfg);
    CHECK(rc.constraint_ok);
    CHECK(r.J <= rc.J + 0.5);
}

TEST_CASE("run rejections") {
    Params p = paper_params();
    const PolicyConfig policy = make_policy(PolicyVariant::ContinuousPast, p);
    const StepConfig cfg = default_step();

    // Trace outside the viable set.
    CHECK_THROWS_AS(run_greedy(ConstantHistory{{0.48, 0.005}}, policy, p, cfg),
                    std::invalid_argument);
    // History above the cap.
    CHECK_THROWS_AS(run_greedy(ConstantHistory{{0.3, 0.03}}, policy, p, cfg),
                    std::invalid_argument);
    // The surge history is too fast for the Lipschitz class.
    const PolicyConfig lip = make_policy(PolicyVariant::LipschitzPast, p);
    CHECK_THROWS_AS(run_greedy(SurgeHistory{0.45, 0.001}, lip, p, cfg),
                    std::invalid_argument);
}

TEST_CASE("degenerate zero history is accepted and flagged") {
    Params p = paper_params();
    const PolicyConfig policy = make_policy(PolicyVariant::ContinuousPast, p);
    StepConfig cfg = default_step();
    cfg.dt = 0.05;
    cfg.t_max = 20.0;
    const ClosedLoopResult r = run_greedy(ConstantHistory{{0.1, 0.0}}, policy, p, cfg);
    CHECK(r.zero_infected);
    CHECK(r.J == 0.0);
    CHECK(r.s_inf == 0.1);
}

TEST_CASE("cost quadrature") {
    CostSpec cost;
    const double dt = 0.01;

    SUBCASE("zero effort costs nothing") {
        std::vector<double> u(1000, 0.0);
        CHECK(accumulate_cost(u, dt, cost) == 0.0);
    }

    SUBCASE("rectangle") {
        // u = beta - beta_star over [0, 10], zero afterwards.
        std::vector<double> u(2001, 0.0);
        for (std::size_t k = 0; k <= 1000; ++k) u[k] = 0.315;
        CHECK(accumulate_cost(u, dt, cost) == doctest::Approx(3.15).epsilon(1e-3));
    }

    SUBCASE("negative effort rejected") {
        std::vector<double> u = {0.0, -1e-6, 0.0};
        CHECK_THROWS_AS(accumulate_cost(u, dt, cost), std::invalid_argument);
    }

    SUBCASE("cost spec validation") {
        CostSpec bad;
        bad.g = [](double u) { return u - 0.5; };  // g(0) != 0
        CHECK_THROWS_AS(bad.validate(0.315), std::invalid_argument);
        CostSpec dec;
        dec.g = [](double u) { return -u; };
        CHECK_THROWS_AS(dec.validate(0.315), std::invalid_argument);
        CostSpec quad;
        quad.g = [](double u) { return u * u; };
        CHECK_NOTHROW(quad.validate(0.315));
    }
}

TEST_CASE("terminal diagnostics") {
    Params p = paper_params();
    const PolicyConfig policy = make_policy(PolicyVariant::ContinuousPast, p);
    const StepConfig cfg = default_step();

    SUBCASE("greedy run satisfies the limit relation") {
        const ClosedLoopResult r =
            run_greedy(ConstantHistory{{0.45, 0.001}}, policy, p, cfg);
        const AsymptoticsReport a = asymptotics(r, p);
        CHECK(a.below_herd);
        CHECK(a.s_inf < p.herd_threshold());
        CHECK(a.residual_checked);
        CHECK(a.residual_rel < 1e-2);
    }

    SUBCASE("permanent lockdown settles below its own threshold") {
        // Open loop at the lowest admissible rate: the susceptibles end
        // strictly below gamma/beta_star.
        StepConfig cfg2 = cfg;
        cfg2.t_max = 2000.0;
        const Trajectory traj = integrate(
            ConstantHistory{{0.45, 0.001}},
            [&](double, State, double) { return p.beta_star; }, p, cfg2,
            [&](double, State x) { return x.i < 1e-9 && x.s < 0.45; });
        CHECK(traj.states.back().s < p.herd_threshold_star());
    }

    SUBCASE("frozen run skips the relation") {
        StepConfig cfg2 = cfg;
        cfg2.t_max = 20.0;
        const ClosedLoopResult r =
            run_greedy(ConstantHistory{{0.1, 0.0}}, policy, p, cfg2);
        const AsymptoticsReport a = asymptotics(r, p);
        CHECK_FALSE(a.residual_checked);
        CHECK(a.s_inf == 0.1);
    }
}

TEST_CASE("sliding-window decrease below the herd threshold") {
    Params p = paper_params();
    StepConfig cfg;
    cfg.dt = 0.05;
    cfg.t_max = 100.0;

    SUBCASE("random admissible runs never break the window bound") {
        Rng rng{31};
        for (int run = 0; run < 10; ++run) {
            const double s0 = rng.uniform(0.01, p.herd_threshold());
            SampledHistory h;
            h.t = {-p.delay, -3.0, 0.0};
            h.x = {{s0, rng.uniform(0.0, p.i_max)},
                   {s0, rng.uniform(0.0, p.i_max)},
                   {s0, rng.uniform(0.0, p.i_max)}};
            std::vector<double> levels(101);
            for (auto& v : levels) v = rng.uniform(p.beta_star, p.beta);
            const Trajectory traj = integrate(
                h,
                [&](double t, State, double) {
                    return levels[static_cast<std::size_t>(t)];
                },
                p, cfg);
            REQUIRE(weak_monotone_violation(traj, p) <= 1e-9);
        }
    }

    SUBCASE("constant zero infected has zero violation") {
        const Trajectory traj = integrate(
            ConstantHistory{{0.1, 0.0}},
            [&](double, State, double) { return p.beta; }, p, cfg);
        CHECK(weak_monotone_violation(traj, p) == 0.0);
    }

    SUBCASE("runs above the threshold are rejected") {
        const Trajectory traj = integrate(
            ConstantHistory{{0.45, 0.001}},
            [&](double, State, double) { return p.beta; }, p, cfg);
        CHECK_THROWS_AS(weak_monotone_violation(traj, p), std::invalid_argument);
    }
}
