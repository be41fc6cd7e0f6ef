#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "viadel/model.hpp"
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

double ulp_of(double x) {
    const double ax = std::abs(x);
    return std::nextafter(ax, std::numeric_limits<double>::infinity()) - ax;
}

}  // namespace

TEST_CASE("rhs matches direct substitution") {
    Params p = paper_params();

    const Derivative d1 = rhs_delayed({0.4, 0.01}, 0.02, 0.5, p);
    CHECK(d1.ds == doctest::Approx(-0.004).epsilon(1e-14));
    CHECK(d1.di == doctest::Approx(0.003286).epsilon(1e-14));

    const Derivative d2 = rhs_delayed({0.45, 0.001}, 0.001, 0.5, p);
    CHECK(d2.ds == doctest::Approx(-2.25e-4).epsilon(1e-14));
    CHECK(d2.di == doctest::Approx(2.25e-4 - 7.14e-5).epsilon(1e-12));

    // No delayed infection: s frozen, i decays.
    const Derivative d3 = rhs_delayed({0.3, 0.02}, 0.0, 0.33, p);
    CHECK(d3.ds == 0.0);
    CHECK(d3.di == doctest::Approx(-p.gamma * 0.02).epsilon(1e-15));
}

TEST_CASE("rhs components sum to the recovery drain") {
    Params p = paper_params();
    Rng rng{42};
    for (int k = 0; k < 100000; ++k) {
        const State x{rng.uniform(0.0, 1.0), rng.uniform(0.0, 0.5)};
        const double i_del = rng.uniform(0.0, 0.5);
        const double b = rng.uniform(p.beta_star, p.beta);
        const Derivative d = rhs_delayed(x, i_del, b, p);
        const double want = -p.gamma * x.i;
        const double tol = ulp_of(std::max(std::abs(d.ds), std::abs(d.di)));
        REQUIRE(std::abs((d.ds + d.di) - want) <= tol);
    }
}

TEST_CASE("psi truncation branches") {
    // i_max = 0.021, L = 0.01, h = 0.5 so L*h = 0.005.
    CHECK(psi_truncate(0.010, 0.01, 0.5, 0.021) == doctest::Approx(0.015).epsilon(1e-15));
    CHECK(psi_truncate(0.020, 0.01, 0.5, 0.021) == 0.021);
    CHECK(psi_truncate(-0.030, 0.01, 0.5, 0.021) == -0.021);
}

TEST_CASE("psi is monotone, 1-Lipschitz, and dominates i on [0, i_max]") {
    Rng rng{7};
    const double L = 0.0105, h = 6.0, im = 0.021;
    for (int k = 0; k < 100000; ++k) {
        const double a = rng.uniform(-0.1, 0.1);
        const double b = rng.uniform(-0.1, 0.1);
        const double pa = psi_truncate(a, L, h, im);
        const double pb = psi_truncate(b, L, h, im);
        REQUIRE(std::abs(pa - pb) <= std::abs(a - b) * (1.0 + 1e-15));
        if (a <= b) REQUIRE(pa <= pb);
        REQUIRE(pa >= -im);
        REQUIRE(pa <= im);
    }
    for (int k = 0; k <= 1000; ++k) {
        const double i = im * k / 1000.0;
        const double v = psi_truncate(i, 0.001, 1.0, im);  // small L*h
        REQUIRE(v >= i);
        REQUIRE(v <= im);
    }
}

TEST_CASE("minimal lipschitz bound") {
    Params p = paper_params();
    CHECK(p.min_lipschitz() == doctest::Approx(0.0105).epsilon(1e-15));

    Params tie = p;
    tie.beta = tie.gamma;
    tie.beta_star = tie.gamma;
    CHECK(tie.min_lipschitz() == doctest::Approx(tie.i_max * tie.beta).epsilon(1e-15));

    Params big;
    big.gamma = 0.9;
    big.beta = 0.5;
    big.beta_star = 0.5;
    big.i_max = 1.0;
    big.delay = 1.0;
    CHECK(big.min_lipschitz() == doctest::Approx(0.9).epsilon(1e-15));
}

TEST_CASE("parameter validation") {
    Params p = paper_params();
    CHECK_NOTHROW(p.validate());

    Params bad = p;
    bad.beta_star = 0.6;  // above beta
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = p;
    bad.gamma = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = p;
    bad.i_max = 1.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = p;
    bad.delay = -1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = p;
    bad.lipschitz = 0.5 * p.min_lipschitz();
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad.lipschitz = p.min_lipschitz();
    CHECK_NOTHROW(bad.validate());
}

TEST_CASE("history evaluation") {
    Params p = paper_params();
    const double s0 = 0.45, i0 = 0.001;

    SUBCASE("constant") {
        const InitialCondition ic = ConstantHistory{{s0, i0}};
        const State x = eval_initial(ic, -3.0, p);
        CHECK(x.s == s0);
        CHECK(x.i == i0);
    }

    SUBCASE("recovery decay") {
        const InitialCondition ic = RecoveryHistory{s0, i0};
        const State at0 = eval_initial(ic, 0.0, p);
        CHECK(at0.s == s0);
        CHECK(at0.i == doctest::Approx(i0).epsilon(1e-15));
        const State back = eval_initial(ic, -p.delay, p);
        CHECK(back.i == doctest::Approx(i0 * std::exp(p.gamma * p.delay)).epsilon(1e-14));
    }

    SUBCASE("surge endpoints and strict decay") {
        const InitialCondition ic = SurgeHistory{s0, i0};
        CHECK(eval_initial(ic, -p.delay, p).i == doctest::Approx(p.i_max).epsilon(1e-12));
        CHECK(eval_initial(ic, 0.0, p).i == doctest::Approx(i0).epsilon(1e-12));
        double prev = eval_initial(ic, -p.delay, p).i;
        for (int k = 1; k <= 2000; ++k) {
            const double t = -p.delay + p.delay * k / 2000.0;
            const double cur = eval_initial(ic, t, p).i;
            REQUIRE(cur < prev);
            prev = cur;
        }
    }

    SUBCASE("sampled interpolation") {
        SampledHistory h;
        h.t = {-p.delay, -3.0, 0.0};
        h.x = {{0.5, 0.02}, {0.48, 0.01}, {0.45, 0.001}};
        const InitialCondition ic = h;
        const State mid = eval_initial(ic, -4.5, p);
        CHECK(mid.s == doctest::Approx(0.49).epsilon(1e-12));
        CHECK(mid.i == doctest::Approx(0.015).epsilon(1e-12));
        CHECK(eval_initial(ic, -3.0, p).i == doctest::Approx(0.01).epsilon(1e-15));
    }

    SUBCASE("domain errors") {
        const InitialCondition ic = ConstantHistory{{s0, i0}};
        CHECK_THROWS_AS(eval_initial(ic, -p.delay - 0.1, p), std::invalid_argument);
        CHECK_THROWS_AS(eval_initial(ic, 0.1, p), std::invalid_argument);
    }
}

TEST_CASE("feasible set membership") {
    Params p = paper_params();
    CHECK(in_C({0.1, 0.01}, p));
    CHECK_FALSE(in_C({0.1, 0.03}, p));
    CHECK_FALSE(in_C({0.6, 0.5}, p));  // s + i > 1
    CHECK(in_C({0.979, 0.021}, p));
    CHECK_FALSE(in_C({-0.01, 0.01}, p));
}

TEST_CASE("admissibility grid checks") {
    Params p = paper_params();

    for (const InitialCondition& ic :
         {InitialCondition(ConstantHistory{{0.45, 0.001}}),
          InitialCondition(RecoveryHistory{0.45, 0.001}),
          InitialCondition(SurgeHistory{0.45, 0.001})}) {
        const auto rep = check_admissible(ic, p);
        CHECK(rep.in_C);
        CHECK_FALSE(rep.zero_infected);
    }

    SUBCASE("cap violation detected") {
        const auto rep = check_admissible(ConstantHistory{{0.3, 0.03}}, p);
        CHECK_FALSE(rep.in_C);
        CHECK_FALSE(rep.detail.empty());
    }

    SUBCASE("degenerate zero history flagged") {
        const auto rep = check_admissible(ConstantHistory{{0.3, 0.0}}, p);
        CHECK(rep.in_C);
        CHECK(rep.zero_infected);
    }

    SUBCASE("speed bound") {
        Params with_l = p;
        with_l.lipschitz = p.min_lipschitz();
        // The surge history plunges from i_max to i0 and is far too fast.
        const auto fast = check_admissible(SurgeHistory{0.45, 0.001}, with_l);
        CHECK_FALSE(fast.lipschitz_ok);
        // A constant history has zero speed.
        const auto still = check_admissible(ConstantHistory{{0.45, 0.001}}, with_l);
        CHECK(still.lipschitz_ok);
        CHECK(still.max_speed == 0.0);
    }
}
