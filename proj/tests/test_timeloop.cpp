// RK4 stepper and simulate(): temporal order, reversibility, step handling,
// instability detection, and energy tracing.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <Eigen/Dense>

#include "sbpwave/errors.hpp"
#include "sbpwave/manufactured.hpp"
#include "sbpwave/operators.hpp"
#include "sbpwave/system.hpp"
#include "sbpwave/timeloop.hpp"

using namespace sbpwave;

namespace {

// Standing-wave Dirichlet setup with homogeneous boundary data.
SemiDiscreteSystem make_standing(int n, int order = 4, double mult = 1.2) {
    const double h = 1.0 / (n - 1);
    const auto op = build_sbp(order, n, h);
    return SemiDiscreteSystem::dirichlet_1d(
        op, mult * min_penalty(ProblemKind::Dirichlet1D, order));
}

StateVector standing_state(const SemiDiscreteSystem& sys, double t) {
    const auto sol = standing_wave_1d();
    return {sol.sample(sys.grid(), t), sol.sample_ut(sys.grid(), t), t};
}

} // namespace

TEST_CASE("rk4_step advances time and is 4th-order self-convergent") {
    const auto sys = make_standing(21);
    const auto st0 = standing_state(sys, 0.0);

    const auto integrate = [&](double dt, double tf) {
        StateVector st = st0;
        const long nst = std::lround(tf / dt);
        for (long k = 0; k < nst; ++k) st = rk4_step(sys, st, dt);
        return st;
    };
    const double tf = 0.5;
    const auto a = integrate(tf / 100, tf);
    const auto b = integrate(tf / 200, tf);
    const auto c = integrate(tf / 400, tf);
    CHECK_THAT(a.t, Catch::Matchers::WithinAbs(tf, 1e-12));
    const double e1 = (a.u - c.u).cwiseAbs().maxCoeff();
    const double e2 = (b.u - c.u).cwiseAbs().maxCoeff();
    // e1 ~ E(dt) - E(dt/4), e2 ~ E(dt/2) - E(dt/4): ratio (1-1/256)/(1/16-1/256).
    CHECK_THAT(std::log2(e1 / e2), Catch::Matchers::WithinAbs(4.09, 0.3));
}

TEST_CASE("simulate lands exactly on tf with a shortened final step") {
    const auto sys = make_standing(31);
    const auto res = simulate(sys, standing_state(sys, 0.0), {0.0, 1.0, 0.3}, true);
    CHECK(res.final.t == 1.0);
    CHECK(res.energy_trace.size() == 5); // initial sample + 4 steps
    CHECK(res.energy_trace.back().first == 1.0);
}

TEST_CASE("time reversal recovers the initial state to RK4 accuracy") {
    const auto sys = make_standing(41);
    const double dt = 0.25 * (1.0 / 40);
    const auto fwd = simulate(sys, standing_state(sys, 0.0), {0.0, 1.0, dt});
    StateVector back = fwd.final;
    back.v = -back.v;
    const auto rev = simulate(sys, back, {0.0, 1.0, dt});
    const auto st0 = standing_state(sys, 0.0);
    CHECK((rev.final.u - st0.u).cwiseAbs().maxCoeff() <= 1e-7);
}

TEST_CASE("simulate refuses unstable penalties unless overridden") {
    const int n = 31;
    const double h = 1.0 / (n - 1);
    const auto op = build_sbp(4, n, h);
    const auto sys = SemiDiscreteSystem::dirichlet_1d(
        op, 0.5 * min_penalty(ProblemKind::Dirichlet1D, 4));
    const auto st = standing_state(sys, 0.0);
    CHECK_THROWS_AS(simulate(sys, st, {0.0, 0.1, 0.1 * h}), UnstablePenalty);
    CHECK_NOTHROW(simulate(sys, st, {0.0, 0.1, 0.1 * h}, false, true));
}

TEST_CASE("temporal refinement changes the solution by less than 1%") {
    // At the default Courant number the time-integration error is far below the
    // spatial error: halving dt moves the computed error negligibly.
    const auto sol = trig_1d();
    const int n = 101;
    const double h = 1.0 / (n - 1);
    const auto op = build_sbp(4, n, h);
    const auto sys = SemiDiscreteSystem::dirichlet_1d(
        op, 1.2 * min_penalty(ProblemKind::Dirichlet1D, 4),
        [&sol](double t) { return sol.u(0.0, t); },
        [&sol](double t) { return sol.u(1.0, t); });
    StateVector st{sol.sample(sys.grid(), 0.0), sol.sample_ut(sys.grid(), 0.0), 0.0};
    const auto run_err = [&](double dt) {
        const auto res = simulate(sys, st, {0.0, 2.0, dt});
        return std::sqrt(h * (res.final.u - sol.sample(sys.grid(), 2.0)).squaredNorm());
    };
    const double ea = run_err(0.1 * h), eb = run_err(0.05 * h);
    CHECK_THAT(ea, Catch::Matchers::WithinRel(eb, 0.01));
}

TEST_CASE("instability beyond the Courant limit raises NonFiniteState") {
    // Sixth order at tau = 1.2 tau_6 is stable for Courant <= ~0.6; at 0.7 the
    // RK4 iteration diverges after ~1330 steps, so the grid must be fine enough
    // (dt small enough) for the overflow to land before tf.
    const auto sol = trig_1d();
    const int n = 801;
    const double h = 1.0 / (n - 1);
    const auto op = build_sbp(6, n, h);
    const auto sys = SemiDiscreteSystem::dirichlet_1d(
        op, 1.2 * min_penalty(ProblemKind::Dirichlet1D, 6),
        [&sol](double t) { return sol.u(0.0, t); },
        [&sol](double t) { return sol.u(1.0, t); });
    StateVector st{sol.sample(sys.grid(), 0.0), sol.sample_ut(sys.grid(), 0.0), 0.0};
    try {
        simulate(sys, st, {0.0, 2.0, 0.7 * h});
        FAIL("expected NonFiniteState");
    } catch (const NonFiniteState& e) {
        CHECK(e.step > 0);
        CHECK(std::isfinite(e.max_abs));
    }
    // The same configuration at Courant 0.5 runs to completion.
    CHECK_NOTHROW(simulate(sys, st, {0.0, 2.0, 0.5 * h}));
}

TEST_CASE("energy decays monotonically for the standing wave") {
    const auto sys = make_standing(101);
    const double h = 1.0 / 100;
    const auto res =
        simulate(sys, standing_state(sys, 0.0), {0.0, 2.0, 0.1 * h}, true);
    REQUIRE(res.energy_trace.size() > 100);
    const double e0 = res.energy_trace.front().second;
    CHECK(e0 > 0.0);
    for (size_t k = 1; k < res.energy_trace.size(); ++k)
        CHECK(res.energy_trace[k].second <=
              res.energy_trace[k - 1].second * (1.0 + 1e-12));
    // RK4 dissipation is tiny: the drift over tf=2 stays below 1e-6 relative.
    CHECK(res.energy_trace.back().second >= e0 * (1.0 - 1e-6));
}
