#pragma once

// Classical RK4 integration of u_tt = rhs(u, t) written as a first-order system
// in (u, v), with optional energy tracing.

#include <cmath>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sbpwave/errors.hpp"
#include "sbpwave/system.hpp"

namespace sbpwave {

struct TimeGrid {
    double t0 = 0.0;
    double tf = 0.0;
    double dt = 0.0; // final step shortened to land exactly on tf
};

// One classical RK4 update of (u, v).
inline StateVector rk4_step(const SemiDiscreteSystem& sys, const StateVector& st,
                            double dt) {
    const Eigen::VectorXd& u = st.u;
    const Eigen::VectorXd& v = st.v;
    const double t = st.t;
    const Eigen::VectorXd k1v = sys.rhs(u, t);
    const Eigen::VectorXd& k1u = v;
    const Eigen::VectorXd k2u = v + (dt / 2) * k1v;
    const Eigen::VectorXd k2v = sys.rhs(u + (dt / 2) * k1u, t + dt / 2);
    const Eigen::VectorXd k3u = v + (dt / 2) * k2v;
    const Eigen::VectorXd k3v = sys.rhs(u + (dt / 2) * k2u, t + dt / 2);
    const Eigen::VectorXd k4u = v + dt * k3v;
    const Eigen::VectorXd k4v = sys.rhs(u + dt * k3u, t + dt);
    StateVector out;
    out.u = u + (dt / 6) * (k1u + 2 * k2u + 2 * k3u + k4u);
    out.v = v + (dt / 6) * (k1v + 2 * k2v + 2 * k3v + k4v);
    out.t = t + dt;
    return out;
}

struct SimulateResult {
    StateVector final;
    std::vector<std::pair<double, double>> energy_trace; // (t, E_h)
};

// Integrates from grid.t0 to grid.tf. Throws NonFiniteState (with the first bad
// step index) if the solution blows up, and UnstablePenalty when the system's
// penalty is below its threshold unless allow_unstable is set.
inline SimulateResult simulate(const SemiDiscreteSystem& sys, StateVector state,
                               const TimeGrid& grid, bool trace_energy = false,
                               bool allow_unstable = false) {
    if (!allow_unstable && sys.penalty.tau < sys.penalty.threshold * (1.0 - 1e-12))
        throw UnstablePenalty(sys.penalty.tau, sys.penalty.threshold);
    SimulateResult res;
    state.t = grid.t0;
    const double span = grid.tf - grid.t0;
    const long nst = span <= 0.0 ? 0 : static_cast<long>(std::ceil(span / grid.dt - 1e-12));
    if (trace_energy)
        res.energy_trace.emplace_back(state.t, sys.discrete_energy(state));
    for (long k = 0; k < nst; ++k) {
        const double dt = std::min(grid.dt, grid.tf - state.t);
        if (dt <= 0.0) break;
        state = rk4_step(sys, state, dt);
        if (!state.u.allFinite() || !state.v.allFinite()) {
            double mx = 0.0;
            for (Eigen::Index i = 0; i < state.u.size(); ++i)
                if (std::isfinite(state.u(i))) mx = std::max(mx, std::abs(state.u(i)));
            throw NonFiniteState(k + 1, mx);
        }
        if (trace_energy)
            res.energy_trace.emplace_back(state.t, sys.discrete_energy(state));
    }
    state.t = grid.tf;
    res.final = std::move(state);
    return res;
}

} // namespace sbpwave
