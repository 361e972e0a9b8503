#pragma once

// Closed-form solutions of the homogeneous wave equation used for boundary data,
// initial data, and error measurement in the convergence studies.

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include <Eigen/Dense>

namespace sbpwave {

struct Manufactured1D {
    std::string id;
    std::function<double(double, double)> u;   // U(x, t)
    std::function<double(double, double)> ut;  // dU/dt
    std::function<double(double, double)> ux;  // dU/dx (Neumann data)
    // Forcing is identically zero: the solutions satisfy u_tt = u_xx.

    Eigen::VectorXd sample(const Eigen::VectorXd& x, double t) const {
        Eigen::VectorXd out(x.size());
        for (Eigen::Index i = 0; i < x.size(); ++i) out(i) = u(x(i), t);
        return out;
    }
    Eigen::VectorXd sample_ut(const Eigen::VectorXd& x, double t) const {
        Eigen::VectorXd out(x.size());
        for (Eigen::Index i = 0; i < x.size(); ++i) out(i) = ut(x(i), t);
        return out;
    }

    // Max residual |u_tt - u_xx| at `count` pseudo-random space-time points.
    double residual_spot_check(int count = 100, unsigned seed = 7) const {
        std::mt19937 rng(seed);
        std::uniform_real_distribution<double> dist(0.05, 0.95);
        const double d = 1e-4;
        double worst = 0.0;
        for (int k = 0; k < count; ++k) {
            const double x = dist(rng), t = 2.0 * dist(rng);
            const double utt =
                (u(x, t + d) - 2 * u(x, t) + u(x, t - d)) / (d * d);
            const double uxx =
                (u(x + d, t) - 2 * u(x, t) + u(x - d, t)) / (d * d);
            worst = std::max(worst, std::abs(utt - uxx));
        }
        return worst;
    }
};

struct Manufactured2D {
    std::string id;
    std::function<double(double, double, double)> u;  // U(x, y, t)
    std::function<double(double, double, double)> ut; // dU/dt
};

// u = cos(10 pi x + 1) cos(10 pi t + 2); the 1D workhorse solution.
inline Manufactured1D trig_1d() {
    constexpr double w = 10.0 * std::numbers::pi;
    Manufactured1D s;
    s.id = "trig-1d";
    s.u = [](double x, double t) { return std::cos(w * x + 1) * std::cos(w * t + 2); };
    s.ut = [](double x, double t) {
        return -w * std::cos(w * x + 1) * std::sin(w * t + 2);
    };
    s.ux = [](double x, double t) {
        return -w * std::sin(w * x + 1) * std::cos(w * t + 2);
    };
    return s;
}

// u = sin(pi x) cos(pi t); vanishes at x=0,1 (homogeneous Dirichlet data),
// used for energy-conservation tests.
inline Manufactured1D standing_wave_1d() {
    constexpr double w = std::numbers::pi;
    Manufactured1D s;
    s.id = "standing-1d";
    s.u = [](double x, double t) { return std::sin(w * x) * std::cos(w * t); };
    s.ut = [](double x, double t) { return -w * std::sin(w * x) * std::sin(w * t); };
    s.ux = [](double x, double t) { return w * std::cos(w * x) * std::cos(w * t); };
    return s;
}

// u = cos(12x+1) cos(4 pi y + 2) cos(sqrt(144 + 16 pi^2) t + 3); periodic in y
// with period 1/2, so any y-extent that is a multiple of 1/2 works.
inline Manufactured2D trig_2d() {
    const double kx = 12.0;
    const double ky = 4.0 * std::numbers::pi;
    const double wt = std::sqrt(kx * kx + ky * ky);
    Manufactured2D s;
    s.id = "trig-2d";
    s.u = [=](double x, double y, double t) {
        return std::cos(kx * x + 1) * std::cos(ky * y + 2) * std::cos(wt * t + 3);
    };
    s.ut = [=](double x, double y, double t) {
        return -wt * std::cos(kx * x + 1) * std::cos(ky * y + 2) * std::sin(wt * t + 3);
    };
    return s;
}

} // namespace sbpwave
