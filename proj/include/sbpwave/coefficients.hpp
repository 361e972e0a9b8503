#pragma once

// Diagonal-norm SBP second-derivative coefficient tables (interior orders 2, 4, 6).
//
// All entries are dimensionless: the norm closure Ht is H/h, the stiffness closure
// block mt is h*A restricted to the first m rows, and sbar is h times the one-sided
// boundary derivative stencil (accuracy p+1). The sixth-order closure is stored as
// 17-significant-digit doubles; it satisfies the accuracy constraints to ~2e-13 and
// reproduces the published borrowing constant and boundary-system entries to the
// printed precision.

#include <vector>

#include <Eigen/Dense>

#include "sbpwave/errors.hpp"

namespace sbpwave {

// Largest borrowing constant alpha_2p with A - h*alpha*(E0 S)^T(E0 S) still PSD.
inline double borrowing_constant(int order) {
    switch (order) {
        case 2:  return 0.4;
        case 4:  return 0.2508560249;
        case 6:  return 0.1878715026;
        case 8:  return 0.0015782259;
        case 10: return 0.0351202265;
        default: throw UnsupportedOrder(order);
    }
}

namespace detail {

struct ClosureSpec {
    int order;                     // interior accuracy 2p
    int m;                         // closure width (rows with O(h^p) truncation)
    Eigen::VectorXd Ht;            // norm closure, H/h
    Eigen::MatrixXd mt;            // closure block of h*A (m rows)
    Eigen::VectorXd interior;      // interior row of h*A, centered
    Eigen::VectorXd sbar;          // h * one-sided d/dx at the boundary
};

inline const ClosureSpec& closure(int order) {
    static const ClosureSpec c2 = [] {
        ClosureSpec c;
        c.order = 2;
        c.m = 1;
        c.Ht = Eigen::VectorXd::Constant(1, 0.5);
        c.mt.resize(1, 2);
        c.mt << 1.0, -1.0;
        c.interior.resize(3);
        c.interior << -1.0, 2.0, -1.0;
        c.sbar.resize(3);
        c.sbar << -1.5, 2.0, -0.5;
        return c;
    }();
    static const ClosureSpec c4 = [] {
        ClosureSpec c;
        c.order = 4;
        c.m = 4;
        c.Ht.resize(4);
        c.Ht << 17.0 / 48, 59.0 / 48, 43.0 / 48, 49.0 / 48;
        c.mt.resize(4, 6);
        c.mt << 9.0 / 8, -59.0 / 48, 1.0 / 12, 1.0 / 48, 0, 0,
            -59.0 / 48, 59.0 / 24, -59.0 / 48, 0, 0, 0,
            1.0 / 12, -59.0 / 48, 55.0 / 24, -59.0 / 48, 1.0 / 12, 0,
            1.0 / 48, 0, -59.0 / 48, 59.0 / 24, -4.0 / 3, 1.0 / 12;
        c.interior.resize(5);
        c.interior << 1.0 / 12, -4.0 / 3, 5.0 / 2, -4.0 / 3, 1.0 / 12;
        c.sbar.resize(4);
        c.sbar << -11.0 / 6, 3.0, -3.0 / 2, 1.0 / 3;
        return c;
    }();
    static const ClosureSpec c6 = [] {
        ClosureSpec c;
        c.order = 6;
        c.m = 6;
        c.Ht.resize(6);
        c.Ht << 13649.0 / 43200, 12013.0 / 8640, 2711.0 / 4320, 5359.0 / 4320,
            7877.0 / 8640, 43801.0 / 43200;
        c.mt.resize(6, 9);
        c.mt << 1.2023919753088343, -1.4646585648157879, 0.40425154321183471,
            -0.26467206790319781, 0.16326388888987184, -0.040576774691554789, 0, 0, 0,
            -1.4646585648157879, 3.2679783950666117, -2.5965084876641145,
            1.4378472222320324, -0.83478973765923103, 0.19013117284048883, 0, 0, 0,
            0.40425154321183471, -2.5965084876641145, 5.0884259259455211,
            -4.3562885802665194, 1.8120756172937598, -0.35195601852048142, 0, 0, 0,
            -0.26467206790319781, 1.4378472222320324, -4.3562885802665194,
            5.8591049382912015, -3.0884837963060905, 0.42360339506368649,
            -0.011111111111111112, 0, 0,
            0.16326388888987184, -0.83478973765923103, 1.8120756172937598,
            -3.0884837963060905, 3.3913580246962498, -1.5823128858034468,
            0.14999999999999999, -0.011111111111111112, 0,
            -0.040576774691554789, 0.19013117284048883, -0.35195601852048142,
            0.42360339506368649, -1.5823128858034468, 2.7222222222224182, -1.5,
            0.14999999999999999, -0.011111111111111112;
        c.interior.resize(7);
        c.interior << -1.0 / 90, 3.0 / 20, -3.0 / 2, 49.0 / 18, -3.0 / 2, 3.0 / 20,
            -1.0 / 90;
        c.sbar.resize(5);
        c.sbar << -25.0 / 12, 4.0, -3.0, 4.0 / 3, -1.0 / 4;
        return c;
    }();
    switch (order) {
        case 2: return c2;
        case 4: return c4;
        case 6: return c6;
        default: throw UnsupportedOrder(order);
    }
}

// Interior central second-derivative stencil of accuracy 2p (coefficients of h^2 D).
inline Eigen::VectorXd central_stencil(int order) {
    return -closure(order).interior;
}

} // namespace detail

} // namespace sbpwave
