#pragma once

// Central periodic second-derivative operators and their Fourier symbols.

#include <cmath>
#include <complex>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "sbpwave/coefficients.hpp"
#include "sbpwave/errors.hpp"

namespace sbpwave {

struct PeriodicOperator {
    int order = 0;
    int n = 0;          // periodic points (no duplicated endpoint)
    double h = 0.0;
    Eigen::VectorXd stencil; // coefficients of h^2 * D_yyp, centered, width 2q+1

    // Fourier symbol: applying the operator to samples of e^{i omega y}
    // multiplies them by this value. Real and nonpositive for all omega.
    double symbol(double omega) const {
        const int q = static_cast<int>(stencil.size()) / 2;
        double s = stencil(q);
        for (int j = 1; j <= q; ++j) s += 2.0 * stencil(q + j) * std::cos(omega * h * j);
        return s / (h * h);
    }

    // Circulant matrix representation (1/h^2 scale).
    Eigen::SparseMatrix<double> matrix() const {
        const int q = static_cast<int>(stencil.size()) / 2;
        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(static_cast<size_t>(n) * (2 * q + 1));
        for (int i = 0; i < n; ++i)
            for (int j = -q; j <= q; ++j)
                trip.emplace_back(i, ((i + j) % n + n) % n, stencil(j + q) / (h * h));
        Eigen::SparseMatrix<double> mat(n, n);
        mat.setFromTriplets(trip.begin(), trip.end());
        return mat;
    }
};

inline PeriodicOperator build_periodic(int order, int n, double h) {
    const Eigen::VectorXd st = detail::central_stencil(order);
    if (n < st.size()) throw GridTooSmall(n, static_cast<int>(st.size()));
    PeriodicOperator op;
    op.order = order;
    op.n = n;
    op.h = h;
    op.stencil = st;
    return op;
}

} // namespace sbpwave
