#pragma once

// Construction and validation of diagonal-norm SBP second-derivative operator sets
// with the exact decomposition H*D = -A + B*S.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include <Eigen/Dense>

#include "sbpwave/coefficients.hpp"
#include "sbpwave/errors.hpp"

namespace sbpwave {

struct SbpOperatorSet {
    int order = 0;        // interior accuracy 2p
    int n = 0;            // grid points
    int m = 0;            // closure width
    double h = 0.0;       // grid spacing
    Eigen::VectorXd H;    // diagonal of the norm matrix (dimensional, ~h)
    Eigen::MatrixXd D;    // second-derivative approximation (1/h^2 scale)
    Eigen::MatrixXd A;    // SPSD stiffness matrix, H*D = -A + B*S (1/h scale)
    Eigen::MatrixXd S;    // boundary-derivative operator; rows 0 and n-1 one-sided
    Eigen::VectorXd Bdiag;// boundary selection diag(-1, 0, ..., 0, 1)

    // Dimensionless one-sided boundary stencil (h * first derivative).
    const Eigen::VectorXd& sbar() const { return detail::closure(order).sbar; }
};

inline SbpOperatorSet build_sbp(int order, int n, double h) {
    const auto& c = detail::closure(order);
    const int m = c.m;
    if (n < 2 * m + 1) throw GridTooSmall(n, 2 * m + 1);

    SbpOperatorSet op;
    op.order = order;
    op.n = n;
    op.m = m;
    op.h = h;

    const int q = static_cast<int>(c.interior.size()) / 2;
    const int nb = static_cast<int>(c.mt.rows());
    const int wc = static_cast<int>(c.mt.cols());

    Eigen::MatrixXd mt = Eigen::MatrixXd::Zero(n, n); // h*A, dimensionless
    for (int i = nb; i < n - nb; ++i)
        for (int j = -q; j <= q; ++j) mt(i, i + j) = c.interior(j + q);
    mt.topLeftCorner(nb, wc) = c.mt;
    mt.bottomRightCorner(nb, wc) = c.mt.reverse();

    Eigen::VectorXd Ht = Eigen::VectorXd::Ones(n);
    Ht.head(nb) = c.Ht;
    Ht.tail(nb) = c.Ht.reverse();

    const int w = static_cast<int>(c.sbar.size());
    Eigen::MatrixXd St = Eigen::MatrixXd::Zero(n, n); // h*S
    St.row(0).head(w) = c.sbar;
    St.row(n - 1).tail(w) = -c.sbar.reverse();

    op.Bdiag = Eigen::VectorXd::Zero(n);
    op.Bdiag(0) = -1.0;
    op.Bdiag(n - 1) = 1.0;

    op.H = h * Ht;
    op.A = mt / h;
    op.S = St / h;
    // D = H^{-1}(-A + B*S); B*S keeps only the first and last rows of S.
    Eigen::MatrixXd bs = Eigen::MatrixXd::Zero(n, n);
    bs.row(0) = -op.S.row(0);
    bs.row(n - 1) = op.S.row(n - 1);
    op.D = Ht.cwiseInverse().asDiagonal() * (-op.A + bs) / h;
    return op;
}

struct BorrowingCheck {
    bool psd = false;
    double min_eigenvalue = 0.0;
};

// Checks that A - h*alpha*(E0 S)^T(E0 S) - h*alpha*(EN S)^T(EN S) stays PSD.
// The two boundary closures have disjoint support for n >= 2m+1, so borrowing
// simultaneously at both ends is equivalent to the half-line statement.
inline BorrowingCheck verify_borrowing(const SbpOperatorSet& op, double alpha) {
    Eigen::MatrixXd At = op.A;
    At.noalias() -= op.h * alpha * (op.S.row(0).transpose() * op.S.row(0));
    At.noalias() -= op.h * alpha * (op.S.row(op.n - 1).transpose() * op.S.row(op.n - 1));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(At, Eigen::EigenvaluesOnly);
    const double min_eig = es.eigenvalues().minCoeff();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esA(op.A, Eigen::EigenvaluesOnly);
    const double scale = esA.eigenvalues().cwiseAbs().maxCoeff();
    BorrowingCheck out;
    out.min_eigenvalue = min_eig;
    out.psd = min_eig >= -1e-10 * scale;
    return out;
}

// Dissipative boundary perturbation that keeps the closure truncation error at
// O(h^p) magnitude but moves its direction out of the column space of the
// Laplace-space boundary system: adds magnitude*h^{p+1} to the corner entries of
// A (both boundaries). Symmetric positive semi-definite addition, so the energy
// estimate is preserved.
inline SbpOperatorSet perturb_neumann_boundary(const SbpOperatorSet& op,
                                               double magnitude) {
    if (op.order != 4 && op.order != 6) throw UnsupportedOrder(op.order);
    SbpOperatorSet out = op;
    if (magnitude == 0.0) return out;
    const int p = op.order / 2;
    const double bump = magnitude * std::pow(op.h, p + 1);
    out.A(0, 0) += bump;
    out.A(op.n - 1, op.n - 1) += bump;
    Eigen::MatrixXd bs = Eigen::MatrixXd::Zero(op.n, op.n);
    bs.row(0) = -out.S.row(0);
    bs.row(op.n - 1) = out.S.row(op.n - 1);
    out.D = out.H.cwiseInverse().asDiagonal() * (-out.A + bs);
    return out;
}

// Plain-text row-major dump, 17 significant digits, for cross-validation.
inline void dump_matrix(std::ostream& os, const Eigen::MatrixXd& mat) {
    char buf[32];
    for (Eigen::Index i = 0; i < mat.rows(); ++i) {
        for (Eigen::Index j = 0; j < mat.cols(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", mat(i, j));
            os << buf << (j + 1 < mat.cols() ? " " : "\n");
        }
    }
}

} // namespace sbpwave
