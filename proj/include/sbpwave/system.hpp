#pragma once

// SAT-penalized semi-discrete systems u_tt = L u + data lifting for the four
// problem kinds, penalty thresholds, and discrete energies.

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <utility>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "sbpwave/coefficients.hpp"
#include "sbpwave/errors.hpp"
#include "sbpwave/operators.hpp"
#include "sbpwave/periodic.hpp"

namespace sbpwave {

enum class ProblemKind { Dirichlet1D, Neumann1D, Interface1D, Dirichlet2DPeriodicY };

inline const char* to_string(ProblemKind k) {
    switch (k) {
        case ProblemKind::Dirichlet1D: return "dirichlet";
        case ProblemKind::Neumann1D: return "neumann";
        case ProblemKind::Interface1D: return "interface";
        case ProblemKind::Dirichlet2DPeriodicY: return "dirichlet2d";
    }
    return "?";
}

struct PenaltyConfig {
    double tau = 0.0;       // dimensionless for Dirichlet (SAT carries tau/h);
                            // 1/length for the interface penalty
    double threshold = 0.0; // stability limit for this configuration
};

// Stability limit of the penalty parameter.
inline double min_penalty(ProblemKind kind, int order, double h_L = 0.0,
                          double h_R = 0.0) {
    const double a = borrowing_constant(order);
    switch (kind) {
        case ProblemKind::Dirichlet1D:
        case ProblemKind::Dirichlet2DPeriodicY:
            return 1.0 / a;
        case ProblemKind::Neumann1D:
            return 0.0; // the Neumann SAT has no penalty parameter
        case ProblemKind::Interface1D:
            return (h_L + h_R) / (4.0 * a * h_L * h_R);
    }
    return 0.0;
}

struct StateVector {
    Eigen::VectorXd u;
    Eigen::VectorXd v; // u_t
    double t = 0.0;
};

using TimeFunc = std::function<double(double)>;            // g(t)
using SpaceTimeFunc = std::function<double(double, double)>; // F(x,t) or g(y,t)

// A problem kind bound to operators, penalties, grids and data functions;
// exposes the acceleration u_tt = rhs(u, t). Immutable after construction and
// re-entrant: rhs() may be called concurrently on distinct states.
class SemiDiscreteSystem {
public:
    ProblemKind kind = ProblemKind::Dirichlet1D;
    int order = 0;
    PenaltyConfig penalty;

    // ---- factories ----

    static SemiDiscreteSystem dirichlet_1d(const SbpOperatorSet& op, double tau,
                                           TimeFunc g0 = {}, TimeFunc g1 = {},
                                           SpaceTimeFunc forcing = {}) {
        SemiDiscreteSystem s;
        s.kind = ProblemKind::Dirichlet1D;
        s.order = op.order;
        s.penalty = {tau, min_penalty(ProblemKind::Dirichlet1D, op.order)};
        const int n = op.n;
        const double h = op.h;
        Eigen::VectorXd Hinv = op.H.cwiseInverse();

        Eigen::MatrixXd L = op.D;
        // -H^{-1} S^T E0 u  and the mirrored right-end term +H^{-1} S^T EN u.
        L.col(0) -= Hinv.cwiseProduct(op.S.row(0).transpose());
        L.col(n - 1) += Hinv.cwiseProduct(op.S.row(n - 1).transpose());
        // -(tau/h) H^{-1} (E0 + EN) u.
        L(0, 0) -= tau / (h * op.H(0));
        L(n - 1, n - 1) -= tau / (h * op.H(n - 1));
        s.L_ = L.sparseView();

        // Lifting: the same penalty columns applied to -g.
        s.lift0_ = Eigen::VectorXd::Zero(n);
        s.lift0_ += Hinv.cwiseProduct(op.S.row(0).transpose());
        s.lift0_(0) += tau / (h * op.H(0));
        s.lift1_ = Eigen::VectorXd::Zero(n);
        s.lift1_ -= Hinv.cwiseProduct(op.S.row(n - 1).transpose());
        s.lift1_(n - 1) += tau / (h * op.H(n - 1));
        s.g0_ = std::move(g0);
        s.g1_ = std::move(g1);
        s.forcing_ = std::move(forcing);
        s.grid_ = Eigen::VectorXd::LinSpaced(n, 0.0, (n - 1) * h);
        s.H_ = op.H;
        s.op_ = std::make_shared<SbpOperatorSet>(op);
        return s;
    }

    static SemiDiscreteSystem neumann_1d(const SbpOperatorSet& op, TimeFunc g0 = {},
                                         TimeFunc g1 = {}, SpaceTimeFunc forcing = {}) {
        SemiDiscreteSystem s;
        s.kind = ProblemKind::Neumann1D;
        s.order = op.order;
        s.penalty = {0.0, 0.0};
        const int n = op.n;
        Eigen::MatrixXd L = op.D;
        // +H^{-1} e0 ((S u)_0 - g0) - H^{-1} eN ((S u)_N - g1).
        L.row(0) += op.S.row(0) / op.H(0);
        L.row(n - 1) -= op.S.row(n - 1) / op.H(n - 1);
        s.L_ = L.sparseView();
        s.lift0_ = Eigen::VectorXd::Zero(n);
        s.lift0_(0) = -1.0 / op.H(0);
        s.lift1_ = Eigen::VectorXd::Zero(n);
        s.lift1_(n - 1) = 1.0 / op.H(n - 1);
        s.g0_ = std::move(g0);
        s.g1_ = std::move(g1);
        s.forcing_ = std::move(forcing);
        s.grid_ = Eigen::VectorXd::LinSpaced(n, 0.0, (n - 1) * op.h);
        s.H_ = op.H;
        s.op_ = std::make_shared<SbpOperatorSet>(op); // used by discrete_energy
        return s;
    }

    // Conforming interface at x = x_if: both sides own the interface point.
    // tau is the (1/length) interface penalty, tau_outer the dimensionless
    // Dirichlet penalty at the two outer boundaries.
    static SemiDiscreteSystem interface_1d(const SbpOperatorSet& opL,
                                           const SbpOperatorSet& opR, double tau,
                                           double tau_outer, TimeFunc g0 = {},
                                           TimeFunc g1 = {}) {
        SemiDiscreteSystem s;
        s.kind = ProblemKind::Interface1D;
        s.order = opL.order;
        if (opR.order != opL.order)
            throw UnsupportedPair("interface sides must share the operator order");
        const int nL = opL.n, nR = opR.n, ntot = nL + nR;
        const double hL = opL.h, hR = opR.h;
        s.penalty = {tau, min_penalty(ProblemKind::Interface1D, opL.order, hL, hR)};
        s.nL_ = nL;
        s.hL_ = hL;
        s.hR_ = hR;

        Eigen::MatrixXd L = Eigen::MatrixXd::Zero(ntot, ntot);
        L.topLeftCorner(nL, nL) = opL.D;
        L.bottomRightCorner(nR, nR) = opR.D;
        // Outer Dirichlet SATs at the left end of the left grid and the right end
        // of the right grid.
        L.col(0).head(nL) -=
            opL.H.cwiseInverse().cwiseProduct(opL.S.row(0).transpose());
        L(0, 0) -= tau_outer / (hL * opL.H(0));
        L.col(ntot - 1).tail(nR) +=
            opR.H.cwiseInverse().cwiseProduct(opR.S.row(nR - 1).transpose());
        L(ntot - 1, ntot - 1) -= tau_outer / (hR * opR.H(nR - 1));

        // Interface SATs; I = last point of the left grid, J = first of the right.
        const int I = nL - 1, J = nL;
        // {Su} = (S_L u)_I - (S_R u)_J as a row over the composite state.
        Eigen::RowVectorXd dSu = Eigen::RowVectorXd::Zero(ntot);
        dSu.head(nL) = opL.S.row(nL - 1);
        dSu.tail(nR) -= opR.S.row(0);
        // Left side: +1/2 H^{-1} S_L^T e_I {u} - 1/2 H^{-1} e_I {Su} - tau H^{-1} e_I {u}.
        Eigen::VectorXd colL =
            opL.H.cwiseInverse().cwiseProduct(opL.S.row(nL - 1).transpose()) / 2.0;
        L.col(I).head(nL) += colL;
        L.col(J).head(nL) -= colL;
        L.row(I) -= dSu / (2.0 * opL.H(nL - 1));
        L(I, I) -= tau / opL.H(nL - 1);
        L(I, J) += tau / opL.H(nL - 1);
        // Right side: +1/2 H^{-1} S_R^T e_J {u} - 1/2 H^{-1} e_J {Su} + tau H^{-1} e_J {u}.
        Eigen::VectorXd colR =
            opR.H.cwiseInverse().cwiseProduct(opR.S.row(0).transpose()) / 2.0;
        L.col(I).tail(nR) += colR;
        L.col(J).tail(nR) -= colR;
        L.row(J) -= dSu / (2.0 * opR.H(0));
        L(J, I) += tau / opR.H(0);
        L(J, J) -= tau / opR.H(0);
        s.L_ = L.sparseView();

        s.H_ = Eigen::VectorXd(ntot);
        s.H_.head(nL) = opL.H;
        s.H_.tail(nR) = opR.H;
        // Conserved quadratic form K = -H L (symmetric for this scheme).
        Eigen::MatrixXd K = -(s.H_.asDiagonal() * L);
        s.K_ = ((K + K.transpose()) / 2.0).sparseView();
        s.Ksym_err_ = (K - K.transpose()).cwiseAbs().maxCoeff() /
                      K.cwiseAbs().maxCoeff();

        s.lift0_ = Eigen::VectorXd::Zero(ntot);
        s.lift0_.head(nL) +=
            opL.H.cwiseInverse().cwiseProduct(opL.S.row(0).transpose());
        s.lift0_(0) += tau_outer / (hL * opL.H(0));
        s.lift1_ = Eigen::VectorXd::Zero(ntot);
        s.lift1_.tail(nR) -=
            opR.H.cwiseInverse().cwiseProduct(opR.S.row(nR - 1).transpose());
        s.lift1_(ntot - 1) += tau_outer / (hR * opR.H(nR - 1));
        s.g0_ = std::move(g0);
        s.g1_ = std::move(g1);

        const double x_if = (nL - 1) * hL;
        s.grid_ = Eigen::VectorXd(ntot);
        s.grid_.head(nL) = Eigen::VectorXd::LinSpaced(nL, 0.0, x_if);
        s.grid_.tail(nR) = Eigen::VectorXd::LinSpaced(nR, x_if, x_if + (nR - 1) * hR);
        return s;
    }

    // Dirichlet in x (SAT at both ends), periodic in y. Fields are (ny x nx),
    // y fastest in the flattened state. Boundary data g(y, t) at x=0 and x=1.
    static SemiDiscreteSystem dirichlet_2d(const SbpOperatorSet& opx,
                                           const PeriodicOperator& opy, double tau,
                                           SpaceTimeFunc g0 = {},
                                           SpaceTimeFunc g1 = {},
                                           double y0 = 0.0) {
        SemiDiscreteSystem s;
        s.kind = ProblemKind::Dirichlet2DPeriodicY;
        s.order = opx.order;
        s.penalty = {tau, min_penalty(ProblemKind::Dirichlet2DPeriodicY, opx.order)};
        const int nx = opx.n, ny = opy.n;
        const double h = opx.h;
        s.nx_ = nx;
        s.ny_ = ny;

        Eigen::MatrixXd Lx = opx.D;
        Lx.col(0) -= opx.H.cwiseInverse().cwiseProduct(opx.S.row(0).transpose());
        Lx.col(nx - 1) +=
            opx.H.cwiseInverse().cwiseProduct(opx.S.row(nx - 1).transpose());
        Lx(0, 0) -= tau / (h * opx.H(0));
        Lx(nx - 1, nx - 1) -= tau / (h * opx.H(nx - 1));
        s.LxT_ = Eigen::MatrixXd(Lx.transpose()).sparseView();
        s.Ly_ = opy.matrix();

        s.liftx0_ = Eigen::VectorXd::Zero(nx);
        s.liftx0_ += opx.H.cwiseInverse().cwiseProduct(opx.S.row(0).transpose());
        s.liftx0_(0) += tau / (h * opx.H(0));
        s.liftx1_ = Eigen::VectorXd::Zero(nx);
        s.liftx1_ -= opx.H.cwiseInverse().cwiseProduct(opx.S.row(nx - 1).transpose());
        s.liftx1_(nx - 1) += tau / (h * opx.H(nx - 1));
        s.g2d0_ = std::move(g0);
        s.g2d1_ = std::move(g1);
        s.ygrid_ = Eigen::VectorXd::LinSpaced(ny, y0, y0 + (ny - 1) * opy.h);
        s.grid_ = Eigen::VectorXd::LinSpaced(nx, 0.0, (nx - 1) * h);
        s.H_ = Eigen::VectorXd(nx * ny);
        for (int i = 0; i < nx; ++i)
            s.H_.segment(static_cast<Eigen::Index>(i) * ny, ny)
                .setConstant(opx.H(i) * opy.h);
        return s;
    }

    // ---- evaluation ----

    int dof() const {
        return kind == ProblemKind::Dirichlet2DPeriodicY
                   ? nx_ * ny_
                   : static_cast<int>(L_.rows());
    }

    // Acceleration u_tt at time t.
    Eigen::VectorXd rhs(const Eigen::VectorXd& u, double t) const {
        if (u.size() != dof())
            throw LayoutMismatch("rhs: state has " + std::to_string(u.size()) +
                                 " entries, system expects " + std::to_string(dof()));
        if (kind == ProblemKind::Dirichlet2DPeriodicY) {
            Eigen::Map<const Eigen::MatrixXd> U(u.data(), ny_, nx_);
            Eigen::MatrixXd out = Ly_ * U;
            out.noalias() += U * LxT_;
            if (g2d0_ || g2d1_) {
                Eigen::VectorXd gv0(ny_), gv1(ny_);
                for (int j = 0; j < ny_; ++j) {
                    gv0(j) = g2d0_ ? g2d0_(ygrid_(j), t) : 0.0;
                    gv1(j) = g2d1_ ? g2d1_(ygrid_(j), t) : 0.0;
                }
                out.noalias() += gv0 * liftx0_.transpose();
                out.noalias() += gv1 * liftx1_.transpose();
            }
            return Eigen::Map<Eigen::VectorXd>(out.data(), out.size());
        }
        Eigen::VectorXd a = L_ * u;
        if (g0_) a += lift0_ * g0_(t);
        if (g1_) a += lift1_ * g1_(t);
        if (forcing_)
            for (Eigen::Index i = 0; i < a.size(); ++i) a(i) += forcing_(grid_(i), t);
        return a;
    }

    // Discrete energy E_h(u, v) >= 0 for stable penalties.
    double discrete_energy(const StateVector& st) const {
        if (st.u.size() != dof() || st.v.size() != dof())
            throw LayoutMismatch("discrete_energy: state layout mismatch");
        if (penalty.tau < penalty.threshold * (1.0 - 1e-12))
            throw UnstablePenalty(penalty.tau, penalty.threshold);
        const double kinetic = st.v.dot(H_.cwiseProduct(st.v));
        switch (kind) {
            case ProblemKind::Dirichlet1D: {
                // v^T H v + u^T At u + sum_b (sqrt(h a)(B S u)_b - u_b/sqrt(h a))^2
                //                    + (tau - 1/a) (u_0^2 + u_N^2)/h
                const auto& op = *op_;
                const double a = borrowing_constant(order);
                const double ha = op.h * a;
                const int n = op.n;
                Eigen::MatrixXd At = op.A;
                At.noalias() -= op.h * a * (op.S.row(0).transpose() * op.S.row(0));
                At.noalias() -=
                    op.h * a * (op.S.row(n - 1).transpose() * op.S.row(n - 1));
                const double su0 = op.S.row(0).dot(st.u);
                const double suN = op.S.row(n - 1).dot(st.u);
                const double b0 = std::sqrt(ha) * (-su0) - st.u(0) / std::sqrt(ha);
                const double bN = std::sqrt(ha) * (suN)-st.u(n - 1) / std::sqrt(ha);
                return kinetic + st.u.dot(At * st.u) + b0 * b0 + bN * bN +
                       (penalty.tau - 1.0 / a) *
                           (st.u(0) * st.u(0) + st.u(n - 1) * st.u(n - 1)) / op.h;
            }
            case ProblemKind::Neumann1D:
                return kinetic + st.u.dot(op_->A * st.u);
            case ProblemKind::Interface1D:
                return kinetic + st.u.dot(K_ * st.u);
            case ProblemKind::Dirichlet2DPeriodicY: {
                // v^T H v - u^T H L(u); H L is symmetric negative semi-definite.
                Eigen::Map<const Eigen::MatrixXd> U(st.u.data(), ny_, nx_);
                Eigen::MatrixXd Lu = Ly_ * U;
                Lu.noalias() += U * LxT_;
                Eigen::Map<Eigen::VectorXd> lu(Lu.data(), Lu.size());
                return kinetic - st.u.dot(H_.cwiseProduct(lu));
            }
        }
        return kinetic;
    }

    const Eigen::VectorXd& grid() const { return grid_; }   // x coordinates
    const Eigen::VectorXd& ygrid() const { return ygrid_; } // 2D only
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int n_left() const { return nL_; } // interface only
    double h_left() const { return hL_; }
    double h_right() const { return hR_; }
    double interface_symmetry_defect() const { return Ksym_err_; }
    const Eigen::VectorXd& norm_diagonal() const { return H_; }

private:
    Eigen::SparseMatrix<double> L_;
    Eigen::SparseMatrix<double> K_; // interface conserved form
    Eigen::VectorXd lift0_, lift1_;
    TimeFunc g0_, g1_;
    SpaceTimeFunc forcing_;
    Eigen::VectorXd grid_, ygrid_;
    Eigen::VectorXd H_;
    std::shared_ptr<const SbpOperatorSet> op_;
    double Ksym_err_ = 0.0;

    // 2D pieces
    int nx_ = 0, ny_ = 0, nL_ = 0;
    double hL_ = 0.0, hR_ = 0.0;
    Eigen::SparseMatrix<double> LxT_, Ly_;
    Eigen::VectorXd liftx0_, liftx1_;
    SpaceTimeFunc g2d0_, g2d1_;
};

} // namespace sbpwave
