// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Set SBPWAVE_ACCEPT_QUICK=1 to restrict the 2D criterion to its
// order-2 rows (the long-running part).

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "sbpwave/sbpwave.hpp"

using namespace sbpwave;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& what, double seconds) {
    std::printf("criterion %2d: %s  %s  (%.1fs)\n", criterion,
                ok ? "PASS" : "FAIL", what.c_str(), seconds);
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double s() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

bool within(double got, double want, double tol) {
    return std::abs(got - want) <= tol;
}

bool within_rel(double got, double want, double rel) {
    return std::abs(got - want) <= rel * std::abs(want);
}

double finest_rate(const ConvergenceReport& rep) {
    return rep.q_l2.back();
}

// --- criterion 1: operator validity --------------------------------------
bool c1() {
    const int n = 101;
    const double h = 1.0 / (n - 1);
    bool ok = true;
    for (int order : {2, 4, 6}) {
        const auto op = build_sbp(order, n, h);
        const int p = order / 2;
        Eigen::MatrixXd bs = Eigen::MatrixXd::Zero(n, n);
        bs.row(0) = -op.S.row(0);
        bs.row(n - 1) = op.S.row(n - 1);
        const double scale = std::max(1.0, op.A.cwiseAbs().maxCoeff());
        ok &= (op.H.asDiagonal() * op.D + op.A - bs).cwiseAbs().maxCoeff() <=
              1e-12 * scale;
        ok &= (op.A - op.A.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.A,
                                                          Eigen::EigenvaluesOnly);
        ok &= es.eigenvalues().minCoeff() >=
              -1e-10 * es.eigenvalues().cwiseAbs().maxCoeff();
        const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(n, 0.0, 1.0);
        for (int k = 0; k <= p + 1; ++k) {
            Eigen::VectorXd exact = Eigen::VectorXd::Zero(n);
            if (k >= 2)
                exact = double(k) * (k - 1) * x.array().pow(k - 2).matrix();
            ok &= (op.D * x.array().pow(k).matrix() - exact).cwiseAbs().maxCoeff() <=
                  1e-9 / (h * h);
        }
    }
    return ok;
}

// --- criterion 2: borrowing constants ------------------------------------
bool c2() {
    const int n = 101;
    const double h = 1.0 / (n - 1);
    bool ok = true;
    for (int order : {2, 4, 6}) {
        const auto op = build_sbp(order, n, h);
        const double a = borrowing_constant(order);
        ok &= verify_borrowing(op, a).psd;
        ok &= !verify_borrowing(op, 1.2 * a).psd;
    }
    return ok;
}

// --- criterion 3: boundary-system oracles --------------------------------
bool c3() {
    const auto rel = [](const Eigen::MatrixXcd& got, const Eigen::MatrixXcd& want) {
        return (got - want).cwiseAbs().maxCoeff() /
               std::max(1.0, want.cwiseAbs().maxCoeff());
    };
    bool ok = true;
    ok &= rel(build_boundary_system(ProblemKind::Dirichlet1D, 2, 3.0).C0,
              tabulated::C_dirichlet2(3.0).cast<Complex>()) <= 1e-7;
    ok &= rel(build_boundary_system(ProblemKind::Dirichlet1D, 4, 3.0).C0,
              tabulated::C_dirichlet4(3.0).cast<Complex>()) <= 1e-7;
    ok &= rel(build_boundary_system(ProblemKind::Neumann1D, 4).C0,
              tabulated::C_neumann4().cast<Complex>()) <= 1e-7;
    const auto d6 = build_boundary_system(ProblemKind::Dirichlet1D, 6, 3.0);
    ok &= rel(d6.C0.leftCols(4),
              tabulated::C_dirichlet6_cols14(3.0).cast<Complex>()) <= 1e-7;
    const Eigen::VectorXcd c5 = tabulated::C_dirichlet6_col5();
    ok &= std::min({(d6.C0.col(4) - c5).cwiseAbs().maxCoeff(),
                    (d6.C0.col(5) - c5).cwiseAbs().maxCoeff(),
                    (d6.C0.col(4) - c5.conjugate()).cwiseAbs().maxCoeff(),
                    (d6.C0.col(5) - c5.conjugate()).cwiseAbs().maxCoeff()}) <=
          1e-7 * c5.cwiseAbs().maxCoeff();
    ok &= rel(build_boundary_system(ProblemKind::Interface1D, 2, 1.3, 2.0).C0,
              tabulated::C_interface2(1.3, 2.0).cast<Complex>()) <= 1e-7;
    ok &= rel(build_boundary_system(ProblemKind::Interface1D, 4, 1.3, 2.0).C0,
              tabulated::C_interface4(1.3, 2.0).cast<Complex>()) <= 1e-7;
    for (double tau = 2.0; tau <= 6.0; tau += 0.125) {
        const auto dc = determinant_condition(
            build_boundary_system(ProblemKind::Dirichlet1D, 2, tau));
        ok &= std::abs(dc.det_at_zero - Complex(5.0 - 2.0 * tau)) <= 1e-12;
    }
    ok &= std::abs(determinant_condition(
                       build_boundary_system(ProblemKind::Dirichlet1D, 4,
                                             tabulated::tau4_threshold()))
                       .det_at_zero) <= 1e-9;
    return ok;
}

// --- criterion 4: rank / coupling / membership ---------------------------
bool c4() {
    bool ok = true;
    const auto n4 = build_boundary_system(ProblemKind::Neumann1D, 4);
    ok &= determinant_condition(n4).rank == 3;
    ok &= within(std::abs(svd_coupling(n4)), 0.3095, 1e-3);
    ok &= column_space_membership(n4).member;
    const auto n6 = build_boundary_system(ProblemKind::Neumann1D, 6);
    ok &= determinant_condition(n6).rank == 5;
    ok &= within(std::abs(svd_coupling(n6)), 0.2072, 1e-3);
    ok &= column_space_membership(n6).member;
    const double r = 2.0;
    const auto i2 = build_boundary_system(
        ProblemKind::Interface1D, 2, 1.2 * (r + 1) / (4 * borrowing_constant(2)), r);
    ok &= !column_space_membership(i2).member;
    const auto i4 = build_boundary_system(
        ProblemKind::Interface1D, 4, 1.2 * (r + 1) / (4 * borrowing_constant(4)), r);
    ok &= column_space_membership(i4).member;
    for (int order : {2, 4, 6}) {
        const double thr = 1.0 / borrowing_constant(order);
        ok &= !determinant_condition(
                   build_boundary_system(ProblemKind::Dirichlet1D, order, thr))
                   .nonsingular;
        ok &= determinant_condition(build_boundary_system(ProblemKind::Dirichlet1D,
                                                          order, 1.01 * thr))
                  .nonsingular;
    }
    // The perturbation's binding check: membership flips for the perturbed
    // truncation direction.
    ok &= !perturbed_neumann_membership(4).member;
    ok &= !perturbed_neumann_membership(6).member;
    return ok;
}

// --- criterion 5: rate predictions ---------------------------------------
bool c5() {
    bool ok = true;
    const auto exp_rate = [&ok](RatePrediction rp, double overall) {
        ok &= rp.overall == overall;
    };
    // Dirichlet table: 6 entries.
    exp_rate(predict_rate(ProblemKind::Dirichlet1D, 2, 2.5), 1.5);
    exp_rate(predict_rate(ProblemKind::Dirichlet1D, 2, 3.0), 2.0);
    exp_rate(predict_rate(ProblemKind::Dirichlet1D, 4,
                          1.0 / borrowing_constant(4)), 2.5);
    exp_rate(predict_rate(ProblemKind::Dirichlet1D, 4,
                          1.2 / borrowing_constant(4)), 4.0);
    exp_rate(predict_rate(ProblemKind::Dirichlet1D, 6,
                          1.0 / borrowing_constant(6)), 3.5);
    exp_rate(predict_rate(ProblemKind::Dirichlet1D, 6,
                          1.2 / borrowing_constant(6)), 5.0);
    // Interface table: 4 entries.
    const double r = 2.0;
    exp_rate(predict_rate(ProblemKind::Interface1D, 2,
                          (r + 1) / (4 * borrowing_constant(2)), r), 1.5);
    exp_rate(predict_rate(ProblemKind::Interface1D, 2,
                          1.2 * (r + 1) / (4 * borrowing_constant(2)), r), 2.0);
    exp_rate(predict_rate(ProblemKind::Interface1D, 4,
                          (r + 1) / (4 * borrowing_constant(4)), r), 2.5);
    exp_rate(predict_rate(ProblemKind::Interface1D, 4,
                          1.2 * (r + 1) / (4 * borrowing_constant(4)), r), 4.0);
    // Neumann predictions (no penalty parameter): 2 / 4 / 5.
    exp_rate(predict_rate(ProblemKind::Neumann1D, 2), 2.0);
    exp_rate(predict_rate(ProblemKind::Neumann1D, 4), 4.0);
    exp_rate(predict_rate(ProblemKind::Neumann1D, 6), 5.0);
    return ok;
}

// --- criterion 6: Dirichlet table ----------------------------------------
bool c6() {
    const double want_rate[3][3] = {{1.50, 2.50, 3.49},
                                    {2.00, 3.97, 5.56},
                                    {2.00, 3.97, 5.74}};
    const double want_e801[3][3] = {{7.04e-2, 1.31e-3, 1.08e-4},
                                    {2.19e-3, 4.41e-7, 1.54e-9},
                                    {2.19e-3, 4.41e-7, 3.44e-10}};
    const char* blocks[3] = {"table3-top", "table3-mid", "table3-bottom"};
    bool ok = true;
    for (int b = 0; b < 3; ++b) {
        const int orders[3] = {2, 4, 6};
        for (int j = 0; j < 3; ++j) {
            const auto rep = run_study(preset_study(blocks[b], orders[j]));
            for (const auto& lv : rep.levels) ok &= !lv.failed;
            const double q = finest_rate(rep);
            const double e = rep.levels.back().l2;
            const bool okq = within(q, want_rate[b][j], 0.15);
            const bool oke = within_rel(e, want_e801[b][j], 0.05);
            if (!okq || !oke)
                std::printf("  [c6] %s order %d: q=%.3f (want %.2f) e801=%.3e "
                            "(want %.2e)\n",
                            blocks[b], orders[j], q, want_rate[b][j], e,
                            want_e801[b][j]);
            ok &= okq && oke;
        }
    }
    return ok;
}

// --- criterion 7: Neumann table ------------------------------------------
bool c7() {
    bool ok = true;
    for (int order : {4, 6}) {
        const auto rep = run_study(preset_study("table4", order));
        const double q = finest_rate(rep);
        const bool okq = order == 4 ? q >= 4.0 - 0.15 : q >= 5.0 - 0.35;
        const auto repp = run_study(preset_study("table4-perturbed", order));
        const double qp = finest_rate(repp);
        const bool okp = within(qp, order == 4 ? 3.0 : 4.0, 0.25);
        if (!okq || !okp)
            std::printf("  [c7] order %d: q=%.3f qpert=%.3f\n", order, q, qp);
        ok &= okq && okp;
    }
    return ok;
}

// --- criterion 8: interface table ----------------------------------------
bool c8() {
    bool ok = true;
    for (int order : {2, 4, 6}) {
        const int p = order / 2;
        const auto rep_lim = run_study(preset_study("table5-top", order));
        const double ql = finest_rate(rep_lim);
        const bool okl = within(ql, p + 0.5, 0.15);
        const auto rep = run_study(preset_study("table5-mid", order));
        const double q = finest_rate(rep);
        const bool okq = order == 2   ? within(q, 2.00, 0.15)
                         : order == 4 ? within(q, 3.95, 0.15)
                                      : q >= 5.0;
        if (!okl || !okq)
            std::printf("  [c8] order %d: q(limit)=%.3f q(1.2)=%.3f\n", order, ql,
                        q);
        ok &= okl && okq;
    }
    return ok;
}

// --- criterion 9: 2D table ------------------------------------------------
bool c9(bool quick) {
    bool ok = true;
    const std::vector<int> orders = quick ? std::vector<int>{2}
                                          : std::vector<int>{2, 4, 6};
    for (int order : orders) {
        const int p = order / 2;
        const auto rep_lim = run_study(preset_study("table6-top", order));
        const double ql = finest_rate(rep_lim);
        const bool okl = within(ql, p + 0.5, 0.15);
        // Off-threshold rows: the printed N<=201 entries fluctuate strongly
        // level to level, so the rate is aggregated over the two finest pairs.
        const auto rep = run_study(preset_study("table6-bottom", order));
        const auto& lv = rep.levels;
        const double q2 =
            std::log2(lv[lv.size() - 3].l2 / lv.back().l2) / 2.0;
        const bool okq = order == 6 ? q2 >= 5.0 - 0.35
                                    : within(q2, 2.0 * p, 0.35);
        if (!okl || !okq)
            std::printf("  [c9] order %d: q(limit)=%.3f q(1.2,agg)=%.3f\n", order,
                        ql, q2);
        ok &= okl && okq;
    }
    return ok;
}

// --- criterion 10: property suite -----------------------------------------
bool c10() {
    bool ok = true;
    // Energy monotone along a standing-wave Dirichlet solve.
    {
        const int n = 101;
        const double h = 1.0 / (n - 1);
        const auto op = build_sbp(4, n, h);
        const auto sys = SemiDiscreteSystem::dirichlet_1d(
            op, 1.2 * min_penalty(ProblemKind::Dirichlet1D, 4));
        const auto sol = standing_wave_1d();
        StateVector st{sol.sample(sys.grid(), 0.0), sol.sample_ut(sys.grid(), 0.0),
                       0.0};
        const auto res = simulate(sys, st, {0.0, 2.0, 0.1 * h}, true);
        for (size_t k = 1; k < res.energy_trace.size(); ++k)
            ok &= res.energy_trace[k].second <=
                  res.energy_trace[k - 1].second * (1.0 + 1e-12);
    }
    // Root counts, conjugate symmetry, decay margin, s_plus sign: 200 samples.
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> re(0.001, 1.0), im(-1.0, 1.0),
        sym(-4.0, 0.0);
    for (int trial = 0; trial < 200; ++trial) {
        const Complex st(re(rng), im(rng));
        for (int order : {2, 4, 6}) {
            const int p = order / 2;
            const auto cr = characteristic_roots(order, st);
            ok &= cr.all.size() == static_cast<size_t>(order);
            ok &= cr.admissible.size() == static_cast<size_t>(p);
            for (const Complex k : cr.admissible) ok &= std::abs(k) < 1.0;
            const auto crc = characteristic_roots(order, std::conj(st));
            for (int k = 0; k < p; ++k) {
                double best = 1e9;
                for (int j = 0; j < p; ++j)
                    best = std::min(best, std::abs(crc.admissible[j] -
                                                   std::conj(cr.admissible[k])));
                ok &= best < 1e-8;
            }
            ok &= root_decay_margin(order, st) >= -10.0 * std::norm(st);
        }
        ok &= s_plus(st, sym(rng) / 1e-4, 0.01).real() > 0.0;
    }
    return ok;
}

} // namespace

int main() {
    const char* quick_env = std::getenv("SBPWAVE_ACCEPT_QUICK");
    const bool quick = quick_env && std::string(quick_env) == "1";

    {
        Timer t;
        const bool ok = c1();
        report(1, ok, "operator validity (decomposition, PSD, exactness)", t.s());
    }
    {
        Timer t;
        const bool ok = c2();
        report(2, ok, "borrowing constants pass at alpha, fail at 1.2 alpha",
               t.s());
    }
    {
        Timer t;
        const bool ok = c3();
        report(3, ok, "boundary-system matrices match reference data", t.s());
    }
    {
        Timer t;
        const bool ok = c4();
        report(4, ok, "ranks, couplings, memberships", t.s());
    }
    {
        Timer t;
        const bool ok = c5();
        report(5, ok, "rate predictions (all table entries)", t.s());
    }
    {
        Timer t;
        const bool ok = c6();
        report(6, ok, "1D Dirichlet convergence table", t.s());
    }
    {
        Timer t;
        const bool ok = c7();
        report(7, ok, "Neumann convergence incl. perturbed operator", t.s());
    }
    {
        Timer t;
        const bool ok = c8();
        report(8, ok, "interface convergence table (ratio 2:1)", t.s());
    }
    {
        Timer t;
        const bool ok = c9(quick);
        report(9, ok,
               quick ? "2D convergence (quick: order-2 rows)" : "2D convergence",
               t.s());
    }
    {
        Timer t;
        const bool ok = c10();
        report(10, ok, "property suite (energy, roots, margins, signs)", t.s());
    }
    if (g_failures) std::printf("%d criterion(s) FAILED\n", g_failures);
    else std::printf("all criteria passed\n");
    return g_failures == 0 ? 0 : 1;
}
