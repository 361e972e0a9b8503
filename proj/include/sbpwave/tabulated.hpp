#pragma once

// Closed-form reference data for the boundary systems: entries of C(0), C'(0),
// and the truncation directions, derived by hand for each kind/order pair.
// These are frozen oracles for the assembly code in normal_mode.hpp.

#include <cmath>
#include <complex>

#include <Eigen/Dense>

namespace sbpwave::tabulated {

inline const double s3 = std::sqrt(3.0);

// Threshold penalty for the fourth-order Dirichlet scheme, 1/alpha_4 in closed
// form: 2(4834 sqrt(3) + 9569) / (177 (8 sqrt(3) + 37)).
inline double tau4_threshold() {
    return 2.0 * (4834.0 * s3 + 9569.0) / (177.0 * (8.0 * s3 + 37.0));
}

// C(0) for the second-order Dirichlet system; layout [sigma1, eps0, eps1].
// Derived by hand: row 0 is s^2 e0 + (2 tau - 4) e0 + 2 e1 - e2 = 0 and so on,
// with e_j = sigma1 kappa1^{j-2} for j >= 2 (the third row is negated to match
// the orientation used for the higher orders).
inline Eigen::MatrixXd C_dirichlet2(double tau) {
    Eigen::MatrixXd C(3, 3);
    C << -1.0, 2.0 * tau - 4.0, 2.0,
         -1.0, 1.0, 2.0,
         -1.0, 0.5, 1.0;
    return C;
}

// det C_2D(0, tau) = 5 - 2 tau.
inline double det_C_dirichlet2(double tau) { return 5.0 - 2.0 * tau; }

// C(0) for the fourth-order Dirichlet system; layout [sigma1, sigma2, eps0, eps1].
inline Eigen::MatrixXd C_dirichlet4(double tau) {
    Eigen::MatrixXd C(4, 4);
    C << -3.0, 3.0 - 4.0 * s3, (-122.0 + 48.0 * tau) / 17.0, 5.0,
         -1.0, -1.0, 85.0 / 59.0, 2.0,
         55.0 / 43.0, (85.0 + 12.0 * s3) / 43.0, -68.0 / 43.0, -59.0 / 43.0,
         -1.0 / 49.0, -(37.0 + 8.0 * s3) / 49.0, 17.0 / 49.0, 0.0;
    return C;
}

// C(0) for the fourth-order Neumann system; layout [eps0, eps1, sigma1, sigma2].
inline Eigen::MatrixXd C_neumann4() {
    Eigen::MatrixXd C(4, 4);
    C << 54.0 / 17.0, -59.0 / 17.0, 5.0 / 17.0, (11.0 - 4.0 * s3) / 17.0,
         -1.0, 2.0, -1.0, -1.0,
         4.0 / 43.0, -59.0 / 43.0, 55.0 / 43.0, (85.0 + 12.0 * s3) / 43.0,
         1.0 / 49.0, 0.0, -1.0 / 49.0, -(37.0 + 8.0 * s3) / 49.0;
    return C;
}

// Columns 1..4 of C(0) for the sixth-order Dirichlet system; layout
// [eps0, eps1, eps2, sigma1, sigma2, sigma3]. Column 1 depends on tau through
// k(tau) = 3.165067038 tau - 9.382128117.
inline Eigen::MatrixXd C_dirichlet6_cols14(double tau) {
    Eigen::MatrixXd C(6, 4);
    C << 3.165067038 * tau - 9.382128117, 8.024525606, -8.215717879, 2.979430728,
         1.823470407, 2.35039818, -1.867463026, 0.5704778157,
         -4.136345752, -4.137556867, 8.108447068, -4.615068241,
         0.8614698016, 1.159078186, -3.511693724, 2.565973129,
         -0.0951377428, -0.9156510516, 1.987601033, -1.25102831,
         -0.04002001476, 0.1875223549, -0.3471267779, 0.1996244378;
    return C;
}

// One member of the complex-conjugate pair of sigma columns (5 and 6) of the
// sixth-order Dirichlet C(0); tau-independent.
inline Eigen::VectorXcd C_dirichlet6_col5() {
    Eigen::VectorXcd c(6);
    c << std::complex<double>(3.368616929, 0.02305363188),
         std::complex<double>(1.00246526, 0.04694800264),
         std::complex<double>(-6.789853693, -0.2265966418),
         std::complex<double>(4.592688087, 0.1965568935),
         std::complex<double>(-3.188300477, -0.2835125258),
         std::complex<double>(0.3280801113, 0.1028755037);
    return c;
}

// C'(0) for the fourth-order Neumann system: only column 3 (sigma1) is nonzero,
// with entries known to 4 digits.
inline Eigen::MatrixXd Cprime_neumann4() {
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(4, 4);
    C.col(2) << -0.0588, 0.0, 1.1860, -0.0408;
    return C;
}

// C'(0) for the sixth-order Neumann system: only column 4 (sigma1) is nonzero.
inline Eigen::VectorXd Cprime_neumann6_col4() {
    Eigen::VectorXd c(6);
    c << -0.2598847290, 0.3269055745, -1.7658674536, 1.8336101263, -0.6935339173,
         0.0921421124;
    return c;
}

// Truncation directions [coefficient of h^{p+2} U^{(p+2)}(0) per closure row].
inline Eigen::VectorXd That_dirichlet2() {
    Eigen::VectorXd v(3);
    v << -1.0, 0.0, 0.0;
    return v;
}

inline Eigen::VectorXd That_dirichlet4() {
    Eigen::VectorXd v(4);
    v << 11.0 / 12.0, -1.0 / 12.0, 5.0 / 516.0, 11.0 / 588.0;
    return v;
}

inline Eigen::VectorXd That_neumann2() {
    Eigen::VectorXd v(1);
    v << -1.0 / 3.0;
    return v;
}

inline Eigen::VectorXd That_neumann4() {
    Eigen::VectorXd v(4);
    v << 43.0 / 204.0, -1.0 / 12.0, 5.0 / 516.0, 11.0 / 588.0;
    return v;
}

inline Eigen::VectorXd That_neumann6() {
    Eigen::VectorXd v(6);
    v << -0.3287481378, 0.2200796359, -0.5608447068, 0.2044006966, -0.1710063053,
         0.0514543047;
    return v;
}

// The sixth-order Dirichlet direction shares rows 1..5 with the Neumann one;
// only row 0 differs.
inline Eigen::VectorXd That_dirichlet6() {
    Eigen::VectorXd v = That_neumann6();
    v(0) = -0.9617615454;
    return v;
}

// C(0) for the second-order interface system with dimensionless penalty group
// th = tau * h_L and mesh ratio r = h_L / h_R.
// Layout [sigma1L, sigma1R, eps0L, eps-1L, eps0R, eps1R].
inline Eigen::MatrixXd C_interface2(double th, double r) {
    Eigen::MatrixXd C(6, 6);
    C << -0.5, r / 2.0, -1.0 + 2.0 * th, 0.0, 1.5 + 1.5 * r - 2.0 * th, -2.0 * r,
         -1.0, 0.0, 0.0, 2.0, -1.0, 0.0,
         1.0, 0.0, -0.25, -1.0, 0.25, 0.0,
         1.0 / (2.0 * r), -0.5, 1.5 + 1.5 / r - 2.0 * th / r, -2.0 / r,
             -1.0 + 2.0 * th / r, 0.0,
         0.0, -1.0, -1.0, 0.0, 0.0, 2.0,
         0.0, 1.0, 0.25, 0.0, -0.25, -1.0;
    return C;
}

inline Eigen::MatrixXd Cprime_interface2(double r) {
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(6, 6);
    C(2, 0) = 1.0;
    C(5, 1) = 1.0 / r;
    return C;
}

// C(0) for the fourth-order interface system.
// Layout [sigma1L, sigma2L, sigma1R, sigma2R, eps0L, eps-1L, eps0R, eps1R].
inline Eigen::MatrixXd C_interface4(double th, double r) {
    Eigen::MatrixXd C(8, 8);
    C << -23.0 / 17.0, (31.0 - 36.0 * s3) / 17.0, 28.0 * r / 17.0,
             4.0 * r * (8.0 * s3 - 5.0) / 17.0, (48.0 * th - 34.0) / 17.0,
             13.0 / 17.0, (44.0 * r - 48.0 * th + 44.0) / 17.0, -72.0 * r / 17.0,
         -1.0, -1.0, 0.0, 0.0, 13.0 / 59.0, 2.0, -72.0 / 59.0, 0.0,
         55.0 / 43.0, (12.0 * s3 + 85.0) / 43.0, 0.0, 0.0, -32.0 / 43.0,
             -59.0 / 43.0, 36.0 / 43.0, 0.0,
         -1.0 / 49.0, -(8.0 * s3 + 37.0) / 49.0, 0.0, 0.0, 9.0 / 49.0, 0.0,
             -8.0 / 49.0, 0.0,
         28.0 / (17.0 * r), 4.0 * (8.0 * s3 - 5.0) / (17.0 * r), -23.0 / 17.0,
             (31.0 - 36.0 * s3) / 17.0, (44.0 * r - 48.0 * th + 44.0) / (17.0 * r),
             -72.0 / (17.0 * r), (48.0 * th - 34.0 * r) / (17.0 * r), 13.0 / 17.0,
         0.0, 0.0, -1.0, -1.0, -72.0 / 59.0, 0.0, 13.0 / 59.0, 2.0,
         0.0, 0.0, 55.0 / 43.0, (12.0 * s3 + 85.0) / 43.0, 36.0 / 43.0, 0.0,
             -32.0 / 43.0, -59.0 / 43.0,
         0.0, 0.0, -1.0 / 49.0, -(8.0 * s3 + 37.0) / 49.0, -8.0 / 49.0, 0.0,
             9.0 / 49.0, 0.0;
    return C;
}

inline Eigen::MatrixXd Cprime_interface4(double r) {
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(8, 8);
    C(0, 0) = -9.0 / 17.0;
    C(0, 2) = 8.0 / 17.0;
    C(2, 0) = 51.0 / 43.0;
    C(3, 0) = -2.0 / 49.0;
    C(4, 0) = 8.0 / (17.0 * r);
    C(4, 2) = -9.0 / (17.0 * r);
    C(6, 2) = 51.0 / (43.0 * r);
    C(7, 2) = -2.0 / (49.0 * r);
    return C;
}

inline Eigen::VectorXd That_interface2(double r) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(6);
    v(0) = 2.0 / 3.0 + 1.0 / (3.0 * r * r);
    v(3) = -(r * r + 2.0) / (3.0 * r * r * r);
    return v;
}

inline Eigen::VectorXd That_interface4(double r) {
    Eigen::VectorXd v(8);
    const double r4 = r * r * r * r;
    v << 115.0 / 204.0 - 6.0 / (17.0 * r * r * r), -1.0 / 12.0, 5.0 / 516.0,
         11.0 / 588.0, 115.0 / (204.0 * r4) - 6.0 / (17.0 * r), -1.0 / (12.0 * r4),
         5.0 / (516.0 * r4), 11.0 / (588.0 * r4);
    return v;
}

} // namespace sbpwave::tabulated
