#pragma once

// Kronecker-product actions on 2D fields without materializing the product
// matrix. Fields are stored as (ny x nx) matrices, y index fastest (column-major
// flattening matches the A_x (x) I_y ordering with y running fastest).

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "sbpwave/errors.hpp"
#include "sbpwave/operators.hpp"
#include "sbpwave/periodic.hpp"

namespace sbpwave {

// (D_x (x) I_y) field: apply an x-direction operator along the second index.
inline Eigen::MatrixXd apply_kron_x(const Eigen::MatrixXd& Dx,
                                    const Eigen::MatrixXd& field) {
    if (field.cols() != Dx.cols())
        throw DimensionMismatch("apply_kron_x: field has " +
                                std::to_string(field.cols()) + " x-points, operator " +
                                std::to_string(Dx.cols()));
    return field * Dx.transpose();
}

// (I_x (x) D_y) field: apply a periodic y-direction operator along the first index.
inline Eigen::MatrixXd apply_kron_y(const PeriodicOperator& opy,
                                    const Eigen::MatrixXd& field) {
    if (field.rows() != opy.n)
        throw DimensionMismatch("apply_kron_y: field has " +
                                std::to_string(field.rows()) + " y-points, operator " +
                                std::to_string(opy.n));
    return opy.matrix() * field;
}

// Full tensor Laplacian (D_xx (x) I + I (x) D_yyp) applied to a field.
inline Eigen::MatrixXd apply_2d(const SbpOperatorSet& opx, const PeriodicOperator& opy,
                                const Eigen::MatrixXd& field) {
    if (field.cols() != opx.n || field.rows() != opy.n)
        throw DimensionMismatch("apply_2d: field is " + std::to_string(field.rows()) +
                                "x" + std::to_string(field.cols()) + ", operators are " +
                                std::to_string(opy.n) + " (y) and " +
                                std::to_string(opx.n) + " (x)");
    return apply_kron_x(opx.D, field) + apply_kron_y(opy, field);
}

} // namespace sbpwave
