#pragma once

#include <Eigen/Core>

namespace spectra {

// Eigendecomposition of a symmetric matrix, X = U^T Diag(values) U.
// Rows of U are the eigenvectors; values are sorted descending, with ties
// broken by the original column order (stable).
struct EigenDecomposition {
    Eigen::VectorXd values;
    Eigen::MatrixXd U;
    int sweeps = 0;
};

// Cyclic Jacobi rotation method. Requires ||X - X^T||_inf <= 1e-12 and
// n <= max_n; iterates sweeps until every off-diagonal entry is below
// 1e-14 * ||X||_F, with a hard cap of 64 sweeps.
EigenDecomposition jacobi_eigen(const Eigen::MatrixXd& X, int max_n = 32);

// Reconstruction U^T Diag(values) U, for residual checks.
Eigen::MatrixXd reconstruct(const EigenDecomposition& decomposition);

} // namespace spectra
