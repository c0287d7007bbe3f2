#pragma once

#include <vector>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

namespace spectra {

using Rational = boost::multiprecision::cpp_rational;
using RationalMatrix = std::vector<std::vector<Rational>>;

// Number of singular values above rel_tol * sigma_max (0 for a zero matrix).
int rank_svd(const Eigen::MatrixXd& A, double rel_tol = 1e-10);

// Rank outcome for sampled direction sets, where integer certainty matters:
// the rank is taken at the largest relative singular-value gap and is only
// `conclusive` when values above the per-spec relative floor are separated
// from the rest by at least the required ratio.
struct RankDecision {
    int rank = 0;
    bool conclusive = false;
    double gap_ratio = 0.0; // sigma_r / sigma_{r+1}; +inf encoded as a large value
    Eigen::VectorXd singular_values;
};
RankDecision rank_with_gap(const Eigen::MatrixXd& A, double rel_tol, double required_ratio);

// Orthonormal basis of the column span of A (columns). Singular values at or
// below rel_tol * max(sigma_max, 1) are dropped, so a numerically zero A
// yields zero columns.
Eigen::MatrixXd orthonormal_columns(const Eigen::MatrixXd& A, double rel_tol = 1e-10);

// Cosines of the principal angles between the spans of the orthonormal
// column blocks U and V (descending).
Eigen::VectorXd principal_angle_cosines(const Eigen::MatrixXd& U, const Eigen::MatrixXd& V);
// True iff span(U) == span(V): equal dimensions and all principal-angle
// cosines within angle_tol of 1.
bool same_span(const Eigen::MatrixXd& U, const Eigen::MatrixXd& V, double angle_tol = 1e-8);

// Exact rank over the rationals by fraction-free Gaussian elimination.
int rank_exact(const RationalMatrix& A);
// Exact conversion (every finite double is rational).
RationalMatrix to_rational(const Eigen::MatrixXd& A);

// Symmetric matrices as vectors of R^{n(n+1)/2} under the inner-product
// isometry (off-diagonal entries scaled by sqrt(2)).
Eigen::VectorXd svec(const Eigen::MatrixXd& S);
Eigen::MatrixXd sunvec(const Eigen::VectorXd& v, int n);

// Skew-symmetric basis element E_ij - E_ji for 1-based i < j.
Eigen::MatrixXd skew_basis_element(int n, int i, int j);

} // namespace spectra
