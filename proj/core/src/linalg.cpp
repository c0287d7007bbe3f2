#include "spectra/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "spectra/error.hpp"

namespace spectra {

int rank_svd(const Eigen::MatrixXd& A, double rel_tol) {
    if (A.rows() == 0 || A.cols() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > rel_tol * s(0)) ++r;
    return r;
}

RankDecision rank_with_gap(const Eigen::MatrixXd& A, double rel_tol, double required_ratio) {
    RankDecision d;
    if (A.rows() == 0 || A.cols() == 0) {
        d.conclusive = true;
        d.gap_ratio = std::numeric_limits<double>::infinity();
        return d;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    const auto& s = svd.singularValues();
    d.singular_values = s;
    if (s(0) < 1e-12) { // no signal at all: the zero map has rank 0, cleanly
        d.rank = 0;
        d.conclusive = true;
        d.gap_ratio = std::numeric_limits<double>::infinity();
        return d;
    }
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > rel_tol * s(0)) ++r;
    d.rank = r;
    if (r == s.size()) {
        // Full column/row rank: no tail to separate from.
        d.gap_ratio = std::numeric_limits<double>::infinity();
        d.conclusive = true;
        return d;
    }
    const double below = s(r);
    d.gap_ratio = below == 0.0 ? std::numeric_limits<double>::infinity() : s(r - 1) / below;
    d.conclusive = d.gap_ratio >= required_ratio;
    return d;
}

Eigen::MatrixXd orthonormal_columns(const Eigen::MatrixXd& A, double rel_tol) {
    if (A.cols() == 0) return Eigen::MatrixXd(A.rows(), 0);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    // The floor max(s_0, 1) keeps the cut meaningful when A is numerically
    // zero (projections of orthogonal spaces land at roundoff scale, and a
    // purely relative cut would keep that noise).
    const double cut = rel_tol * std::max(s.size() > 0 ? s(0) : 0.0, 1.0);
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cut) ++r;
    return svd.matrixU().leftCols(r);
}

Eigen::VectorXd principal_angle_cosines(const Eigen::MatrixXd& U, const Eigen::MatrixXd& V) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(U.transpose() * V);
    return svd.singularValues();
}

bool same_span(const Eigen::MatrixXd& U, const Eigen::MatrixXd& V, double angle_tol) {
    if (U.cols() != V.cols()) return false;
    if (U.cols() == 0) return true;
    const Eigen::VectorXd c = principal_angle_cosines(U, V);
    return (c.array() > 1.0 - angle_tol).all();
}

int rank_exact(const RationalMatrix& A) {
    if (A.empty()) return 0;
    RationalMatrix M = A;
    const std::size_t rows = M.size(), cols = M[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && M[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(M[pivot], M[rank]);
        const Rational p = M[rank][col];
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (M[r][col] == 0) continue;
            const Rational f = M[r][col] / p;
            for (std::size_t c = col; c < cols; ++c) M[r][c] -= f * M[rank][c];
        }
        ++rank;
    }
    return static_cast<int>(rank);
}

RationalMatrix to_rational(const Eigen::MatrixXd& A) {
    RationalMatrix M(A.rows(), std::vector<Rational>(A.cols()));
    for (Eigen::Index i = 0; i < A.rows(); ++i)
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
            const double v = A(i, j);
            if (!std::isfinite(v)) throw UsageError("non-finite entry in exact-rank input");
            M[i][j] = Rational(v);
        }
    return M;
}

Eigen::VectorXd svec(const Eigen::MatrixXd& S) {
    const int n = static_cast<int>(S.rows());
    Eigen::VectorXd v(n * (n + 1) / 2);
    const double s2 = std::sqrt(2.0);
    int k = 0;
    for (int i = 0; i < n; ++i) {
        v(k++) = S(i, i);
        for (int j = i + 1; j < n; ++j) v(k++) = s2 * S(i, j);
    }
    return v;
}

Eigen::MatrixXd sunvec(const Eigen::VectorXd& v, int n) {
    Eigen::MatrixXd S(n, n);
    const double inv_s2 = 1.0 / std::sqrt(2.0);
    int k = 0;
    for (int i = 0; i < n; ++i) {
        S(i, i) = v(k++);
        for (int j = i + 1; j < n; ++j) {
            S(i, j) = S(j, i) = inv_s2 * v(k++);
        }
    }
    return S;
}

Eigen::MatrixXd skew_basis_element(int n, int i, int j) {
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    A(i - 1, j - 1) = 1.0;
    A(j - 1, i - 1) = -1.0;
    return A;
}

} // namespace spectra
