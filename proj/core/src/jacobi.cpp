#include "spectra/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "spectra/error.hpp"

namespace spectra {

namespace {

double off_diagonal_norm(const Eigen::MatrixXd& A) {
    double s = 0.0;
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = 0; j < A.cols(); ++j) {
            if (i != j) s += A(i, j) * A(i, j);
        }
    }
    return std::sqrt(s);
}

} // namespace

EigenDecomposition jacobi_eigen(const Eigen::MatrixXd& X, int max_n) {
    const int n = static_cast<int>(X.rows());
    if (n < 1 || X.cols() != n) {
        throw UsageError("jacobi_eigen: matrix must be square and nonempty");
    }
    if (n > max_n) {
        std::ostringstream msg;
        msg << "jacobi_eigen: n = " << n << " exceeds the size cap of " << max_n;
        throw CapError(msg.str());
    }
    const double asym = (X - X.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12) {
        std::ostringstream msg;
        msg << "jacobi_eigen: matrix is not symmetric, ||X - X^T||_inf = " << asym;
        throw PreconditionError(msg.str());
    }

    Eigen::MatrixXd A = 0.5 * (X + X.transpose());
    Eigen::MatrixXd V = Eigen::MatrixXd::Identity(n, n); // accumulates A = V D V^T
    const double stop = 1e-14 * std::max(A.norm(), 1e-300);

    int sweeps = 0;
    const int sweep_cap = 64;
    while (off_diagonal_norm(A) > stop && sweeps < sweep_cap) {
        ++sweeps;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = A(p, q);
                if (std::abs(apq) <= stop / (n * n)) continue;
                const double app = A(p, p);
                const double aqq = A(q, q);
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = A(k, p);
                    const double akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = A(p, k);
                    const double aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = V(k, p);
                    const double vkq = V(k, q);
                    V(k, p) = c * vkp - s * vkq;
                    V(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return A(a, a) > A(b, b); });

    EigenDecomposition out;
    out.values.resize(n);
    out.U.resize(n, n);
    for (int r = 0; r < n; ++r) {
        out.values(r) = A(order[static_cast<std::size_t>(r)],
                          order[static_cast<std::size_t>(r)]);
        // Column order[r] of V is the eigenvector; store it as row r of U so
        // that X = U^T Diag(values) U.
        out.U.row(r) = V.col(order[static_cast<std::size_t>(r)]).transpose();
    }
    out.sweeps = sweeps;
    return out;
}

Eigen::MatrixXd reconstruct(const EigenDecomposition& decomposition) {
    return decomposition.U.transpose() * decomposition.values.asDiagonal() *
           decomposition.U;
}

} // namespace spectra
