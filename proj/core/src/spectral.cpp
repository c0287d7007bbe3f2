#include "spectra/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/QR>

#include "spectra/error.hpp"
#include "spectra/linalg.hpp"

namespace spectra {

SpectralPoint spectral_point(const Eigen::MatrixXd& X) {
    const EigenDecomposition d = jacobi_eigen(X);
    return {X, d.values, d.U};
}

Eigen::VectorXd lambda(const Eigen::MatrixXd& X) { return jacobi_eigen(X).values; }

Eigen::MatrixXd lift_point(const Eigen::VectorXd& x, const Eigen::MatrixXd& U) {
    if (U.rows() != U.cols() || U.rows() != x.size()) {
        throw UsageError("lift_point: U must be square with the size of x");
    }
    return U.transpose() * x.asDiagonal() * U;
}

Eigen::MatrixXd random_orthogonal(int n, Rng& rng) {
    if (n < 1) throw UsageError("random_orthogonal: n must be positive");
    const Eigen::MatrixXd G = rng.gaussian_matrix(n, n);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
    Eigen::MatrixXd Q = qr.householderQ();
    const Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
    }
    return Q;
}

int orbit_dimension(const Eigen::VectorXd& x, double tol) {
    const Partition P = partition_of_point(x, tol);
    int dim = 0;
    for (int i = 0; i < P.num_blocks(); ++i) {
        for (int j = i + 1; j < P.num_blocks(); ++j) {
            dim += static_cast<int>(P.block(i).size()) *
                   static_cast<int>(P.block(j).size());
        }
    }
    return dim;
}

int stabilizer_dimension(const Eigen::VectorXd& x, double tol) {
    const Partition P = partition_of_point(x, tol);
    int dim = 0;
    for (int k = 0; k < P.num_blocks(); ++k) {
        const int s = static_cast<int>(P.block(k).size());
        dim += s * (s - 1) / 2;
    }
    return dim;
}

int orbit_dimension_numeric(const Eigen::VectorXd& x) {
    const int n = static_cast<int>(x.size());
    if (n < 1) throw UsageError("orbit_dimension_numeric: empty vector");
    const int pairs = n * (n - 1) / 2;
    if (pairs == 0) return 0;
    const Eigen::MatrixXd D = x.asDiagonal();
    // Columns: svec of [A, Diag(x)] for each skew basis element A = E_ij - E_ji.
    Eigen::MatrixXd map(n * (n + 1) / 2, pairs);
    int col = 0;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            const Eigen::MatrixXd A = skew_basis_element(n, i, j);
            const Eigen::MatrixXd C = A * D - D * A;
            map.col(col++) = svec(C);
        }
    }
    return rank_svd(map);
}

BlockMatrix::BlockMatrix(OrderedPartition p, std::vector<Eigen::MatrixXd> b)
    : partition(std::move(p)), blocks(std::move(b)) {
    if (static_cast<int>(blocks.size()) != partition.num_blocks()) {
        throw UsageError("BlockMatrix: one matrix per block required");
    }
    for (int k = 0; k < partition.num_blocks(); ++k) {
        const auto size = static_cast<Eigen::Index>(partition.block(k).size());
        if (blocks[static_cast<std::size_t>(k)].rows() != size ||
            blocks[static_cast<std::size_t>(k)].cols() != size) {
            std::ostringstream msg;
            msg << "BlockMatrix: block " << k << " must be " << size << "x" << size;
            throw UsageError(msg.str());
        }
    }
}

Eigen::MatrixXd embed(const BlockMatrix& B) {
    const int n = B.n();
    Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < B.partition.num_blocks(); ++k) {
        const auto& idx = B.partition.block(k);
        const auto& Xb = B.blocks[static_cast<std::size_t>(k)];
        for (std::size_t r = 0; r < idx.size(); ++r) {
            for (std::size_t c = 0; c < idx.size(); ++c) {
                X(idx[r] - 1, idx[c] - 1) = Xb(static_cast<Eigen::Index>(r),
                                               static_cast<Eigen::Index>(c));
            }
        }
    }
    return X;
}

Eigen::VectorXd lambda_sigma(const BlockMatrix& B) {
    Eigen::VectorXd out(B.n());
    int at = 0;
    for (const auto& Xb : B.blocks) {
        const Eigen::VectorXd vals = lambda(Xb);
        out.segment(at, vals.size()) = vals;
        at += static_cast<int>(vals.size());
    }
    return out;
}

BlockSpectrumAgreement check_block_spectrum_agreement(const BlockMatrix& B,
                                                      double tol) {
    BlockSpectrumAgreement out;
    const Eigen::VectorXd per_block = lambda_sigma(B);

    out.separated = true;
    int at = 0;
    double prev_min = 0.0;
    for (std::size_t k = 0; k < B.blocks.size(); ++k) {
        const int size = static_cast<int>(B.partition.block(static_cast<int>(k)).size());
        const double block_max = per_block(at);
        const double block_min = per_block(at + size - 1);
        if (k > 0 && !(prev_min > block_max)) {
            out.separated = false;
            std::ostringstream msg;
            msg << "block " << k - 1 << " spectrum reaches down to " << prev_min
                << " while block " << k << " reaches up to " << block_max
                << "; strict separation violated";
            out.diagnostic = msg.str();
            break;
        }
        prev_min = block_min;
        at += size;
    }
    if (!out.separated) return out;

    const Eigen::VectorXd full = lambda(embed(B));
    const double err = (full - per_block).cwiseAbs().maxCoeff();
    out.agrees = err <= tol;
    if (!out.agrees) {
        std::ostringstream msg;
        msg << "blockwise and embedded spectra differ by " << err;
        out.diagnostic = msg.str();
    }
    return out;
}

} // namespace spectra
