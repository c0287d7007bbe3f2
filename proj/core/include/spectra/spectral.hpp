#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "spectra/jacobi.hpp"
#include "spectra/partition.hpp"
#include "spectra/rng.hpp"

namespace spectra {

// A symmetric matrix together with its eigendecomposition
// X = U^T Diag(eigenvalues) U, eigenvalues descending, rows of U the
// eigenvectors.
struct SpectralPoint {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenbasis;
};

// Eigendecomposition wrapper; throws on non-symmetric input.
SpectralPoint spectral_point(const Eigen::MatrixXd& X);

// Descending eigenvalues of a symmetric matrix.
Eigen::VectorXd lambda(const Eigen::MatrixXd& X);

// U^T Diag(x) U: the point of the orbit of Diag(x) selected by U.
Eigen::MatrixXd lift_point(const Eigen::VectorXd& x, const Eigen::MatrixXd& U);

// Haar-distributed orthogonal matrix: QR of a standard Gaussian matrix with
// the R-diagonal sign correction.
Eigen::MatrixXd random_orthogonal(int n, Rng& rng);

// Dimension of the orthogonal-conjugation orbit of Diag(x), from the
// equal-coordinate partition: sum over block pairs of |I_i| * |I_j|.
int orbit_dimension(const Eigen::VectorXd& x, double tol = 1e-9);

// Dimension of the stabilizer of Diag(x) in the orthogonal group:
// sum over blocks of |I_i| (|I_i| - 1) / 2. Complements orbit_dimension to
// n(n-1)/2.
int stabilizer_dimension(const Eigen::VectorXd& x, double tol = 1e-9);

// Orbit dimension computed independently as the rank of the linear map
// A -> A Diag(x) - Diag(x) A over the skew-symmetric matrices.
int orbit_dimension_numeric(const Eigen::VectorXd& x);

// Block-diagonal symmetric matrix carried by an ordered partition: entry
// blocks[k] acts on the index set of the k-th block.
struct BlockMatrix {
    OrderedPartition partition;
    std::vector<Eigen::MatrixXd> blocks;

    BlockMatrix(OrderedPartition p, std::vector<Eigen::MatrixXd> b);
    int n() const { return partition.n(); }
};

// The linear embedding of a block matrix into the full symmetric space:
// entries of blocks[k] are scattered to the index set of block k.
Eigen::MatrixXd embed(const BlockMatrix& B);

// Per-block descending eigenvalues, concatenated in block order.
Eigen::VectorXd lambda_sigma(const BlockMatrix& B);

struct BlockSpectrumAgreement {
    bool agrees = false;
    bool separated = false; // min of block k > max of block k+1 for all k
    std::string diagnostic;
};

// Checks lambda_sigma(B) == lambda(embed(B)). Asserted only when the block
// spectra are strictly separated in block order; otherwise returns
// agrees = false with a diagnostic naming the violated pair.
BlockSpectrumAgreement check_block_spectrum_agreement(const BlockMatrix& B,
                                                      double tol = 1e-9);

} // namespace spectra
