#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "spectra/partition.hpp"
#include "spectra/rng.hpp"

namespace spectra {

enum class ManifoldKind {
    STRATUM,            // one stratum: points with a fixed equal-coordinate partition
    AFFINE_PERPPERP,    // the full blockwise-constant subspace of a partition
    SPHERE_IN_PERPPERP, // sphere inside that subspace
    CONSTANT_SUPPORT,   // fixed zero coordinates, taken from the base point
    CUSTOM,             // caller-provided local equation and Jacobian
};

const char* to_string(ManifoldKind kind);

// A d-dimensional manifold in R^n described near a base point by a local
// equation phi: R^n -> R^{n-d} with full-rank Jacobian, M = {phi = 0} locally.
// Built-in kinds derive phi from their parameters; CUSTOM supplies callbacks.
struct ManifoldDescriptor {
    ManifoldKind kind = ManifoldKind::CUSTOM;
    int n = 0;
    int d = 0;
    Eigen::VectorXd base_point; // nonincreasing coordinates
    double delta = 0.0;         // declared locality radius (may be +infinity)

    Partition partition{1};     // STRATUM / AFFINE_PERPPERP / SPHERE_IN_PERPPERP
    Eigen::VectorXd center;     // SPHERE_IN_PERPPERP
    double radius = 0.0;        // SPHERE_IN_PERPPERP
    int support = 0;            // CONSTANT_SUPPORT: number of nonzero coordinates
    std::vector<int> zero_indices; // CONSTANT_SUPPORT: 1-based zero positions

    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> custom_phi;
    std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> custom_jacobian;
};

// Factories. Default base points: STRATUM / AFFINE / SPHERE place block k of
// the partition at value (num_blocks - k), descending; CONSTANT_SUPPORT uses
// (r, r-1, ..., 1, 0, ..., 0). A non-default base point must satisfy the same
// membership and ordering requirements.
ManifoldDescriptor make_stratum(const Partition& P,
                                double delta = std::numeric_limits<double>::infinity());
ManifoldDescriptor make_affine_perpperp(const Partition& P,
                                        double delta = std::numeric_limits<double>::infinity());
ManifoldDescriptor make_sphere_in_perpperp(const Partition& P, const Eigen::VectorXd& center,
                                           double radius,
                                           const Eigen::VectorXd& base_point,
                                           double delta = std::numeric_limits<double>::infinity());
ManifoldDescriptor make_constant_support(int n, int r,
                                         double delta = std::numeric_limits<double>::infinity());
ManifoldDescriptor make_constant_support(const Eigen::VectorXd& base_point,
                                         double delta = std::numeric_limits<double>::infinity());
ManifoldDescriptor make_custom(int n, int d, const Eigen::VectorXd& base_point,
                               std::function<Eigen::VectorXd(const Eigen::VectorXd&)> phi,
                               std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> jacobian,
                               double delta = std::numeric_limits<double>::infinity());

// The implicit local equation of the descriptor and its Jacobian at x.
Eigen::VectorXd local_equation_value(const ManifoldDescriptor& M, const Eigen::VectorXd& x);
Eigen::MatrixXd local_equation_jacobian(const ManifoldDescriptor& M, const Eigen::VectorXd& x);

// Locality radius actually used: the declared delta capped by half the
// smallest gap between distinct base-point values (so the ball meets only
// strata compatible with the base point); 0.5 when both are infinite.
double effective_delta(const ManifoldDescriptor& M, const Eigen::VectorXd& x_bar);

// A point of M near x_bar: built-in kinds move inside their parametrization,
// CUSTOM projects a tangent perturbation back onto {phi = 0} by Gauss-Newton
// (20 iterations, residual below 1e-10, else error).
Eigen::VectorXd sample_manifold_point(const ManifoldDescriptor& M,
                                      const Eigen::VectorXd& x_bar, double scale, Rng& rng);

struct CharacteristicData {
    Partition sigma_star_partition{1};
    int kappa_star = 0; // singleton blocks
    int m_star = 0;     // blocks of size >= 2
    FMSplit fm_split;
};

// Finest equal-coordinate partition among sampled points of M near x_bar.
// Every sampled partition must be a coarsening of the finest (error
// otherwise), and the finest must have consecutive-integer blocks (error
// with the offending partition otherwise).
CharacteristicData characteristic_permutation(const ManifoldDescriptor& M,
                                              const Eigen::VectorXd& x_bar, double delta,
                                              int samples, Rng& rng);
// Same with delta = effective_delta, 64 samples, a fresh generator from seed.
CharacteristicData characteristic_permutation(const ManifoldDescriptor& M,
                                              const Eigen::VectorXd& x_bar,
                                              std::uint64_t seed = 0);

struct ReducedSpaces {
    Eigen::MatrixXd tangent_basis;        // n x d
    Eigen::MatrixXd normal_basis;         // n x (n - d)
    Eigen::MatrixXd reduced_normal_basis; // n x n_red
    int n_red = 0;
    Partition sigma_star{1};
};

// Tangent and normal bases from the SVD of the local-equation Jacobian at
// x_bar (tangent = kernel, normal = row space); the reduced normal space is
// the part of the normal space lying in the blockwise-constant subspace of
// the characteristic partition.
ReducedSpaces tangent_normal_at(const ManifoldDescriptor& M, const Eigen::VectorXd& x_bar,
                                std::uint64_t seed = 0);

// Exact dimension of lambda^{-1}(M) predicted by the dimension formula:
// d plus the sum over block pairs of the characteristic partition of
// |I_i| * |I_j|. Requires consecutive-integer blocks.
int predicted_spectral_dimension(int d, const Partition& sigma_star);
int predicted_spectral_dimension(const ManifoldDescriptor& M, std::uint64_t seed = 0);

struct DimensionEstimate {
    int dimension = 0;
    bool conclusive = false;
    double gap_ratio = 0.0;
    Eigen::VectorXd singular_values; // of the sampled direction matrix, descending
};

// Numerical dimension of lambda^{-1}(M) at a lift of x_bar: the rank of
// sampled tangent directions, combining (a) difference quotients of curves
// U_t^T Diag(x_t) U_t with x_t in M and U_t = U exp(tA), and (b) commutators
// [X, A] plus lifted tangent vectors U^T Diag(w) U. Inconclusive when the
// singular-value gap at the cut is below 10x.
DimensionEstimate estimate_spectral_dimension(const ManifoldDescriptor& M,
                                              const Eigen::VectorXd& x_bar,
                                              std::uint64_t seed = 0, int n_samples = 40);

// The reduced local equation of lambda^{-1}(M) near X_bar = lift of x_bar:
// coordinates in the reduced normal space of the defect between lambda(X)
// and the graph of M over its tangent space. Zero exactly on lifted manifold
// points within the locality domain; errors when lambda(X) leaves it.
Eigen::VectorXd lifted_local_equation(const ManifoldDescriptor& M,
                                      const Eigen::VectorXd& x_bar, const Eigen::MatrixXd& X,
                                      std::uint64_t seed = 0);

// Rank of the derivative of the reduced equation at X_bar over sampled
// tangent directions of the reduced ambient domain; full rank = n_red.
int jacobian_rank_at(const ManifoldDescriptor& M, const Eigen::MatrixXd& X_bar,
                     std::uint64_t seed = 0);

struct SymmetryCheck {
    std::string id;
    bool passed = true;
    std::string detail;
};

struct TangentSymmetryReport {
    bool all_passed = true;
    std::vector<SymmetryCheck> checks;
};

// For every permutation preserving x_bar: the permuted tangent and normal
// bases span the same subspaces, and both spaces split into their parts
// inside the blockwise-constant subspace and its orthogonal complement
// (dimension counts must add up). Non-symmetric manifolds fail here.
TangentSymmetryReport verify_tangent_normal_symmetry(const ManifoldDescriptor& M,
                                                     const Eigen::VectorXd& x_bar);

// True iff every block of P consists of consecutive integers.
bool consecutive_blocks(const Partition& P);

// The standard roster of built-in descriptors exercised by the verification
// suite: affine subspaces, strata, spheres, and constant-support sets with
// ambient dimensions 2 through 5.
std::vector<ManifoldDescriptor> builtin_test_manifolds();

// The line {(t, 0)} in R^2, a smooth manifold that is not locally symmetric
// at the origin; base point (t0, 0). Symmetry and dimension checks are
// expected to flag it.
ManifoldDescriptor nonsymmetric_line_manifold(double t0);

} // namespace spectra
