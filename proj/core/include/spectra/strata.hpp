#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "spectra/config.hpp"
#include "spectra/partition.hpp"

namespace spectra {

// The affine stratum of a partition P: the set of points whose
// equal-coordinate partition is exactly P. Its closure is the subspace of
// vectors constant on each block (dimension = number of blocks); the
// orthogonal complement is the subspace of blockwise zero-sum vectors.
class Stratum {
public:
    explicit Stratum(Partition partition) : partition_(std::move(partition)) {}

    const Partition& partition() const { return partition_; }
    int n() const { return partition_.n(); }

    int dim_perpperp() const { return partition_.num_blocks(); }
    int dim_perp() const { return partition_.n() - partition_.num_blocks(); }

    // x belongs to the stratum: partition_of_point(x, tol) equals the partition.
    bool contains(const Eigen::VectorXd& x, double tol = tol::kMembership) const;
    // x constant on each block within tol.
    bool in_perpperp(const Eigen::VectorXd& x, double tol = tol::kMembership) const;
    // Every block-sum of x is zero within tol.
    bool in_perp(const Eigen::VectorXd& x, double tol = tol::kMembership) const;

    // Orthogonal projection onto the closure subspace: blockwise mean.
    Eigen::VectorXd project_perpperp(const Eigen::VectorXd& x) const;
    // Same projection computed as the average of sigma2 x over the
    // block-stabilizer subgroup; agrees with the blockwise mean to 1e-12.
    Eigen::VectorXd project_perpperp_by_group(const Eigen::VectorXd& x) const;

    // Matrix of project_perpperp in the standard basis (n x n).
    Eigen::MatrixXd projector_matrix() const;
    // Orthonormal basis of the closure subspace (normalized block indicators).
    Eigen::MatrixXd perpperp_basis() const;

    // A deterministic point with equal-coordinate partition exactly equal to
    // the stratum's partition: elements of block k take value k (1-based
    // block index along the canonical block order).
    Eigen::VectorXd generic_point() const;

private:
    Partition partition_;
};

// Largest r (= min over sigma outside the stabilizer of ||x - sigma x|| / 3)
// such that permutations either preserve B(x, r) or move it entirely off
// itself. +infinity when all coordinates of x are equal. Enumerates all of
// the symmetric group; n above max_n raises CapError.
double ball_preservation_radius(const Eigen::VectorXd& x, int max_n = 8);

// One verified statement about the stratification, with any counterexample.
struct StratificationCheck {
    std::string id;
    bool passed = true;
    std::string counterexample; // empty when passed
};

struct StratificationReport {
    int n = 0;
    bool all_passed = true;
    std::vector<StratificationCheck> checks;
};

// Exhaustive verification of the structural properties of {Delta(sigma)}:
// order/containment, equivalence, decomposition of the closure, meets,
// conjugation covariance, and disjoint cover, for all partitions of {1..n}.
StratificationReport verify_stratification_properties(int n, std::uint64_t seed = 0);

} // namespace spectra
