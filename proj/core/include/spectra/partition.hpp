#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "spectra/permutation.hpp"

namespace spectra {

// A set partition of {1..n} in canonical form: indices sorted inside each
// block, blocks sorted by their minimum element. Equality of canonical forms
// is equality of partitions.
class Partition {
public:
    // Discrete partition {{1},...,{n}}.
    explicit Partition(int n);
    // From arbitrary blocks; validates disjoint cover and canonicalizes.
    Partition(int n, std::vector<std::vector<int>> blocks);

    static Partition discrete(int n) { return Partition(n); }
    static Partition single_block(int n);

    int n() const { return n_; }
    int num_blocks() const { return static_cast<int>(blocks_.size()); }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    const std::vector<int>& block(int k) const { return blocks_[k]; }
    // 0-based block index containing 1-based element i.
    int block_index_of(int i) const { return block_of_[i - 1]; }

    // Number of singleton blocks.
    int num_singletons() const;
    // Number of blocks of size >= 2.
    int num_nontrivial() const;
    // Block sizes as a descending multiset.
    std::vector<int> block_size_type() const;

    bool operator==(const Partition& other) const = default;

    // "{{1,2},{3}}"
    std::string to_string() const;

private:
    int n_ = 0;
    std::vector<std::vector<int>> blocks_;
    std::vector<int> block_of_; // element (1-based) -> block index
};

// Blocks of nontrivial cycles of sigma plus singletons for its fixed points.
Partition partition_of_perm(const Permutation& sigma);

// Equal-coordinate partition of x: i and j share a block iff |x_i - x_j| <= tol
// under transitive closure (single linkage). tol = 0 gives exact equality.
Partition partition_of_point(const Eigen::VectorXd& x, double tol = 0.0);

// True iff every block of P is a union of blocks of Q ("Q refines P").
bool refines(const Partition& P, const Partition& Q);

// sigma is smaller than or equivalent to sigma2: every block of
// partition_of_perm(sigma) is a union of blocks of partition_of_perm(sigma2).
bool precsim(const Permutation& sigma, const Permutation& sigma2);
bool equiv(const Permutation& sigma, const Permutation& sigma2);

// Multisets of block cardinalities coincide.
bool same_block_size_type(const Permutation& sigma, const Permutation& sigma2);

enum class MuchSmaller {
    MUCH_SMALLER,          // sigma2 strictly below sigma, with a merge of >= 2
                           // blocks at least one of which has size >= 2
    SMALLER_NOT_MUCH,      // strictly below, but no such merge
    NOT_SMALLER_OR_EQUIV,  // equivalent or incomparable
};

// Classifies sigma2 against sigma in the refinement order.
MuchSmaller much_smaller(const Permutation& sigma2, const Permutation& sigma);
const char* to_string(MuchSmaller v);

// Finest common coarsening of the two partitions (union-find over the blocks
// of both): the greatest lower bound in the order where coarser = smaller.
Partition meet(const Partition& P, const Partition& Q);
// Meet of the induced partitions of two permutations.
Partition meet(const Permutation& sigma, const Permutation& sigma2);

// All partitions of {1..n} (Bell(n) of them), via restricted growth strings.
std::vector<Partition> all_partitions(int n);

// A partition ordered so that min(I_1) < min(I_2) < ...; the canonical form
// already satisfies this, so the class simply fixes the interpretation that
// block order is meaningful (block k occupies slot k in embeddings).
class OrderedPartition {
public:
    explicit OrderedPartition(Partition p) : partition_(std::move(p)) {}

    const Partition& partition() const { return partition_; }
    int n() const { return partition_.n(); }
    int num_blocks() const { return partition_.num_blocks(); }
    const std::vector<int>& block(int k) const { return partition_.block(k); }

private:
    Partition partition_;
};

// Split of {1..n} into the fixed points (F) and the support (M) of a
// reference permutation or partition: f_indices = singleton-block elements.
struct FMSplit {
    int n = 0;
    int kappa_star = 0;          // |f_indices|
    std::vector<int> f_indices;  // sorted
    std::vector<int> m_indices;  // sorted

    static FMSplit from_partition(const Partition& P);
    static FMSplit from_perm(const Permutation& sigma);
};

// Splits sigma into its action on f_indices and on m_indices, each re-indexed
// by position (1-based). Errors if any cycle of sigma mixes the two sets.
std::pair<Permutation, Permutation> fm_decompose_perm(const Permutation& sigma,
                                                      const FMSplit& split);

// x -> (x restricted to f_indices, x restricted to m_indices).
std::pair<Eigen::VectorXd, Eigen::VectorXd> canonical_split(const Eigen::VectorXd& x,
                                                            const FMSplit& split);
// Inverse of canonical_split.
Eigen::VectorXd canonical_product(const Eigen::VectorXd& xf, const Eigen::VectorXd& xm,
                                  const FMSplit& split);

} // namespace spectra
