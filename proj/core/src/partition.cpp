#include "spectra/partition.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "spectra/error.hpp"

namespace spectra {

Partition::Partition(int n) : n_(n) {
    if (n < 1) throw UsageError("partition ground set must be nonempty");
    blocks_.reserve(n);
    block_of_.resize(n);
    for (int i = 1; i <= n; ++i) {
        blocks_.push_back({i});
        block_of_[i - 1] = i - 1;
    }
}

Partition::Partition(int n, std::vector<std::vector<int>> blocks) : n_(n) {
    if (n < 1) throw UsageError("partition ground set must be nonempty");
    std::vector<char> seen(n, 0);
    int count = 0;
    for (auto& b : blocks) {
        if (b.empty()) throw UsageError("partition contains an empty block");
        for (int v : b) {
            if (v < 1 || v > n) throw UsageError("partition element out of range");
            if (seen[v - 1]) throw UsageError("partition blocks are not disjoint");
            seen[v - 1] = 1;
            ++count;
        }
        std::sort(b.begin(), b.end());
    }
    if (count != n) throw UsageError("partition blocks do not cover {1..n}");
    std::sort(blocks.begin(), blocks.end(),
              [](const auto& a, const auto& b) { return a[0] < b[0]; });
    blocks_ = std::move(blocks);
    block_of_.resize(n);
    for (std::size_t k = 0; k < blocks_.size(); ++k)
        for (int v : blocks_[k]) block_of_[v - 1] = static_cast<int>(k);
}

Partition Partition::single_block(int n) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 1);
    return Partition(n, {all});
}

int Partition::num_singletons() const {
    int k = 0;
    for (const auto& b : blocks_)
        if (b.size() == 1) ++k;
    return k;
}

int Partition::num_nontrivial() const { return num_blocks() - num_singletons(); }

std::vector<int> Partition::block_size_type() const {
    std::vector<int> sizes;
    sizes.reserve(blocks_.size());
    for (const auto& b : blocks_) sizes.push_back(static_cast<int>(b.size()));
    std::sort(sizes.begin(), sizes.end(), std::greater<int>());
    return sizes;
}

std::string Partition::to_string() const {
    std::ostringstream out;
    out << '{';
    for (std::size_t k = 0; k < blocks_.size(); ++k) {
        if (k) out << ',';
        out << '{';
        for (std::size_t i = 0; i < blocks_[k].size(); ++i) {
            if (i) out << ',';
            out << blocks_[k][i];
        }
        out << '}';
    }
    out << '}';
    return out.str();
}

Partition partition_of_perm(const Permutation& sigma) {
    std::vector<std::vector<int>> blocks = sigma.cycles();
    std::vector<char> covered(sigma.n(), 0);
    for (const auto& b : blocks)
        for (int v : b) covered[v - 1] = 1;
    for (int i = 1; i <= sigma.n(); ++i)
        if (!covered[i - 1]) blocks.push_back({i});
    return Partition(sigma.n(), std::move(blocks));
}

Partition partition_of_point(const Eigen::VectorXd& x, double tol) {
    if (tol < 0) throw UsageError("tolerance must be nonnegative");
    const int n = static_cast<int>(x.size());
    if (n < 1) throw UsageError("point must be nonempty");
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return x(a) < x(b); });
    // On the real line, the transitive closure of |x_i - x_j| <= tol groups a
    // sorted sequence into maximal runs whose consecutive gaps are <= tol.
    std::vector<std::vector<int>> blocks;
    std::vector<int> cur{idx[0] + 1};
    for (int k = 1; k < n; ++k) {
        if (x(idx[k]) - x(idx[k - 1]) <= tol) {
            cur.push_back(idx[k] + 1);
        } else {
            blocks.push_back(std::move(cur));
            cur = {idx[k] + 1};
        }
    }
    blocks.push_back(std::move(cur));
    return Partition(n, std::move(blocks));
}

bool refines(const Partition& P, const Partition& Q) {
    if (P.n() != Q.n()) throw UsageError("comparing partitions of different ground sets");
    // Every block of P is a union of blocks of Q  <=>  each Q-block lies
    // inside a single P-block.
    for (const auto& qb : Q.blocks()) {
        const int target = P.block_index_of(qb[0]);
        for (int v : qb)
            if (P.block_index_of(v) != target) return false;
    }
    return true;
}

bool precsim(const Permutation& sigma, const Permutation& sigma2) {
    if (sigma.n() != sigma2.n()) throw UsageError("comparing permutations of different degree");
    return refines(partition_of_perm(sigma), partition_of_perm(sigma2));
}

bool equiv(const Permutation& sigma, const Permutation& sigma2) {
    if (sigma.n() != sigma2.n()) throw UsageError("comparing permutations of different degree");
    return partition_of_perm(sigma) == partition_of_perm(sigma2);
}

bool same_block_size_type(const Permutation& sigma, const Permutation& sigma2) {
    if (sigma.n() != sigma2.n()) throw UsageError("comparing permutations of different degree");
    return partition_of_perm(sigma).block_size_type() ==
           partition_of_perm(sigma2).block_size_type();
}

MuchSmaller much_smaller(const Permutation& sigma2, const Permutation& sigma) {
    if (sigma.n() != sigma2.n()) throw UsageError("comparing permutations of different degree");
    const Partition P2 = partition_of_perm(sigma2);
    const Partition P = partition_of_perm(sigma);
    if (P2 == P || !refines(P2, P)) return MuchSmaller::NOT_SMALLER_OR_EQUIV;
    // sigma2 is strictly smaller. A merge is "much" when some block of P2 is a
    // union of >= 2 blocks of P at least one of which has size >= 2.
    for (const auto& b2 : P2.blocks()) {
        std::vector<int> merged;
        for (int v : b2) merged.push_back(P.block_index_of(v));
        std::sort(merged.begin(), merged.end());
        merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
        if (merged.size() < 2) continue;
        for (int k : merged)
            if (P.block(k).size() >= 2) return MuchSmaller::MUCH_SMALLER;
    }
    return MuchSmaller::SMALLER_NOT_MUCH;
}

const char* to_string(MuchSmaller v) {
    switch (v) {
        case MuchSmaller::MUCH_SMALLER: return "MUCH_SMALLER";
        case MuchSmaller::SMALLER_NOT_MUCH: return "SMALLER_NOT_MUCH";
        case MuchSmaller::NOT_SMALLER_OR_EQUIV: return "NOT_SMALLER_OR_EQUIV";
    }
    return "?";
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

Partition meet(const Partition& P, const Partition& Q) {
    if (P.n() != Q.n()) throw UsageError("meet of partitions of different ground sets");
    const int n = P.n();
    UnionFind uf(n);
    for (const auto& b : P.blocks())
        for (std::size_t i = 1; i < b.size(); ++i) uf.unite(b[0] - 1, b[i] - 1);
    for (const auto& b : Q.blocks())
        for (std::size_t i = 1; i < b.size(); ++i) uf.unite(b[0] - 1, b[i] - 1);
    std::vector<std::vector<int>> groups(n);
    for (int i = 0; i < n; ++i) groups[uf.find(i)].push_back(i + 1);
    std::vector<std::vector<int>> blocks;
    for (auto& g : groups)
        if (!g.empty()) blocks.push_back(std::move(g));
    return Partition(n, std::move(blocks));
}

Partition meet(const Permutation& sigma, const Permutation& sigma2) {
    return meet(partition_of_perm(sigma), partition_of_perm(sigma2));
}

std::vector<Partition> all_partitions(int n) {
    // Restricted growth strings: a[0] = 0, a[i] <= 1 + max(a[0..i-1]).
    std::vector<Partition> out;
    std::vector<int> a(n, 0);
    while (true) {
        int nblocks = *std::max_element(a.begin(), a.end()) + 1;
        std::vector<std::vector<int>> blocks(nblocks);
        for (int i = 0; i < n; ++i) blocks[a[i]].push_back(i + 1);
        out.emplace_back(n, std::move(blocks));
        // Next restricted growth string.
        int i = n - 1;
        while (i > 0) {
            int maxprefix = 0;
            for (int j = 0; j < i; ++j) maxprefix = std::max(maxprefix, a[j]);
            if (a[i] <= maxprefix) break;
            --i;
        }
        if (i == 0) break;
        ++a[i];
        std::fill(a.begin() + i + 1, a.end(), 0);
    }
    return out;
}

FMSplit FMSplit::from_partition(const Partition& P) {
    FMSplit s;
    s.n = P.n();
    for (const auto& b : P.blocks()) {
        if (b.size() == 1)
            s.f_indices.push_back(b[0]);
        else
            s.m_indices.insert(s.m_indices.end(), b.begin(), b.end());
    }
    std::sort(s.f_indices.begin(), s.f_indices.end());
    std::sort(s.m_indices.begin(), s.m_indices.end());
    s.kappa_star = static_cast<int>(s.f_indices.size());
    return s;
}

FMSplit FMSplit::from_perm(const Permutation& sigma) {
    return from_partition(partition_of_perm(sigma));
}

std::pair<Permutation, Permutation> fm_decompose_perm(const Permutation& sigma,
                                                      const FMSplit& split) {
    if (sigma.n() != split.n) throw UsageError("split does not match permutation degree");
    std::vector<int> pos(split.n + 1, 0); // 1-based element -> 1-based position, sign by set
    for (std::size_t k = 0; k < split.f_indices.size(); ++k)
        pos[split.f_indices[k]] = static_cast<int>(k + 1);
    std::vector<int> pos_m(split.n + 1, 0);
    for (std::size_t k = 0; k < split.m_indices.size(); ++k)
        pos_m[split.m_indices[k]] = static_cast<int>(k + 1);

    auto in_f = [&](int v) { return pos[v] != 0; };

    std::vector<std::vector<int>> f_cycles, m_cycles;
    for (const auto& cyc : sigma.cycles()) {
        const bool first_in_f = in_f(cyc[0]);
        for (int v : cyc)
            if (in_f(v) != first_in_f)
                throw PreconditionError("cycle " + std::to_string(cyc[0]) +
                                        "... of the permutation mixes fixed-point and "
                                        "support indices of the split");
        std::vector<int> re;
        re.reserve(cyc.size());
        for (int v : cyc) re.push_back(first_in_f ? pos[v] : pos_m[v]);
        (first_in_f ? f_cycles : m_cycles).push_back(std::move(re));
    }
    // Fixed points of sigma need no cycles; the part degrees carry them.
    const int nf = split.kappa_star;
    const int nm = split.n - split.kappa_star;
    return {Permutation::from_cycles(nf, f_cycles), Permutation::from_cycles(nm, m_cycles)};
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> canonical_split(const Eigen::VectorXd& x,
                                                            const FMSplit& split) {
    if (x.size() != split.n) throw UsageError("split does not match vector length");
    Eigen::VectorXd xf(split.f_indices.size()), xm(split.m_indices.size());
    for (std::size_t k = 0; k < split.f_indices.size(); ++k)
        xf(static_cast<int>(k)) = x(split.f_indices[k] - 1);
    for (std::size_t k = 0; k < split.m_indices.size(); ++k)
        xm(static_cast<int>(k)) = x(split.m_indices[k] - 1);
    return {std::move(xf), std::move(xm)};
}

Eigen::VectorXd canonical_product(const Eigen::VectorXd& xf, const Eigen::VectorXd& xm,
                                  const FMSplit& split) {
    if (xf.size() != static_cast<Eigen::Index>(split.f_indices.size()) ||
        xm.size() != static_cast<Eigen::Index>(split.m_indices.size()))
        throw UsageError("split does not match part lengths");
    Eigen::VectorXd x(split.n);
    for (std::size_t k = 0; k < split.f_indices.size(); ++k)
        x(split.f_indices[k] - 1) = xf(static_cast<int>(k));
    for (std::size_t k = 0; k < split.m_indices.size(); ++k)
        x(split.m_indices[k] - 1) = xm(static_cast<int>(k));
    return x;
}

} // namespace spectra
