#include <vector>

#include "doctest.h"
#include "spectra/error.hpp"
#include "spectra/partition.hpp"

using spectra::all_partitions;
using spectra::all_permutations;
using spectra::apply;
using spectra::equiv;
using spectra::meet;
using spectra::MuchSmaller;
using spectra::much_smaller;
using spectra::parse_cycles;
using spectra::Partition;
using spectra::partition_of_perm;
using spectra::partition_of_point;
using spectra::Permutation;
using spectra::precsim;
using spectra::refines;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> vals) {
    Eigen::VectorXd x(static_cast<int>(vals.size()));
    int i = 0;
    for (double v : vals) x(i++) = v;
    return x;
}

} // namespace

TEST_CASE("canonical form sorts blocks by minimum") {
    const Partition P(5, {{4, 2}, {5, 1, 3}});
    CHECK(P.to_string() == "{{1,3,5},{2,4}}");
    CHECK(P.block_index_of(4) == 1);
    CHECK(P == Partition(5, {{3, 1, 5}, {2, 4}}));
    CHECK_THROWS_AS(Partition(3, {{1, 2}}), spectra::UsageError);
    CHECK_THROWS_AS(Partition(3, {{1, 2}, {2, 3}}), spectra::UsageError);
}

TEST_CASE("partition_of_perm lists cycle supports and fixed points") {
    const auto sigma = parse_cycles("(1 2 3)(4 5)(6)(7)");
    CHECK(partition_of_perm(sigma).to_string() == "{{1,2,3},{4,5},{6},{7}}");
    CHECK(partition_of_perm(Permutation::identity(3)) == Partition::discrete(3));
}

TEST_CASE("partition_of_point groups equal coordinates with tolerance closure") {
    CHECK(partition_of_point(vec({2, 2, 1})) == Partition(3, {{1, 2}, {3}}));
    CHECK(partition_of_point(vec({1, 1 + 1e-10, 2}), 1e-9) == Partition(3, {{1, 2}, {3}}));
    // Single-linkage closure: a chain of small gaps merges into one block.
    CHECK(partition_of_point(vec({0, 0.5e-9, 1.0e-9}), 1e-9) == Partition::single_block(3));
    CHECK(partition_of_point(vec({0, 0.5e-9, 1.0e-9}), 0.0) == Partition::discrete(3));
}

TEST_CASE("refinement order: coarser permutation is smaller") {
    // All permutations are at or below the identity; only the identity is at
    // or above it.
    for (const auto& sigma : all_permutations(4)) {
        CHECK(precsim(sigma, Permutation::identity(4)));
        if (!sigma.is_identity()) CHECK(!precsim(Permutation::identity(4), sigma));
    }
    // The minimal elements are exactly the n-cycles.
    for (const auto& sigma : all_permutations(4)) {
        bool minimal = true;
        for (const auto& tau : all_permutations(4))
            if (precsim(tau, sigma) && !equiv(tau, sigma)) minimal = false;
        CHECK(minimal == (partition_of_perm(sigma) == Partition::single_block(4)));
    }
}

TEST_CASE("order fixed vectors") {
    CHECK(precsim(parse_cycles("(1 2 3)"), parse_cycles("(1 2)", 3)));
    const auto a = parse_cycles("(1 2 3)(4)");
    const auto b = parse_cycles("(1 3 2)(4)");
    const auto c = parse_cycles("(1 2 4)(3)");
    CHECK(equiv(a, b));
    CHECK(spectra::same_block_size_type(a, c));
    CHECK(spectra::same_block_size_type(b, c));
    CHECK(!precsim(a, c));
    CHECK(!precsim(c, a));
}

TEST_CASE("precsim is a partial order modulo equivalence on S_4") {
    const auto perms = all_permutations(4);
    for (const auto& a : perms)
        for (const auto& b : perms) {
            if (precsim(a, b) && precsim(b, a)) CHECK(equiv(a, b));
            CHECK(equiv(a, b) == (partition_of_perm(a) == partition_of_perm(b)));
        }
    for (const auto& a : perms)
        for (const auto& b : perms)
            for (const auto& c : perms)
                if (precsim(a, b) && precsim(b, c)) CHECK(precsim(a, c));
}

TEST_CASE("much-smaller fixed vectors") {
    const auto sigma = parse_cycles("(1)(23)(45)(6)(7)");
    CHECK(much_smaller(parse_cycles("(123)(45)(6)(7)"), sigma) ==
          MuchSmaller::MUCH_SMALLER);
    // Merging only singleton blocks is not a much-smaller step.
    CHECK(much_smaller(parse_cycles("(167)(23)(45)"), sigma) ==
          MuchSmaller::SMALLER_NOT_MUCH);
    CHECK(much_smaller(sigma, sigma) == MuchSmaller::NOT_SMALLER_OR_EQUIV);

    // Two permutations below a third, comparable to each other only.
    const auto s = parse_cycles("(4 5)", 5);
    const auto s1 = parse_cycles("(2 3)(4 5)");
    const auto s2 = parse_cycles("(1 2 3)(4 5)");
    CHECK(much_smaller(s1, s) == MuchSmaller::SMALLER_NOT_MUCH);
    CHECK(much_smaller(s2, s) == MuchSmaller::SMALLER_NOT_MUCH);
    CHECK(much_smaller(s2, s1) == MuchSmaller::MUCH_SMALLER);
}

TEST_CASE("below the identity every strict step merges only singletons") {
    for (const auto& sigma : all_permutations(4))
        if (!sigma.is_identity())
            CHECK(much_smaller(sigma, Permutation::identity(4)) ==
                  MuchSmaller::SMALLER_NOT_MUCH);
}

TEST_CASE("strictly below a permutation with at most one fixed point is much smaller") {
    const auto perms = all_permutations(5);
    for (const auto& s : perms) {
        if (partition_of_perm(s).num_singletons() > 1) continue;
        for (const auto& t : perms)
            if (precsim(t, s) && !equiv(t, s))
                CHECK(much_smaller(t, s) == MuchSmaller::MUCH_SMALLER);
    }
}

TEST_CASE("much-smaller chain properties hold exhaustively for n <= 5") {
    for (int n = 2; n <= 5; ++n) {
        const auto perms = all_permutations(n);
        const int count = static_cast<int>(perms.size());
        std::vector<std::vector<MuchSmaller>> cls(count, std::vector<MuchSmaller>(count));
        std::vector<std::vector<char>> below(count, std::vector<char>(count));
        for (int i = 0; i < count; ++i)
            for (int j = 0; j < count; ++j) {
                cls[i][j] = much_smaller(perms[i], perms[j]);
                below[i][j] = precsim(perms[i], perms[j]);
            }
        // Trichotomy: at-or-below splits into equivalent, smaller-not-much,
        // and much-smaller.
        for (int i = 0; i < count; ++i)
            for (int j = 0; j < count; ++j) {
                const bool strict = below[i][j] && !below[j][i];
                CHECK((cls[i][j] != MuchSmaller::NOT_SMALLER_OR_EQUIV) == strict);
            }
        for (int i = 0; i < count; ++i)
            for (int j = 0; j < count; ++j)
                for (int k = 0; k < count; ++k) {
                    // At-or-below j, j much smaller than k: much smaller than k.
                    if (below[i][j] && cls[j][k] == MuchSmaller::MUCH_SMALLER)
                        CHECK(cls[i][k] == MuchSmaller::MUCH_SMALLER);
                    // Smaller-not-much chains stay smaller-not-much.
                    if (cls[i][j] == MuchSmaller::SMALLER_NOT_MUCH &&
                        cls[j][k] == MuchSmaller::SMALLER_NOT_MUCH)
                        CHECK(cls[i][k] == MuchSmaller::SMALLER_NOT_MUCH);
                }
    }
}

TEST_CASE("meet is the finest common coarsening") {
    CHECK(meet(parse_cycles("(1 2)", 3), parse_cycles("(2 3)", 3)) ==
          Partition::single_block(3));
    const auto parts = all_partitions(4);
    for (const auto& P : parts)
        for (const auto& Q : parts) {
            const Partition M = meet(P, Q);
            CHECK(refines(M, P));
            CHECK(refines(M, Q));
            for (const auto& R : parts)
                if (refines(R, P) && refines(R, Q)) CHECK(refines(R, M));
        }
}

TEST_CASE("all_partitions counts match Bell numbers") {
    const int bell[] = {1, 1, 2, 5, 15, 52, 203};
    for (int n = 1; n <= 6; ++n) {
        const auto parts = all_partitions(n);
        CHECK(static_cast<int>(parts.size()) == bell[n]);
        for (const auto& P : parts) CHECK(P.n() == n);
    }
}

TEST_CASE("fixed-point/support split of a reference permutation") {
    const auto sigma = parse_cycles("(1)(2 3)(4)(5 6 7)(8)");
    const auto split = spectra::FMSplit::from_perm(sigma);
    CHECK(split.kappa_star == 3);
    CHECK(split.f_indices == std::vector<int>{1, 4, 8});
    CHECK(split.m_indices == std::vector<int>{2, 3, 5, 6, 7});

    Eigen::VectorXd x(8);
    x << 1, 2, 3, 4, 5, 6, 7, 8;
    const auto [xf, xm] = spectra::canonical_split(x, split);
    CHECK((xf - vec({1, 4, 8})).cwiseAbs().maxCoeff() == 0.0);
    CHECK((xm - vec({2, 3, 5, 6, 7})).cwiseAbs().maxCoeff() == 0.0);

    const Eigen::VectorXd back = spectra::canonical_product(
        vec({11, 12, 13}), vec({21, 22, 23, 24, 25}), split);
    CHECK((back - vec({11, 21, 22, 12, 23, 24, 25, 13})).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("decomposing a permutation along the split") {
    const auto sigma = parse_cycles("(1)(2 3)(4)(5 6 7)(8)");
    const auto split = spectra::FMSplit::from_perm(sigma);
    const auto [sf, sm] = spectra::fm_decompose_perm(sigma, split);
    CHECK(sf.is_identity());
    CHECK(sf.n() == 3);
    CHECK(sm.to_cycle_string() == "(1 2)(3 4 5)");

    // A cycle crossing the split cannot be decomposed.
    const auto crossing = parse_cycles("(1 2)", 3);
    const auto other = spectra::FMSplit::from_partition(Partition(3, {{1}, {2, 3}}));
    CHECK_THROWS_AS(spectra::fm_decompose_perm(crossing, other), spectra::Error);
}

TEST_CASE("permuting a point permutes its partition") {
    const Eigen::VectorXd x = vec({5, 5, 3, 1});
    for (const auto& tau : all_permutations(4)) {
        const Partition before = partition_of_point(x);
        const Partition after = partition_of_point(apply(tau, x));
        for (const auto& blk : before.blocks()) {
            std::vector<int> image;
            for (int e : blk) image.push_back(tau(e));
            std::sort(image.begin(), image.end());
            bool found = false;
            for (const auto& ab : after.blocks())
                if (ab == image) found = true;
            CHECK(found);
        }
    }
}
