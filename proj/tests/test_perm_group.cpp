#include <cstdlib>
#include <set>
#include <string>

#include "doctest.h"
#include "spectra/config.hpp"
#include "spectra/error.hpp"
#include "spectra/perm_group.hpp"

using spectra::all_permutations;
using spectra::BigInt;
using spectra::card_S_succsim;
using spectra::enumerate_S_succsim;
using spectra::parse_cycles;
using spectra::Partition;
using spectra::partition_of_perm;
using spectra::Permutation;
using spectra::precsim;

TEST_CASE("cardinality is the product of block factorials") {
    CHECK(card_S_succsim(parse_cycles("(1 2 3)")) == 6);
    CHECK(card_S_succsim(parse_cycles("(1 2 3)(4 5)(6)(7)")) == 12);
    CHECK(card_S_succsim(Permutation::identity(5)) == 1);
    CHECK(card_S_succsim(parse_cycles("(1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 18 "
                                      "19 20 21 22 23 24 25)")) ==
          BigInt("15511210043330985984000000"));
}

TEST_CASE("everything at or above a 3-cycle is the whole of S_3") {
    const auto group = enumerate_S_succsim(parse_cycles("(1 2 3)"));
    std::set<std::string> got;
    for (const auto& g : group) got.insert(g.to_cycle_string());
    const std::set<std::string> expected = {"(1 2 3)", "(1 3 2)", "(1 2)(3)",
                                            "(1 3)(2)", "(1)(2 3)", "(1)(2)(3)"};
    CHECK(got == expected);
}

TEST_CASE("enumeration agrees with filtering the full symmetric group") {
    for (int n = 2; n <= 5; ++n) {
        const auto everyone = all_permutations(n);
        for (const auto& sigma : everyone) {
            const auto group = enumerate_S_succsim(sigma);
            CHECK(BigInt(group.size()) == card_S_succsim(sigma));
            std::set<std::vector<int>> got;
            for (const auto& g : group) got.insert(g.images());
            std::set<std::vector<int>> expected;
            for (const auto& tau : everyone)
                if (precsim(sigma, tau)) expected.insert(tau.images());
            CHECK(got == expected);
            // The result is a group: closed under composition.
            if (group.size() <= 24) {
                for (const auto& a : group)
                    for (const auto& b : group)
                        CHECK(got.count((a * b).images()) == 1);
            }
        }
    }
}

TEST_CASE("the enumeration cap rejects oversized requests") {
    const auto big = parse_cycles("(1 2 3 4 5 6 7 8 9 10 11 12 13)");
    CHECK(card_S_succsim(big) == BigInt("6227020800"));
    CHECK_THROWS_AS(enumerate_S_succsim(big), spectra::CapError);
    // An explicit cap argument overrides the default in both directions.
    CHECK_THROWS_AS(enumerate_S_succsim(parse_cycles("(1 2 3)"), 5), spectra::CapError);
}

TEST_CASE("SPECTRA_CAP overrides the default cap") {
    CHECK(spectra::enumeration_cap() == spectra::kDefaultEnumerationCap);
    setenv("SPECTRA_CAP", "10", 1);
    CHECK(spectra::enumeration_cap() == 10);
    CHECK_THROWS_AS(enumerate_S_succsim(parse_cycles("(1 2 3 4)")), spectra::CapError);
    setenv("SPECTRA_CAP", "not-a-number", 1);
    CHECK(spectra::enumeration_cap() == spectra::kDefaultEnumerationCap);
    unsetenv("SPECTRA_CAP");
    CHECK(enumerate_S_succsim(parse_cycles("(1 2 3 4)")).size() == 24);
}

TEST_CASE("block-group enumeration fixes every block setwise") {
    const Partition P(5, {{1, 3}, {2, 4, 5}});
    const auto group = spectra::enumerate_block_group(P);
    CHECK(group.size() == 12);
    for (const auto& g : group)
        for (const auto& blk : P.blocks())
            for (int e : blk) {
                CHECK(P.block_index_of(g(e)) == P.block_index_of(e));
            }
    for (const auto& g : group) CHECK(precsim(Permutation(5), g) == g.is_identity());
}
