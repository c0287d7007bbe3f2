#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "spectra/error.hpp"
#include "spectra/permutation.hpp"

using spectra::all_permutations;
using spectra::apply;
using spectra::conjugate;
using spectra::parse_cycles;
using spectra::Permutation;

TEST_CASE("construction validates the image array") {
    CHECK(Permutation(3).is_identity());
    CHECK(Permutation({2, 1, 3})(1) == 2);
    CHECK_THROWS_AS(Permutation(std::vector<int>{1, 1, 3}), spectra::UsageError);
    CHECK_THROWS_AS(Permutation(std::vector<int>{0, 1, 2}), spectra::UsageError);
    CHECK_THROWS_AS(Permutation(std::vector<int>{1, 2, 4}), spectra::UsageError);
}

TEST_CASE("cycle notation round trips") {
    const auto sigma = parse_cycles("(1 2 3)(4 5)", 7);
    CHECK(sigma.to_cycle_string() == "(1 2 3)(4 5)(6)(7)");
    CHECK(parse_cycles(sigma.to_cycle_string()) == sigma);
    CHECK(parse_cycles("(1,2,3)(4,5)", 7) == sigma);
}

TEST_CASE("compact cycle notation treats each digit as one element") {
    CHECK(parse_cycles("(123)(45)", 7) == parse_cycles("(1 2 3)(4 5)", 7));
    CHECK(parse_cycles("(123)") == parse_cycles("(1 2 3)"));
    // Multi-digit elements require separators.
    const auto big = parse_cycles("(1 11)", 11);
    CHECK(big(1) == 11);
    CHECK(big(11) == 1);
    CHECK_THROWS_AS(parse_cycles("(10)"), spectra::UsageError);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_cycles("(1 2"), spectra::UsageError);
    CHECK_THROWS_AS(parse_cycles("1 2)"), spectra::UsageError);
    CHECK_THROWS_AS(parse_cycles("(1 2)(2 3)"), spectra::UsageError);
    CHECK_THROWS_AS(parse_cycles("(1 2 x)"), spectra::UsageError);
    CHECK_THROWS_AS(parse_cycles("(1 4)", 3), spectra::UsageError);
    CHECK_THROWS_AS(parse_cycles("(0 1)"), spectra::UsageError);
}

TEST_CASE("composition, inverse and identity laws hold on all of S_4") {
    const auto perms = all_permutations(4);
    const auto id = Permutation::identity(4);
    for (const auto& a : perms) {
        CHECK(a * a.inverse() == id);
        CHECK(a.inverse() * a == id);
        CHECK(a * id == a);
    }
    for (const auto& a : perms)
        for (const auto& b : perms) CHECK((a * b).inverse() == b.inverse() * a.inverse());
}

TEST_CASE("action convention: entry i of x lands at position sigma(i)") {
    const auto sigma = parse_cycles("(1 2 3)");
    Eigen::VectorXd x(3);
    x << 10, 20, 30;
    const Eigen::VectorXd y = apply(sigma, x);
    for (int i = 1; i <= 3; ++i) CHECK(y(sigma(i) - 1) == x(i - 1));
}

TEST_CASE("the action is a left group action on all of S_3") {
    const auto perms = all_permutations(3);
    Eigen::VectorXd x(3);
    x << 0.3, -1.2, 5.0;
    for (const auto& a : perms)
        for (const auto& b : perms) {
            const Eigen::VectorXd lhs = apply(a * b, x);
            const Eigen::VectorXd rhs = apply(a, apply(b, x));
            CHECK((lhs - rhs).cwiseAbs().maxCoeff() == 0.0);
        }
}

TEST_CASE("conjugation relabels cycles by tau") {
    const auto sigma = parse_cycles("(1 2)(3 4 5)");
    const auto tau = parse_cycles("(1 3)(2 4)", 5);
    const auto moved = conjugate(tau, sigma);
    std::set<std::vector<int>> expected;
    for (auto cycle : sigma.cycles()) {
        for (int& e : cycle) e = tau(e);
        std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()),
                    cycle.end());
        expected.insert(cycle);
    }
    const std::set<std::vector<int>> got(moved.cycles().begin(), moved.cycles().end());
    CHECK(got == expected);
}

TEST_CASE("all_permutations is lexicographic and complete") {
    const auto perms = all_permutations(4);
    CHECK(perms.size() == 24);
    for (std::size_t k = 1; k < perms.size(); ++k)
        CHECK(std::lexicographical_compare(perms[k - 1].images().begin(),
                                           perms[k - 1].images().end(),
                                           perms[k].images().begin(),
                                           perms[k].images().end()));
}

TEST_CASE("support lists the moved indices") {
    const auto sigma = parse_cycles("(2 5)(3 7)", 8);
    CHECK(sigma.support() == std::vector<int>{2, 3, 5, 7});
    CHECK(Permutation::identity(4).support().empty());
}
