#include <cmath>
#include <limits>

#include "doctest.h"
#include "spectra/error.hpp"
#include "spectra/rng.hpp"
#include "spectra/strata.hpp"

using spectra::all_partitions;
using spectra::Partition;
using spectra::partition_of_point;
using spectra::Stratum;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> vals) {
    Eigen::VectorXd x(static_cast<int>(vals.size()));
    int i = 0;
    for (double v : vals) x(i++) = v;
    return x;
}

} // namespace

TEST_CASE("membership splits into stratum, closure and complement parts") {
    const Stratum S(Partition(3, {{1, 2}, {3}}));
    CHECK(S.contains(vec({2, 2, 1})));
    CHECK(!S.contains(vec({2, 2, 2})));
    CHECK(!S.contains(vec({2, 1, 1})));
    CHECK(S.in_perpperp(vec({2, 2, 2})));
    CHECK(S.in_perpperp(vec({2, 2, 1})));
    CHECK(!S.in_perpperp(vec({2, 1, 2})));
    CHECK(S.in_perp(vec({1, -1, 0})));
    CHECK(!S.in_perp(vec({1, -1, 5})));
    CHECK(S.dim_perpperp() == 2);
    CHECK(S.dim_perp() == 1);
}

TEST_CASE("generic_point lies in its stratum for every partition up to n = 5") {
    for (int n = 1; n <= 5; ++n)
        for (const auto& P : all_partitions(n)) {
            const Stratum S(P);
            const Eigen::VectorXd x = S.generic_point();
            CHECK(partition_of_point(x) == P);
            CHECK(S.contains(x));
            CHECK(S.in_perpperp(x));
        }
}

TEST_CASE("projection onto the closure is the blockwise mean") {
    const Stratum S(Partition(4, {{1, 3}, {2}, {4}}));
    const Eigen::VectorXd x = vec({1, 5, 3, -2});
    const Eigen::VectorXd p = S.project_perpperp(x);
    CHECK((p - vec({2, 5, 2, -2})).cwiseAbs().maxCoeff() == 0.0);
    // Idempotent, and the residual is orthogonal to the closure.
    CHECK((S.project_perpperp(p) - p).norm() == 0.0);
    CHECK(S.in_perp(x - p));
}

TEST_CASE("the two projection formulas agree everywhere") {
    spectra::Rng rng(7);
    for (int n = 2; n <= 5; ++n)
        for (const auto& P : all_partitions(n)) {
            const Stratum S(P);
            for (int t = 0; t < 5; ++t) {
                const Eigen::VectorXd x = rng.gaussian_vector(n);
                const Eigen::VectorXd a = S.project_perpperp(x);
                const Eigen::VectorXd b = S.project_perpperp_by_group(x);
                CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12);
                CHECK((S.projector_matrix() * x - a).cwiseAbs().maxCoeff() <= 1e-12);
            }
        }
}

TEST_CASE("the projector is the Gram matrix of the orthonormal block basis") {
    for (const auto& P : all_partitions(4)) {
        const Stratum S(P);
        const Eigen::MatrixXd B = S.perpperp_basis();
        CHECK(B.cols() == S.dim_perpperp());
        const Eigen::MatrixXd gram = B.transpose() * B;
        CHECK((gram - Eigen::MatrixXd::Identity(B.cols(), B.cols())).cwiseAbs().maxCoeff() <=
              1e-12);
        CHECK((B * B.transpose() - S.projector_matrix()).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("ball preservation radius closed forms") {
    CHECK(spectra::ball_preservation_radius(vec({3, 2, 1})) ==
          doctest::Approx(std::sqrt(2.0) / 3.0).epsilon(1e-12));
    CHECK(spectra::ball_preservation_radius(vec({2, 2, 0, 0})) ==
          doctest::Approx(2.0 * std::sqrt(2.0) / 3.0).epsilon(1e-12));
    CHECK(std::isinf(spectra::ball_preservation_radius(vec({4, 4, 4}))));
    Eigen::VectorXd big(9);
    big.setLinSpaced(9, 1, 9);
    CHECK_THROWS_AS(spectra::ball_preservation_radius(big), spectra::CapError);
}

TEST_CASE("structural verification passes for n up to 5") {
    for (int n = 2; n <= 5; ++n) {
        const auto report = spectra::verify_stratification_properties(n);
        CHECK(report.all_passed);
        for (const auto& check : report.checks) {
            INFO(check.id << ": " << check.counterexample);
            CHECK(check.passed);
            CHECK(check.counterexample.empty());
        }
    }
    CHECK_THROWS_AS(spectra::verify_stratification_properties(6), spectra::UsageError);
}
