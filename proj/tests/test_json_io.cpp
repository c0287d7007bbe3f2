#include <cmath>
#include <string>

#include "doctest.h"
#include "spectra/error.hpp"
#include "spectra/json_io.hpp"
#include "spectra/manifolds.hpp"
#include "spectra/polynomial.hpp"

using spectra::json;
using spectra::Partition;
using spectra::Polynomial;
using spectra::Rational;

TEST_CASE("vectors and matrices round trip") {
    Eigen::VectorXd v(3);
    v << 1.5, -2.25, 0.0;
    const Eigen::VectorXd v2 = spectra::vector_from_json(spectra::vector_to_json(v));
    CHECK((v - v2).cwiseAbs().maxCoeff() == 0.0);

    Eigen::MatrixXd X(2, 2);
    X << 1, 2, 3, 4;
    const json j = spectra::matrix_to_json(X);
    CHECK(j["n"] == 2);
    CHECK(j["data"].size() == 4);
    const Eigen::MatrixXd X2 = spectra::matrix_from_json(j);
    CHECK((X - X2).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(spectra::matrix_from_json(json{{"n", 2}, {"data", {1, 2, 3}}}),
                    spectra::UsageError);
    CHECK_THROWS_AS(spectra::vector_from_json(json{{"oops", 1}}), spectra::UsageError);
}

TEST_CASE("permutations accept images or cycle strings") {
    const auto sigma = spectra::parse_cycles("(1 2 3)(4 5)");
    const json j = spectra::permutation_to_json(sigma);
    CHECK(j["n"] == 5);
    CHECK(spectra::permutation_from_json(j) == sigma);
    CHECK(spectra::permutation_from_json(json("(123)(45)")) == sigma);
    CHECK_THROWS_AS(spectra::permutation_from_json(json{{"n", 3}, {"images", {1, 1, 2}}}),
                    spectra::UsageError);
}

TEST_CASE("partitions round trip") {
    const Partition P(4, {{1, 3}, {2}, {4}});
    CHECK(spectra::partition_from_json(spectra::partition_to_json(P)) == P);
}

TEST_CASE("polynomials keep exact coefficients") {
    Polynomial p(2);
    p.add_term({2, 0}, Rational(1));
    p.add_term({0, 1}, Rational(-7, 3));
    const json j = spectra::polynomial_to_json(p);
    const Polynomial p2 = spectra::polynomial_from_json(j);
    CHECK(p == p2);
    // Integer coefficients appear as JSON numbers, fractions as strings.
    bool saw_string = false, saw_int = false;
    for (const auto& term : j["terms"]) {
        if (term["coeff"].is_string()) saw_string = true;
        if (term["coeff"].is_number_integer()) saw_int = true;
    }
    CHECK(saw_string);
    CHECK(saw_int);
}

TEST_CASE("every built-in manifold descriptor round trips") {
    for (const auto& M : spectra::builtin_test_manifolds()) {
        const json j = spectra::manifold_to_json(M);
        const auto M2 = spectra::manifold_from_json(j);
        CHECK(M2.kind == M.kind);
        CHECK(M2.n == M.n);
        CHECK(M2.d == M.d);
        CHECK((M2.base_point - M.base_point).cwiseAbs().maxCoeff() == 0.0);
        CHECK(spectra::predicted_spectral_dimension(M2) ==
              spectra::predicted_spectral_dimension(M));
    }
}

TEST_CASE("custom descriptors serialize only from polynomial equations") {
    Polynomial line(2);
    line.add_term({0, 1}, Rational(1)); // x2 = 0
    json j;
    j["kind"] = "custom";
    j["n"] = 2;
    j["d"] = 1;
    j["base_point"] = json::array({1.0, 0.0});
    j["delta"] = 0.4;
    j["equations"] = json::array({spectra::polynomial_to_json(line)});
    const auto M = spectra::manifold_from_json(j);
    CHECK(M.kind == spectra::ManifoldKind::CUSTOM);
    Eigen::VectorXd probe(2);
    probe << 0.9, 0.3;
    CHECK(spectra::local_equation_value(M, probe)(0) == doctest::Approx(0.3));
    const Eigen::MatrixXd J = spectra::local_equation_jacobian(M, probe);
    CHECK(J(0, 0) == 0.0);
    CHECK(J(0, 1) == 1.0);

    // Callback-only descriptors cannot be serialized.
    const auto opaque = spectra::nonsymmetric_line_manifold(1.0);
    CHECK_THROWS_AS(spectra::manifold_to_json(opaque), spectra::UsageError);
}

TEST_CASE("infinities encode as strings") {
    const auto M = spectra::make_stratum(Partition(2, {{1, 2}}));
    const json j = spectra::manifold_to_json(M);
    CHECK(j["delta"] == "inf");
    const auto M2 = spectra::manifold_from_json(j);
    CHECK(std::isinf(M2.delta));
}

TEST_CASE("pretty printing is key-sorted with a trailing newline") {
    const json j = {{"zebra", 1}, {"alpha", 2}};
    const std::string s = spectra::to_pretty_string(j);
    CHECK(s.find("alpha") < s.find("zebra"));
    CHECK(s.back() == '\n');
}

TEST_CASE("suite config round trips") {
    spectra::SuiteConfig config;
    config.max_n = 4;
    config.seed = 99;
    config.fault_injection = true;
    const auto back = spectra::suite_config_from_json(spectra::suite_config_to_json(config));
    CHECK(back.max_n == 4);
    CHECK(back.seed == 99);
    CHECK(back.fault_injection);
    CHECK(!back.timings);
}
