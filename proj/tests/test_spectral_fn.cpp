#include <algorithm>
#include <cmath>

#include <Eigen/LU>

#include "doctest.h"
#include "spectra/error.hpp"
#include "spectra/polynomial.hpp"
#include "spectra/spectral.hpp"
#include "spectra/spectral_fn.hpp"

using spectra::builtin_function;
using spectra::eval_F;
using spectra::grad_F;
using spectra::lift_point;
using spectra::Polynomial;
using spectra::random_orthogonal;
using spectra::Rational;
using spectra::Rng;
using spectra::SymmetricFunction;

namespace {

Eigen::MatrixXd lift_of(std::initializer_list<double> vals, std::uint64_t seed) {
    Eigen::VectorXd x(static_cast<int>(vals.size()));
    int i = 0;
    for (double v : vals) x(i++) = v;
    std::sort(x.data(), x.data() + x.size(), std::greater<double>());
    Rng rng(seed);
    return lift_point(x, random_orthogonal(x.size(), rng));
}

} // namespace

TEST_CASE("builtin roster") {
    const auto names = spectra::builtin_function_names();
    CHECK(names == std::vector<std::string>{"sum", "sumsq", "product", "max", "sumexp"});
    for (const auto& name : names) {
        const auto f = builtin_function(name, 4);
        CHECK(f.n == 4);
        CHECK(f.name == name);
        CHECK(static_cast<bool>(f.grad));
    }
    CHECK_THROWS_AS(builtin_function("nope", 3), spectra::UsageError);
}

TEST_CASE("matrix-level identities for the builtin families") {
    const Eigen::MatrixXd X = lift_of({3, 1, -2, 0.5}, 9);
    CHECK(eval_F(builtin_function("sum", 4), X) == doctest::Approx(X.trace()).epsilon(1e-12));
    CHECK(eval_F(builtin_function("sumsq", 4), X) ==
          doctest::Approx(X.squaredNorm()).epsilon(1e-12));
    CHECK(eval_F(builtin_function("product", 4), X) ==
          doctest::Approx(X.determinant()).epsilon(1e-10));
    CHECK(eval_F(builtin_function("max", 4), X) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(eval_F(builtin_function("sumexp", 4), X) ==
          doctest::Approx(std::exp(3) + std::exp(1) + std::exp(-2) + std::exp(0.5))
              .epsilon(1e-12));
}

TEST_CASE("gradient transfer matches finite differences for every family") {
    for (const auto& name : spectra::builtin_function_names()) {
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            const Eigen::MatrixXd X = lift_of({2.2, 1.1, -0.7}, seed);
            const auto f = builtin_function(name, 3);
            INFO(name << " seed " << seed);
            CHECK(spectra::gradient_check_error(f, X) <= 1e-6);
        }
    }
}

TEST_CASE("gradients at repeated eigenvalues, smooth families only") {
    for (const auto& name : {"sum", "sumsq", "product", "sumexp"}) {
        const Eigen::MatrixXd X = lift_of({2, 1, 1}, 17);
        INFO(name);
        CHECK(spectra::gradient_check_error(builtin_function(name, 3), X) <= 1e-6);
    }
    // max keeps its gradient when the tie sits below the top eigenvalue
    CHECK(spectra::gradient_check_error(builtin_function("max", 3), lift_of({2, 1, 1}, 17)) <=
          1e-6);
    // and refuses when the top eigenvalue itself is tied.
    CHECK_THROWS_AS(grad_F(builtin_function("max", 3), lift_of({2, 2, 1}, 17)),
                    spectra::PreconditionError);
}

TEST_CASE("gradient of the trace is the identity") {
    const Eigen::MatrixXd X = lift_of({4, 2, 1}, 23);
    const Eigen::MatrixXd G = grad_F(builtin_function("sum", 3), X);
    CHECK((G - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-10);
    const Eigen::MatrixXd G2 = grad_F(builtin_function("sumsq", 3), X);
    CHECK((G2 - 2.0 * X).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("the local symmetry probe blocks non-symmetric functions at ties") {
    // At a simple spectrum the stabilizer is trivial and any differentiable f
    // transfers, so the probe only has teeth where eigenvalues repeat.
    SymmetricFunction crooked;
    crooked.n = 3;
    crooked.name = "first";
    crooked.eval = [](const Eigen::VectorXd& x) { return x(0); };
    const Eigen::MatrixXd X = lift_of({1.5, 1.5, -0.5}, 31);
    CHECK_THROWS_AS(grad_F(crooked, X), spectra::PreconditionError);
    CHECK_NOTHROW(grad_F(crooked, lift_of({1.5, 0.7, -0.5}, 31)));

    Rng rng(4);
    Eigen::VectorXd center(3);
    center << 1.5, 1.5, -0.5;
    CHECK(!spectra::check_local_symmetry(crooked, center, 0.1, 32, rng));
    CHECK(spectra::check_local_symmetry(builtin_function("sumsq", 3), center, 0.1, 32, rng));
}

TEST_CASE("directional derivative agrees with a finite difference quotient") {
    const auto f = builtin_function("sumexp", 3);
    const Eigen::MatrixXd X = lift_of({1.4, 0.3, -1.0}, 5);
    Rng rng(6);
    const Eigen::MatrixXd G = rng.gaussian_matrix(3, 3);
    const Eigen::MatrixXd H = 0.5 * (G + G.transpose());
    const double analytic = spectra::directional_derivative_F(f, X, H);
    const double h = 1e-5;
    const double fd = (eval_F(f, X + h * H) - eval_F(f, X - h * H)) / (2 * h);
    CHECK(analytic == doctest::Approx(fd).epsilon(1e-7));
}

TEST_CASE("gradient transfer is equivariant under conjugation") {
    const auto f = builtin_function("product", 3);
    const Eigen::MatrixXd X = lift_of({2.5, 1.0, 0.4}, 8);
    Rng rng(9);
    const Eigen::MatrixXd V = random_orthogonal(3, rng);
    const Eigen::MatrixXd lhs = grad_F(f, V.transpose() * X * V);
    const Eigen::MatrixXd rhs = V.transpose() * grad_F(f, X) * V;
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("symmetric polynomials of the spectrum avoid the eigensolver") {
    // e2 of the eigenvalues of Diag(1,2,3) is 11.
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(3, 3);
    D.diagonal() << 1, 2, 3;
    const Polynomial e2 = Polynomial::elementary_symmetric(3, 2);
    CHECK(spectra::eval_q_of_lambda_via_charpoly(e2, D) ==
          doctest::Approx(11.0).epsilon(1e-12));

    // Agreement with the eigensolver path on a dense matrix.
    const Eigen::MatrixXd X = lift_of({2.0, 0.7, -1.3}, 12);
    const Eigen::VectorXd lam = spectra::lambda(X);
    const Polynomial q =
        Polynomial::elementary_symmetric(3, 1) * Polynomial::elementary_symmetric(3, 2);
    Eigen::VectorXd lam_vec = lam;
    CHECK(spectra::eval_q_of_lambda_via_charpoly(q, X) ==
          doctest::Approx(q.eval(lam_vec)).epsilon(1e-10));

    CHECK_THROWS_AS(
        spectra::eval_q_of_lambda_via_charpoly(Polynomial::variable(3, 1), X),
        spectra::PreconditionError);
    CHECK_THROWS_AS(spectra::eval_q_of_lambda_via_charpoly(e2, Eigen::MatrixXd::Zero(2, 2)),
                    spectra::UsageError);
}
