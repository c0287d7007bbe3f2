#include <vector>

#include "doctest.h"
#include "spectra/error.hpp"
#include "spectra/polynomial.hpp"

using spectra::elementary_from_power_sums;
using spectra::is_symmetric;
using spectra::parse_cycles;
using spectra::Polynomial;
using spectra::pow;
using spectra::Rational;
using spectra::symmetrize;
using spectra::to_elementary_basis;

namespace {

Polynomial x(int n, int i) { return Polynomial::variable(n, i); }

std::vector<Rational> rat(std::initializer_list<long> vals) {
    std::vector<Rational> out;
    for (long v : vals) out.emplace_back(v);
    return out;
}

} // namespace

TEST_CASE("arithmetic and evaluation") {
    const Polynomial p = x(2, 1) * x(2, 1) + x(2, 2).scaled(Rational(3, 2));
    CHECK(p.degree() == 2);
    CHECK(p.num_terms() == 2);
    CHECK(p.eval(rat({4, 2})) == Rational(19));
    Eigen::VectorXd v(2);
    v << 4, 2;
    CHECK(p.eval(v) == doctest::Approx(19.0).epsilon(1e-15));

    const Polynomial zero = p - p;
    CHECK(zero.is_zero());
    CHECK(zero.degree() == -1);
    CHECK((p + zero) == p);
    CHECK(pow(x(2, 1) + x(2, 2), 2).eval(rat({1, 2})) == Rational(9));
}

TEST_CASE("permuting variables follows the point action") {
    // p(sigma x) evaluated at x equals p evaluated at sigma^{-1}-indexed
    // coordinates; check against the vector action directly.
    const Polynomial p = x(3, 1) + x(3, 2).scaled(Rational(2)) * x(3, 3);
    const auto sigma = parse_cycles("(1 2 3)");
    const Polynomial q = p.permuted(sigma);
    Eigen::VectorXd v(3);
    v << 0.5, -2.0, 7.0;
    CHECK(q.eval(v) == doctest::Approx(p.eval(spectra::apply(sigma, v))).epsilon(1e-14));
    CHECK(p.permuted(spectra::Permutation::identity(3)) == p);
}

TEST_CASE("symmetry detection") {
    CHECK(is_symmetric(Polynomial::elementary_symmetric(4, 2)));
    CHECK(is_symmetric(x(3, 1) + x(3, 2) + x(3, 3)));
    CHECK(!is_symmetric(x(3, 1) - x(3, 2)));
    CHECK(!is_symmetric(x(2, 1) * x(2, 1) + x(2, 2)));
}

TEST_CASE("elementary symmetric polynomials evaluate to the textbook values") {
    CHECK(Polynomial::elementary_symmetric(3, 0).eval(rat({1, 2, 3})) == Rational(1));
    CHECK(Polynomial::elementary_symmetric(3, 1).eval(rat({1, 2, 3})) == Rational(6));
    CHECK(Polynomial::elementary_symmetric(3, 2).eval(rat({1, 2, 3})) == Rational(11));
    CHECK(Polynomial::elementary_symmetric(3, 3).eval(rat({1, 2, 3})) == Rational(6));
}

TEST_CASE("symmetrization produces the group square sum") {
    // Over S_2, (x1 - x2)^2 appears once per permutation: the result is
    // exactly 2 (x1 - x2)^2.
    const Polynomial p = x(2, 1) - x(2, 2);
    const Polynomial q = symmetrize(p);
    CHECK(is_symmetric(q));
    const Polynomial expected = (p * p).scaled(Rational(2));
    CHECK(q == expected);

    // Zero set: q vanishes exactly where every permuted copy vanishes.
    CHECK(q.eval(rat({3, 3})) == Rational(0));
    CHECK(q.eval(rat({3, 1})) != Rational(0));

    Polynomial big(8);
    big.add_term({1, 0, 0, 0, 0, 0, 0, 0}, Rational(1));
    CHECK_THROWS_AS(symmetrize(big), spectra::CapError);
}

TEST_CASE("rewriting in the elementary basis") {
    // Power sum p2 = e1^2 - 2 e2.
    const Polynomial p2 = x(3, 1) * x(3, 1) + x(3, 2) * x(3, 2) + x(3, 3) * x(3, 3);
    const Polynomial rewritten = to_elementary_basis(p2);
    Polynomial expected(3);
    expected.add_term({2, 0, 0}, Rational(1));
    expected.add_term({0, 1, 0}, Rational(-2));
    CHECK(rewritten == expected);
    CHECK_THROWS_AS(to_elementary_basis(x(3, 1)), spectra::PreconditionError);
}

TEST_CASE("elementary basis rewrite round trips through evaluation") {
    // Substitute e_i values computed at a point; the rewrite must evaluate
    // to the original symmetric polynomial.
    const Polynomial q =
        Polynomial::elementary_symmetric(4, 2) * Polynomial::elementary_symmetric(4, 1) +
        Polynomial::elementary_symmetric(4, 3).scaled(Rational(-5, 3));
    const Polynomial in_e = to_elementary_basis(q);
    const auto point = rat({2, -1, 3, 7});
    std::vector<Rational> evalues;
    for (int k = 1; k <= 4; ++k)
        evalues.push_back(Polynomial::elementary_symmetric(4, k).eval(point));
    CHECK(in_e.eval(evalues) == q.eval(point));
}

TEST_CASE("Newton identities recover elementary values from power sums") {
    // Roots 1, 2, 3: p = (6, 14, 36), e = (6, 11, 6).
    const auto exact = elementary_from_power_sums(rat({6, 14, 36}));
    CHECK(exact == rat({6, 11, 6}));
    const auto approx = elementary_from_power_sums(std::vector<double>{6, 14, 36});
    CHECK(approx[0] == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(approx[1] == doctest::Approx(11.0).epsilon(1e-14));
    CHECK(approx[2] == doctest::Approx(6.0).epsilon(1e-14));
}

TEST_CASE("derivatives") {
    const Polynomial p = x(2, 1) * x(2, 1) * x(2, 2);
    Polynomial d1(2);
    d1.add_term({1, 1}, Rational(2));
    Polynomial d2(2);
    d2.add_term({2, 0}, Rational(1));
    CHECK(p.derivative(1) == d1);
    CHECK(p.derivative(2) == d2);
    CHECK(Polynomial::constant(2, Rational(9)).derivative(1).is_zero());
}

TEST_CASE("printing is readable") {
    const Polynomial p = x(2, 1) * x(2, 1) + x(2, 2).scaled(Rational(-1));
    const std::string s = p.to_string();
    CHECK(s.find("x1") != std::string::npos);
    CHECK(s.find("x2") != std::string::npos);
}
