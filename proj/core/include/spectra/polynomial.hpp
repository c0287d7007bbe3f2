#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

#include "spectra/permutation.hpp"

namespace spectra {

using Rational = boost::multiprecision::cpp_rational;
using Exponents = std::vector<int>;

// Multivariate polynomial in n variables with exact rational coefficients.
// Terms are keyed by exponent vectors; zero coefficients are pruned, so two
// polynomials are equal iff their term maps are equal.
class Polynomial {
public:
    explicit Polynomial(int n);

    static Polynomial constant(int n, const Rational& c);
    // x_i, 1-based.
    static Polynomial variable(int n, int i);
    // Elementary symmetric polynomial e_k in n variables (e_0 = 1).
    static Polynomial elementary_symmetric(int n, int k);

    int n() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    int num_terms() const { return static_cast<int>(terms_.size()); }
    // Total degree; -1 for the zero polynomial.
    int degree() const;

    const std::map<Exponents, Rational>& terms() const { return terms_; }
    void add_term(const Exponents& exponents, const Rational& coeff);

    Polynomial operator+(const Polynomial& other) const;
    Polynomial operator-(const Polynomial& other) const;
    Polynomial operator*(const Polynomial& other) const;
    Polynomial scaled(const Rational& c) const;

    bool operator==(const Polynomial& other) const = default;

    Rational eval(const std::vector<Rational>& x) const;
    double eval(const Eigen::VectorXd& x) const;

    // p(sigma x), where (sigma x)_i = x_{sigma^{-1}(i)}: the exponent of x_j
    // in the image is the exponent of x_{sigma(j)} in p.
    Polynomial permuted(const Permutation& sigma) const;

    // Partial derivative with respect to x_i (1-based).
    Polynomial derivative(int i) const;

    std::string to_string(const std::string& var = "x") const;

private:
    int n_ = 0;
    std::map<Exponents, Rational> terms_;
};

Polynomial pow(const Polynomial& p, int k);

// Exact symmetry test: p(sigma x) = p for the adjacent transpositions, which
// generate the full symmetric group.
bool is_symmetric(const Polynomial& p);

// q(x) = sum over all sigma of p(sigma x)^2. q is symmetric, and q(x) = 0
// exactly where p(sigma x) = 0 for every sigma. Term blowup is n!, capped.
Polynomial symmetrize(const Polynomial& p, int max_n = 7);

// Rewrites a symmetric polynomial in the elementary symmetric basis by
// degree-lex leading-term reduction. Variable i of the result stands for e_i.
// Throws PreconditionError when the input is not symmetric.
Polynomial to_elementary_basis(const Polynomial& q);

// Newton's identities: elementary symmetric values e_1..e_n from power sums
// p_1..p_n (p_k = sum of k-th powers).
std::vector<Rational> elementary_from_power_sums(const std::vector<Rational>& power_sums);
std::vector<double> elementary_from_power_sums(const std::vector<double>& power_sums);

} // namespace spectra
