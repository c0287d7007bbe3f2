#include "spectra/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "spectra/error.hpp"

namespace spectra {

namespace {

int total_degree(const Exponents& e) {
    return std::accumulate(e.begin(), e.end(), 0);
}

// Degree-lex: total degree first, then lexicographic on the exponent vector.
bool degree_lex_less(const Exponents& a, const Exponents& b) {
    const int da = total_degree(a);
    const int db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void check_arity(int a, int b, const char* where) {
    if (a != b) {
        std::ostringstream msg;
        msg << where << ": mixed arities " << a << " and " << b;
        throw UsageError(msg.str());
    }
}

} // namespace

Polynomial::Polynomial(int n) : n_(n) {
    if (n < 1) throw UsageError("Polynomial: n must be positive");
}

Polynomial Polynomial::constant(int n, const Rational& c) {
    Polynomial p(n);
    p.add_term(Exponents(static_cast<std::size_t>(n), 0), c);
    return p;
}

Polynomial Polynomial::variable(int n, int i) {
    if (i < 1 || i > n) throw UsageError("Polynomial::variable: index out of range");
    Polynomial p(n);
    Exponents e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(i - 1)] = 1;
    p.add_term(e, Rational(1));
    return p;
}

Polynomial Polynomial::elementary_symmetric(int n, int k) {
    if (k < 0 || k > n) {
        throw UsageError("Polynomial::elementary_symmetric: k out of range");
    }
    Polynomial p(n);
    if (k == 0) return constant(n, Rational(1));
    // All k-subsets of {0..n-1} via a selection mask walked in order.
    std::vector<int> pick(static_cast<std::size_t>(k));
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        Exponents e(static_cast<std::size_t>(n), 0);
        for (int idx : pick) e[static_cast<std::size_t>(idx)] = 1;
        p.add_term(e, Rational(1));
        int j = k - 1;
        while (j >= 0 && pick[static_cast<std::size_t>(j)] == n - k + j) --j;
        if (j < 0) break;
        ++pick[static_cast<std::size_t>(j)];
        for (int l = j + 1; l < k; ++l) {
            pick[static_cast<std::size_t>(l)] = pick[static_cast<std::size_t>(l - 1)] + 1;
        }
    }
    return p;
}

int Polynomial::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
}

void Polynomial::add_term(const Exponents& exponents, const Rational& coeff) {
    if (static_cast<int>(exponents.size()) != n_) {
        throw UsageError("Polynomial::add_term: exponent arity mismatch");
    }
    for (int e : exponents) {
        if (e < 0) throw UsageError("Polynomial::add_term: negative exponent");
    }
    if (coeff == 0) return;
    auto it = terms_.find(exponents);
    if (it == terms_.end()) {
        terms_.emplace(exponents, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
    check_arity(n_, other.n_, "Polynomial::operator+");
    Polynomial out = *this;
    for (const auto& [e, c] : other.terms_) out.add_term(e, c);
    return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
    check_arity(n_, other.n_, "Polynomial::operator-");
    Polynomial out = *this;
    for (const auto& [e, c] : other.terms_) out.add_term(e, -c);
    return out;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
    check_arity(n_, other.n_, "Polynomial::operator*");
    Polynomial out(n_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : other.terms_) {
            Exponents e(static_cast<std::size_t>(n_));
            for (int i = 0; i < n_; ++i) {
                e[static_cast<std::size_t>(i)] = ea[static_cast<std::size_t>(i)] +
                                                 eb[static_cast<std::size_t>(i)];
            }
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

Polynomial Polynomial::scaled(const Rational& c) const {
    Polynomial out(n_);
    if (c == 0) return out;
    for (const auto& [e, coeff] : terms_) out.add_term(e, coeff * c);
    return out;
}

Rational Polynomial::eval(const std::vector<Rational>& x) const {
    if (static_cast<int>(x.size()) != n_) {
        throw UsageError("Polynomial::eval: point arity mismatch");
    }
    Rational acc(0);
    for (const auto& [e, c] : terms_) {
        Rational term = c;
        for (int i = 0; i < n_; ++i) {
            for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k) {
                term *= x[static_cast<std::size_t>(i)];
            }
        }
        acc += term;
    }
    return acc;
}

double Polynomial::eval(const Eigen::VectorXd& x) const {
    if (static_cast<int>(x.size()) != n_) {
        throw UsageError("Polynomial::eval: point arity mismatch");
    }
    double acc = 0.0;
    for (const auto& [e, c] : terms_) {
        double term = c.convert_to<double>();
        for (int i = 0; i < n_; ++i) {
            for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k) term *= x(i);
        }
        acc += term;
    }
    return acc;
}

Polynomial Polynomial::permuted(const Permutation& sigma) const {
    if (sigma.n() != n_) throw UsageError("Polynomial::permuted: arity mismatch");
    Polynomial out(n_);
    for (const auto& [e, c] : terms_) {
        Exponents moved(static_cast<std::size_t>(n_));
        for (int j = 1; j <= n_; ++j) {
            moved[static_cast<std::size_t>(j - 1)] =
                e[static_cast<std::size_t>(sigma(j) - 1)];
        }
        out.add_term(moved, c);
    }
    return out;
}

Polynomial Polynomial::derivative(int i) const {
    if (i < 1 || i > n_) throw UsageError("Polynomial::derivative: index out of range");
    Polynomial out(n_);
    for (const auto& [e, c] : terms_) {
        const int p = e[static_cast<std::size_t>(i - 1)];
        if (p == 0) continue;
        Exponents de = e;
        de[static_cast<std::size_t>(i - 1)] = p - 1;
        out.add_term(de, c * p);
    }
    return out;
}

std::string Polynomial::to_string(const std::string& var) const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // Print in descending lexicographic order of the exponent vectors.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        const bool negative = c < 0;
        const Rational mag = negative ? Rational(-c) : c;
        if (first) {
            if (negative) out << "-";
            first = false;
        } else {
            out << (negative ? " - " : " + ");
        }
        const bool is_const = total_degree(e) == 0;
        if (mag != 1 || is_const) out << mag;
        bool printed_var = false;
        for (int i = 0; i < n_; ++i) {
            const int p = e[static_cast<std::size_t>(i)];
            if (p == 0) continue;
            if (printed_var || mag != 1) out << " ";
            out << var << i + 1;
            if (p > 1) out << "^" << p;
            printed_var = true;
        }
    }
    return out.str();
}

Polynomial pow(const Polynomial& p, int k) {
    if (k < 0) throw UsageError("pow(Polynomial): negative exponent");
    Polynomial out = Polynomial::constant(p.n(), Rational(1));
    for (int i = 0; i < k; ++i) out = out * p;
    return out;
}

bool is_symmetric(const Polynomial& p) {
    const int n = p.n();
    for (int i = 1; i < n; ++i) {
        const auto tau = Permutation::from_cycles(n, {{i, i + 1}});
        if (!(p.permuted(tau) == p)) return false;
    }
    return true;
}

Polynomial symmetrize(const Polynomial& p, int max_n) {
    const int n = p.n();
    if (n > max_n) {
        std::ostringstream msg;
        msg << "symmetrize: n = " << n << " exceeds the factorial cap of " << max_n;
        throw CapError(msg.str());
    }
    const Polynomial square = p * p;
    Polynomial out(n);
    for (const auto& sigma : all_permutations(n)) {
        out = out + square.permuted(sigma);
    }
    return out;
}

Polynomial to_elementary_basis(const Polynomial& q) {
    const int n = q.n();
    if (!is_symmetric(q)) {
        throw PreconditionError("to_elementary_basis: polynomial is not symmetric");
    }
    std::vector<Polynomial> elementary;
    elementary.reserve(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        elementary.push_back(Polynomial::elementary_symmetric(n, k));
    }

    Polynomial rest = q;
    Polynomial out(n);
    while (!rest.is_zero()) {
        // Degree-lex leading term of a symmetric polynomial has a weakly
        // decreasing exponent vector.
        auto lead = rest.terms().begin();
        for (auto it = rest.terms().begin(); it != rest.terms().end(); ++it) {
            if (degree_lex_less(lead->first, it->first)) lead = it;
        }
        const Exponents lambda = lead->first;
        const Rational c = lead->second;
        for (int i = 0; i + 1 < n; ++i) {
            if (lambda[static_cast<std::size_t>(i)] <
                lambda[static_cast<std::size_t>(i + 1)]) {
                throw PreconditionError(
                    "to_elementary_basis: leading exponent not weakly decreasing");
            }
        }
        Exponents mu(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const int next = (i + 1 < n) ? lambda[static_cast<std::size_t>(i + 1)] : 0;
            mu[static_cast<std::size_t>(i)] = lambda[static_cast<std::size_t>(i)] - next;
        }
        Polynomial product = Polynomial::constant(n, Rational(1));
        for (int i = 0; i < n; ++i) {
            const int k = mu[static_cast<std::size_t>(i)];
            if (k > 0) product = product * pow(elementary[static_cast<std::size_t>(i)], k);
        }
        rest = rest - product.scaled(c);
        out.add_term(mu, c);
    }
    return out;
}

std::vector<Rational> elementary_from_power_sums(const std::vector<Rational>& power_sums) {
    const int n = static_cast<int>(power_sums.size());
    std::vector<Rational> e(static_cast<std::size_t>(n) + 1);
    e[0] = Rational(1);
    for (int k = 1; k <= n; ++k) {
        Rational acc(0);
        Rational sign(1);
        for (int i = 1; i <= k; ++i) {
            acc += sign * e[static_cast<std::size_t>(k - i)] *
                   power_sums[static_cast<std::size_t>(i - 1)];
            sign = -sign;
        }
        e[static_cast<std::size_t>(k)] = acc / k;
    }
    return {e.begin() + 1, e.end()};
}

std::vector<double> elementary_from_power_sums(const std::vector<double>& power_sums) {
    const int n = static_cast<int>(power_sums.size());
    std::vector<double> e(static_cast<std::size_t>(n) + 1);
    e[0] = 1.0;
    for (int k = 1; k <= n; ++k) {
        double acc = 0.0;
        double sign = 1.0;
        for (int i = 1; i <= k; ++i) {
            acc += sign * e[static_cast<std::size_t>(k - i)] *
                   power_sums[static_cast<std::size_t>(i - 1)];
            sign = -sign;
        }
        e[static_cast<std::size_t>(k)] = acc / k;
    }
    return {e.begin() + 1, e.end()};
}

} // namespace spectra
