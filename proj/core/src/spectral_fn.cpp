#include "spectra/spectral_fn.hpp"

#include <cmath>
#include <sstream>

#include "spectra/error.hpp"
#include "spectra/perm_group.hpp"
#include "spectra/spectral.hpp"

namespace spectra {

namespace {

constexpr double kProbeRadius = 1e-3;

void check_arity(const SymmetricFunction& f, Eigen::Index size, const char* where) {
    if (f.n != static_cast<int>(size)) {
        std::ostringstream msg;
        msg << where << ": function arity " << f.n << " does not match size " << size;
        throw UsageError(msg.str());
    }
}

} // namespace

SymmetricFunction builtin_function(const std::string& name, int n) {
    if (n < 1) throw UsageError("builtin_function: n must be positive");
    SymmetricFunction f;
    f.n = n;
    f.name = name;
    if (name == "sum") {
        f.eval = [](const Eigen::VectorXd& x) { return x.sum(); };
        f.grad = [](const Eigen::VectorXd& x) {
            return Eigen::VectorXd::Ones(x.size()).eval();
        };
    } else if (name == "sumsq") {
        f.eval = [](const Eigen::VectorXd& x) { return x.squaredNorm(); };
        f.grad = [](const Eigen::VectorXd& x) { return (2.0 * x).eval(); };
    } else if (name == "product") {
        f.eval = [](const Eigen::VectorXd& x) { return x.prod(); };
        f.grad = [](const Eigen::VectorXd& x) {
            Eigen::VectorXd g(x.size());
            for (Eigen::Index i = 0; i < x.size(); ++i) {
                double p = 1.0;
                for (Eigen::Index j = 0; j < x.size(); ++j) {
                    if (j != i) p *= x(j);
                }
                g(i) = p;
            }
            return g;
        };
    } else if (name == "max") {
        f.eval = [](const Eigen::VectorXd& x) { return x.maxCoeff(); };
        f.grad = [](const Eigen::VectorXd& x) {
            Eigen::Index top = 0;
            x.maxCoeff(&top);
            for (Eigen::Index i = 0; i < x.size(); ++i) {
                if (i != top && std::abs(x(i) - x(top)) < 1e-10) {
                    throw PreconditionError(
                        "max: tied maximum coordinates, not differentiable here");
                }
            }
            Eigen::VectorXd g = Eigen::VectorXd::Zero(x.size());
            g(top) = 1.0;
            return g;
        };
    } else if (name == "sumexp") {
        f.eval = [](const Eigen::VectorXd& x) { return x.array().exp().sum(); };
        f.grad = [](const Eigen::VectorXd& x) { return x.array().exp().matrix().eval(); };
    } else {
        throw UsageError("builtin_function: unknown name '" + name +
                         "' (expected one of sum, sumsq, product, max, sumexp)");
    }
    return f;
}

std::vector<std::string> builtin_function_names() {
    return {"sum", "sumsq", "product", "max", "sumexp"};
}

Eigen::VectorXd gradient_of_f(const SymmetricFunction& f, const Eigen::VectorXd& x,
                              double step) {
    check_arity(f, x.size(), "gradient_of_f");
    if (f.grad) return f.grad(x);
    Eigen::VectorXd g(x.size());
    Eigen::VectorXd probe = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        probe(i) = x(i) + step;
        const double up = f.eval(probe);
        probe(i) = x(i) - step;
        const double down = f.eval(probe);
        probe(i) = x(i);
        g(i) = (up - down) / (2.0 * step);
    }
    return g;
}

double eval_F(const SymmetricFunction& f, const Eigen::MatrixXd& X) {
    check_arity(f, X.rows(), "eval_F");
    return f.eval(lambda(X));
}

Eigen::MatrixXd grad_F(const SymmetricFunction& f, const Eigen::MatrixXd& X,
                       int probe_samples, std::uint64_t probe_seed) {
    check_arity(f, X.rows(), "grad_F");
    const SpectralPoint sp = spectral_point(X);
    Rng rng(probe_seed);
    if (!check_local_symmetry(f, sp.eigenvalues, kProbeRadius, probe_samples, rng)) {
        throw PreconditionError(
            "grad_F: '" + f.name +
            "' failed the local-symmetry probe at lambda(X); the transfer "
            "formula does not apply");
    }
    const Eigen::VectorXd g = gradient_of_f(f, sp.eigenvalues);
    return sp.eigenbasis.transpose() * g.asDiagonal() * sp.eigenbasis;
}

double directional_derivative_F(const SymmetricFunction& f, const Eigen::MatrixXd& X,
                                const Eigen::MatrixXd& H, int probe_samples,
                                std::uint64_t probe_seed) {
    check_arity(f, X.rows(), "directional_derivative_F");
    if (H.rows() != X.rows() || H.cols() != X.cols()) {
        throw UsageError("directional_derivative_F: H must match the shape of X");
    }
    const SpectralPoint sp = spectral_point(X);
    Rng rng(probe_seed);
    if (!check_local_symmetry(f, sp.eigenvalues, kProbeRadius, probe_samples, rng)) {
        throw PreconditionError(
            "directional_derivative_F: '" + f.name +
            "' failed the local-symmetry probe at lambda(X)");
    }
    const Eigen::VectorXd g = gradient_of_f(f, sp.eigenvalues);
    const Eigen::VectorXd h =
        (sp.eigenbasis * H * sp.eigenbasis.transpose()).diagonal();
    return g.dot(h);
}

Eigen::MatrixXd fd_grad_F(const SymmetricFunction& f, const Eigen::MatrixXd& X,
                          double step) {
    check_arity(f, X.rows(), "fd_grad_F");
    const int n = static_cast<int>(X.rows());
    Eigen::MatrixXd G(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
            H(i, j) = 1.0;
            H(j, i) = 1.0;
            const double up = eval_F(f, X + step * H);
            const double down = eval_F(f, X - step * H);
            const double deriv = (up - down) / (2.0 * step);
            // deriv = <G, E_ij + E_ji> = 2 G_ij off the diagonal, G_ii on it.
            if (i == j) {
                G(i, i) = deriv;
            } else {
                G(i, j) = deriv / 2.0;
                G(j, i) = deriv / 2.0;
            }
        }
    }
    return G;
}

double gradient_check_error(const SymmetricFunction& f, const Eigen::MatrixXd& X,
                            double step) {
    const Eigen::MatrixXd analytic = grad_F(f, X);
    const Eigen::MatrixXd numeric = fd_grad_F(f, X, step);
    return (analytic - numeric).norm() / std::max(1.0, analytic.norm());
}

bool check_local_symmetry(const SymmetricFunction& f, const Eigen::VectorXd& x_bar,
                          double radius, int samples, Rng& rng, double tol) {
    check_arity(f, x_bar.size(), "check_local_symmetry");
    if (radius < 0.0 || samples < 1) {
        throw UsageError("check_local_symmetry: radius and samples must be positive");
    }
    const Partition P = partition_of_point(x_bar, 1e-9);
    const auto group = enumerate_block_group(P);
    const int n = static_cast<int>(x_bar.size());
    for (int s = 0; s <= samples; ++s) {
        Eigen::VectorXd x = x_bar;
        if (s > 0) {
            for (int i = 0; i < n; ++i) x(i) += radius * rng.uniform(-1.0, 1.0);
        }
        const double base = f.eval(x);
        for (const auto& sigma : group) {
            if (sigma.is_identity()) continue;
            if (std::abs(f.eval(apply(sigma, x)) - base) > tol) return false;
        }
    }
    return true;
}

double eval_q_of_lambda_via_charpoly(const Polynomial& q, const Eigen::MatrixXd& X) {
    const int n = static_cast<int>(X.rows());
    if (q.n() != n) {
        throw UsageError("eval_q_of_lambda_via_charpoly: arity mismatch");
    }
    if (!is_symmetric(q)) {
        throw PreconditionError(
            "eval_q_of_lambda_via_charpoly: polynomial is not symmetric");
    }
    const Polynomial basis = to_elementary_basis(q);
    std::vector<double> power_sums(static_cast<std::size_t>(n));
    Eigen::MatrixXd Xk = Eigen::MatrixXd::Identity(n, n);
    for (int k = 1; k <= n; ++k) {
        Xk = Xk * X;
        power_sums[static_cast<std::size_t>(k - 1)] = Xk.trace();
    }
    const std::vector<double> e = elementary_from_power_sums(power_sums);
    const Eigen::VectorXd ev = Eigen::Map<const Eigen::VectorXd>(e.data(), n);
    return basis.eval(ev);
}

} // namespace spectra
