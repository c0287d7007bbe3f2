#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "spectra/config.hpp"
#include "spectra/polynomial.hpp"
#include "spectra/rng.hpp"

namespace spectra {

// A function of the eigenvalue vector. The spectral function it induces is
// F = f(lambda(X)); the gradient transfer formula below requires f to be
// symmetric near the evaluation point (checked by a sampling probe).
struct SymmetricFunction {
    enum class Scope { GLOBAL, LOCAL };

    int n = 0;
    std::string name;
    std::function<double(const Eigen::VectorXd&)> eval;
    // Optional; central finite differences are used when absent.
    std::function<Eigen::VectorXd(const Eigen::VectorXd&)> grad;
    Scope scope = Scope::GLOBAL;
};

// Built-in families: "sum", "sumsq", "product", "max", "sumexp".
SymmetricFunction builtin_function(const std::string& name, int n);
std::vector<std::string> builtin_function_names();

// Gradient of f itself: the analytic callback when present, else central
// finite differences with the default step.
Eigen::VectorXd gradient_of_f(const SymmetricFunction& f, const Eigen::VectorXd& x,
                              double step = tol::kFdStep);

// F(X) = f(lambda(X)).
double eval_F(const SymmetricFunction& f, const Eigen::MatrixXd& X);

// Gradient transfer: grad F(X) = U^T Diag(grad f(lambda(X))) U. Refuses with
// PreconditionError when the local-symmetry probe at lambda(X) fails, since
// the formula is unjustified there.
Eigen::MatrixXd grad_F(const SymmetricFunction& f, const Eigen::MatrixXd& X,
                       int probe_samples = 32, std::uint64_t probe_seed = 0);

// Directional form of the same derivative:
// d/dt F(X + tH) = grad f(lambda(X)) . diag(U H U^T).
double directional_derivative_F(const SymmetricFunction& f, const Eigen::MatrixXd& X,
                                const Eigen::MatrixXd& H, int probe_samples = 32,
                                std::uint64_t probe_seed = 0);

// Central finite differences of eval_F over the symmetric matrix entries.
Eigen::MatrixXd fd_grad_F(const SymmetricFunction& f, const Eigen::MatrixXd& X,
                          double step = tol::kFdStep);

// ||grad_F - fd_grad_F||_F / max(1, ||grad_F||_F).
double gradient_check_error(const SymmetricFunction& f, const Eigen::MatrixXd& X,
                            double step = tol::kFdStep);

// Samples x in B(x_bar, radius) and tests |f(sigma x) - f(x)| <= tol for
// every sigma in the block-stabilizer group of x_bar. A pass is evidence of
// local symmetry, not a proof.
bool check_local_symmetry(const SymmetricFunction& f, const Eigen::VectorXd& x_bar,
                          double radius, int samples, Rng& rng,
                          double tol = tol::kSymmetryProbe);

// q(lambda(X)) computed without an eigendecomposition: power sums tr(X^k),
// Newton's identities, then the elementary-symmetric form of q. Requires q
// symmetric.
double eval_q_of_lambda_via_charpoly(const Polynomial& q, const Eigen::MatrixXd& X);

} // namespace spectra
