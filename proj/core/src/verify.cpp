#include "spectra/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "spectra/error.hpp"
#include "spectra/jacobi.hpp"
#include "spectra/linalg.hpp"
#include "spectra/manifolds.hpp"
#include "spectra/perm_group.hpp"
#include "spectra/polynomial.hpp"
#include "spectra/rng.hpp"
#include "spectra/spectral.hpp"
#include "spectra/spectral_fn.hpp"
#include "spectra/strata.hpp"

namespace spectra {

namespace {

std::uint64_t factorial_u64(int n) {
    std::uint64_t f = 1;
    for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
    return f;
}

Eigen::MatrixXd random_symmetric(int n, Rng& rng) {
    Eigen::MatrixXd A = rng.gaussian_matrix(n, n);
    return 0.5 * (A + A.transpose());
}

// Gaussian vector with all coordinates separated by at least `gap`, so the
// equal-coordinate partition is unambiguous.
Eigen::VectorXd distinct_vector(int n, Rng& rng, double gap = 1e-3) {
    for (;;) {
        Eigen::VectorXd y = rng.gaussian_vector(n);
        Eigen::VectorXd s = y;
        std::sort(s.data(), s.data() + n);
        bool ok = true;
        for (int i = 0; i + 1 < n; ++i)
            if (s(i + 1) - s(i) < gap) ok = false;
        if (ok) return y;
    }
}

bool blockwise_distinct(const Partition& P, const Eigen::VectorXd& y, double gap = 1e-9) {
    for (int k = 0; k < P.num_blocks(); ++k) {
        const auto& block = P.block(k);
        for (std::size_t a = 0; a < block.size(); ++a)
            for (std::size_t b = a + 1; b < block.size(); ++b)
                if (std::abs(y(block[a] - 1) - y(block[b] - 1)) <= gap) return false;
    }
    return true;
}

std::string manifold_label(const ManifoldDescriptor& M) {
    std::ostringstream out;
    out << to_string(M.kind) << " n=" << M.n;
    switch (M.kind) {
        case ManifoldKind::STRATUM:
        case ManifoldKind::AFFINE_PERPPERP:
        case ManifoldKind::SPHERE_IN_PERPPERP:
            out << " P=" << M.partition.to_string();
            break;
        case ManifoldKind::CONSTANT_SUPPORT:
            out << " r=" << M.support;
            break;
        case ManifoldKind::CUSTOM:
            break;
    }
    return out.str();
}

class Harness {
public:
    explicit Harness(const SuiteConfig& config) : config_(config) {
        report_.config = config;
    }

    // Runs one check with its own deterministic generator; exceptions fail
    // the check instead of aborting the suite.
    void run(const std::string& id, const std::function<void(Rng&, CheckResult&)>& body) {
        CheckResult result;
        result.check_id = id;
        Rng rng(config_.seed * 1000003ULL + static_cast<std::uint64_t>(index_));
        ++index_;
        const auto start = std::chrono::steady_clock::now();
        try {
            result.passed = true;
            body(rng, result);
        } catch (const std::exception& e) {
            result.passed = false;
            if (!result.detail.empty()) result.detail += "; ";
            result.detail += std::string("exception: ") + e.what();
        }
        const auto stop = std::chrono::steady_clock::now();
        result.runtime_seconds = std::chrono::duration<double>(stop - start).count();
        if (!result.passed) report_.all_passed = false;
        report_.checks.push_back(std::move(result));
    }

    SuiteReport take() { return std::move(report_); }

    const SuiteConfig& config() const { return config_; }

private:
    SuiteConfig config_;
    SuiteReport report_;
    int index_ = 0;
};

void require(CheckResult& result, bool condition, const std::string& on_failure) {
    if (condition) return;
    result.passed = false;
    if (!result.detail.empty()) result.detail += "; ";
    result.detail += on_failure;
}

void track(CheckResult& result, double error) {
    result.max_error = std::max(result.max_error, error);
}

} // namespace

YMatrix build_Y(const Eigen::VectorXd& y, int max_n) {
    const int n = static_cast<int>(y.size());
    if (n < 1) throw UsageError("build_Y: y must be nonempty");
    if (n > max_n) {
        throw CapError("build_Y: n = " + std::to_string(n) + " exceeds the row cap (" +
                       std::to_string(max_n) + "! rows)");
    }
    YMatrix Y;
    Y.n = n;
    Y.y = y;
    const std::vector<Permutation> perms = all_permutations(n);
    Y.rows.resize(static_cast<Eigen::Index>(perms.size()) + 1, n + 1);
    Y.rows.row(0).setOnes();
    Y.rows(0, n) = 0.0;
    for (std::size_t k = 0; k < perms.size(); ++k) {
        Y.rows.row(static_cast<Eigen::Index>(k) + 1).head(n) = apply(perms[k], y).transpose();
        Y.rows(static_cast<Eigen::Index>(k) + 1, n) = 1.0;
    }
    return Y;
}

int rank_Y(const YMatrix& Y) {
    const int numeric = rank_svd(Y.rows, 1e-10);
    const int exact = rank_exact(to_rational(Y.rows));
    if (numeric != exact) {
        throw Error("rank_Y: singular-value rank " + std::to_string(numeric) +
                    " disagrees with exact rank " + std::to_string(exact));
    }
    return exact;
}

bool check_corollary_A2(const Permutation& sigma, const Eigen::VectorXd& y, int trials,
                        std::uint64_t seed) {
    const int n = sigma.n();
    if (static_cast<int>(y.size()) != n)
        throw UsageError("check_corollary_A2: y length does not match the permutation degree");
    if (trials < 1) throw UsageError("check_corollary_A2: trials must be positive");
    const Partition P = partition_of_perm(sigma);
    if (!blockwise_distinct(P, y))
        throw PreconditionError(
            "check_corollary_A2: y must have distinct coordinates within every block of the "
            "permutation's partition");

    const std::vector<Permutation> group = enumerate_S_succsim(sigma);
    Rng rng(seed);

    // The statement as a linear system in (x, c): blockwise zero sums plus
    // <x, sigma2 y> = c over the block stabilizer force x = 0, c = 0; the
    // system's matrix must therefore have full column rank n + 1.
    const auto holds_for = [&](const Eigen::VectorXd& probe) {
        Eigen::MatrixXd A(static_cast<Eigen::Index>(group.size()) + P.num_blocks(), n + 1);
        Eigen::Index r = 0;
        for (const Permutation& g : group) {
            A.row(r).head(n) = apply(g, probe).transpose();
            A(r, n) = -1.0;
            ++r;
        }
        for (int k = 0; k < P.num_blocks(); ++k) {
            A.row(r).setZero();
            for (int i : P.block(k)) A(r, i - 1) = 1.0;
            ++r;
        }
        const int numeric = rank_svd(A, 1e-10);
        const int exact = rank_exact(to_rational(A));
        if (numeric != exact) {
            throw Error("check_corollary_A2: singular-value rank " + std::to_string(numeric) +
                        " disagrees with exact rank " + std::to_string(exact));
        }
        return exact == n + 1;
    };

    if (!holds_for(y)) return false;
    for (int t = 1; t < trials; ++t) {
        Eigen::VectorXd probe;
        do {
            probe = rng.gaussian_vector(n);
        } while (!blockwise_distinct(P, probe, 1e-6));
        if (!holds_for(probe)) return false;
    }
    return true;
}

SuiteReport run_suite(const SuiteConfig& config) {
    if (config.max_n < 2) throw UsageError("run_suite: max_n must be at least 2");
    Harness harness(config);
    const int strata_top = std::min(config.max_n, 5);

    for (int n = 2; n <= strata_top; ++n) {
        harness.run("strata_properties_n" + std::to_string(n), [&, n](Rng&, CheckResult& result) {
            const StratificationReport rep = verify_stratification_properties(
                n, config.seed * 1000003ULL + static_cast<std::uint64_t>(n));
            require(result, rep.all_passed, [&] {
                std::string failed;
                for (const auto& c : rep.checks)
                    if (!c.passed) failed += (failed.empty() ? "" : ", ") + c.id;
                return "failed: " + failed;
            }());
            if (result.passed)
                result.detail = std::to_string(rep.checks.size()) + " properties hold";
        });
    }

    harness.run("ball_radius_closed_forms", [&](Rng&, CheckResult& result) {
        Eigen::VectorXd x(3);
        x << 3, 2, 1;
        const double r1 = ball_preservation_radius(x);
        track(result, std::abs(r1 - std::sqrt(2.0) / 3.0));
        require(result, std::abs(r1 - std::sqrt(2.0) / 3.0) <= 1e-12,
                "r(3,2,1) != sqrt(2)/3");

        Eigen::VectorXd e(3);
        e << 5, 5, 5;
        require(result, std::isinf(ball_preservation_radius(e)),
                "constant point must give an infinite radius");

        Eigen::VectorXd z(4);
        z << 2, 2, 0, 0;
        const double r2 = ball_preservation_radius(z);
        track(result, std::abs(r2 - 2.0 * std::sqrt(2.0) / 3.0));
        require(result, std::abs(r2 - 2.0 * std::sqrt(2.0) / 3.0) <= 1e-12,
                "r(2,2,0,0) != 2 sqrt(2)/3");
    });

    harness.run("cardinality_formula", [&](Rng&, CheckResult& result) {
        for (const Permutation& sigma : all_permutations(4)) {
            const BigInt formula = card_S_succsim(sigma);
            const auto group = enumerate_S_succsim(sigma);
            require(result, formula == BigInt(group.size()),
                    "|S^>=| formula mismatch at sigma = " + sigma.to_cycle_string());
        }
        for (const Partition& P : all_partitions(4)) {
            const BigInt formula = card_block_group(P);
            require(result, formula == BigInt(enumerate_block_group(P).size()),
                    "block-group cardinality mismatch at P = " + P.to_string());
        }
    });

    harness.run("projection_two_formulas", [&](Rng& rng, CheckResult& result) {
        for (const Partition& P : all_partitions(4)) {
            const Stratum S(P);
            for (int t = 0; t < 4; ++t) {
                const Eigen::VectorXd x = rng.gaussian_vector(4);
                const double err =
                    (S.project_perpperp(x) - S.project_perpperp_by_group(x)).norm();
                track(result, err);
                require(result, err <= tol::kProjectionAgreement,
                        "projections disagree on P = " + P.to_string());
            }
        }
    });

    harness.run("eigen_reconstruction", [&](Rng& rng, CheckResult& result) {
        for (int n = 2; n <= 8; ++n) {
            for (int t = 0; t < 3; ++t) {
                const Eigen::MatrixXd X = random_symmetric(n, rng);
                const EigenDecomposition ed = jacobi_eigen(X);
                const double recon = (reconstruct(ed) - X).norm();
                const double ortho =
                    (ed.U * ed.U.transpose() - Eigen::MatrixXd::Identity(n, n)).norm();
                track(result, recon);
                track(result, ortho);
                require(result, recon <= 1e-10 * std::max(1.0, X.norm()),
                        "reconstruction residual too large at n = " + std::to_string(n));
                require(result, ortho <= tol::kOrthogonality,
                        "eigenbasis not orthogonal at n = " + std::to_string(n));
                bool sorted = true;
                for (int i = 0; i + 1 < n; ++i)
                    if (ed.values(i) < ed.values(i + 1) - 1e-14) sorted = false;
                require(result, sorted, "eigenvalues not descending");
            }
        }
    });

    harness.run("lambda_orbit_invariance", [&](Rng& rng, CheckResult& result) {
        for (int n = 2; n <= 6; ++n) {
            const Eigen::MatrixXd X = random_symmetric(n, rng);
            const Eigen::VectorXd base = lambda(X);
            for (int t = 0; t < 3; ++t) {
                const Eigen::MatrixXd Q = random_orthogonal(n, rng);
                const double err = (lambda(Q.transpose() * X * Q) - base).norm();
                track(result, err);
                require(result, err <= 1e-9,
                        "conjugation changed the spectrum at n = " + std::to_string(n));
            }
        }
    });

    harness.run("trace_frobenius_conservation", [&](Rng& rng, CheckResult& result) {
        for (int n = 2; n <= 6; ++n) {
            const Eigen::MatrixXd X = random_symmetric(n, rng);
            const Eigen::VectorXd lam = lambda(X);
            double err = std::abs(lam.sum() - X.trace()) / std::max(1.0, std::abs(X.trace()));
            err = std::max(err, std::abs(lam.squaredNorm() - X.squaredNorm()) /
                                    std::max(1.0, X.squaredNorm()));
            if (config.fault_injection) err += 1e-3;
            track(result, err);
            require(result, err <= 1e-9,
                    "trace / Frobenius conservation violated at n = " + std::to_string(n));
        }
        if (config.fault_injection && !result.detail.empty())
            result.detail += " (fault injection active)";
        else if (config.fault_injection)
            result.detail = "fault injection active";
    });

    harness.run("orbit_dimension_oracle", [&](Rng& rng, CheckResult& result) {
        for (int n = 2; n <= 6; ++n) {
            for (int t = 0; t < 4; ++t) {
                // Random points with deliberate coordinate collisions.
                Eigen::VectorXd x = rng.gaussian_vector(n);
                const int merges = static_cast<int>(rng.uniform_index(n));
                for (int m = 0; m < merges; ++m) {
                    const int i = static_cast<int>(rng.uniform_index(n));
                    const int j = static_cast<int>(rng.uniform_index(n));
                    x(i) = x(j);
                }
                const int formula = orbit_dimension(x);
                const int numeric = orbit_dimension_numeric(x);
                require(result, formula == numeric,
                        "orbit dimension formula " + std::to_string(formula) +
                            " != numeric rank " + std::to_string(numeric));
                require(result, formula + stabilizer_dimension(x) == n * (n - 1) / 2,
                        "orbit + stabilizer dimensions do not sum to dim O(n)");
            }
        }
    });

    harness.run("block_spectrum_agreement", [&](Rng&, CheckResult& result) {
        const OrderedPartition P(Partition(3, {{1, 2}, {3}}));
        Eigen::MatrixXd A(2, 2);
        A << 5, 1, 1, 4;
        Eigen::MatrixXd sep(1, 1), overlap(1, 1);
        sep << 0.5;
        overlap << 4.0;

        const auto good = check_block_spectrum_agreement(BlockMatrix(P, {A, sep}));
        require(result, good.separated && good.agrees,
                "separated block spectra must agree with the full spectrum");

        const auto bad = check_block_spectrum_agreement(BlockMatrix(P, {A, overlap}));
        require(result, !bad.separated && !bad.agrees,
                "overlapping block spectra must be flagged, got: " + bad.diagnostic);
    });

    for (const std::string& name : builtin_function_names()) {
        harness.run("gradcheck_" + name, [&, name](Rng& rng, CheckResult& result) {
            for (int n = 2; n <= 5; ++n) {
                const SymmetricFunction f = builtin_function(name, n);
                for (int t = 0; t < 3; ++t) {
                    // Distinct eigenvalues keep every builtin differentiable.
                    const Eigen::VectorXd x = distinct_vector(n, rng, 1e-2);
                    Eigen::VectorXd lam = x;
                    std::sort(lam.data(), lam.data() + n, std::greater<double>());
                    const Eigen::MatrixXd X = lift_point(lam, random_orthogonal(n, rng));
                    const double err = gradient_check_error(f, X);
                    track(result, err);
                    require(result, err <= 1e-6,
                            name + ": gradient mismatch " + std::to_string(err) + " at n = " +
                                std::to_string(n));
                }
            }
        });
    }

    harness.run("product_equals_det", [&](Rng& rng, CheckResult& result) {
        for (int n = 2; n <= 5; ++n) {
            const SymmetricFunction f = builtin_function("product", n);
            for (int t = 0; t < 3; ++t) {
                const Eigen::MatrixXd X = random_symmetric(n, rng);
                const double err = std::abs(eval_F(f, X) - X.determinant()) /
                                   std::max(1.0, std::abs(X.determinant()));
                track(result, err);
                require(result, err <= 1e-9, "product of eigenvalues != determinant");
            }
        }
    });

    harness.run("grad_equivariance", [&](Rng& rng, CheckResult& result) {
        for (const std::string& name : {"sumsq", "sumexp"}) {
            const SymmetricFunction f = builtin_function(name, 4);
            const Eigen::MatrixXd X = random_symmetric(4, rng);
            const Eigen::MatrixXd G = grad_F(f, X);
            for (int t = 0; t < 3; ++t) {
                const Eigen::MatrixXd Q = random_orthogonal(4, rng);
                const double err =
                    (grad_F(f, Q.transpose() * X * Q) - Q.transpose() * G * Q).norm();
                track(result, err);
                require(result, err <= 1e-8,
                        std::string(name) + ": gradient is not conjugation-equivariant");
            }
        }
    });

    harness.run("directional_formula_consistency", [&](Rng& rng, CheckResult& result) {
        const SymmetricFunction f = builtin_function("sumexp", 4);
        const Eigen::MatrixXd X = random_symmetric(4, rng);
        for (int t = 0; t < 4; ++t) {
            const Eigen::MatrixXd H = random_symmetric(4, rng);
            const double analytic = directional_derivative_F(f, X, H);
            const double h = tol::kFdStep;
            const double numeric = (eval_F(f, X + h * H) - eval_F(f, X - h * H)) / (2 * h);
            const double err = std::abs(analytic - numeric) / std::max(1.0, std::abs(analytic));
            track(result, err);
            require(result, err <= 1e-6, "directional derivative disagrees with differences");
        }
    });

    harness.run("symmetrize_oracle", [&](Rng& rng, CheckResult& result) {
        const Polynomial p =
            Polynomial::variable(2, 1) - Polynomial::variable(2, 2);
        const Polynomial q = symmetrize(p);
        Polynomial expected = (p * p).scaled(2);
        require(result, q == expected, "symmetrize(x1 - x2) != 2 (x1 - x2)^2");

        Polynomial cube = Polynomial::variable(3, 1) * Polynomial::variable(3, 1) +
                          Polynomial::variable(3, 2).scaled(-3);
        const Polynomial s = symmetrize(cube);
        require(result, is_symmetric(s), "symmetrization must be symmetric");
        for (int t = 0; t < 3; ++t) {
            const Eigen::VectorXd x = rng.gaussian_vector(3);
            double direct = 0.0;
            for (const Permutation& sigma : all_permutations(3)) {
                const double v = cube.eval(apply(sigma, x));
                direct += v * v;
            }
            const double err = std::abs(s.eval(x) - direct) / std::max(1.0, std::abs(direct));
            track(result, err);
            require(result, err <= 1e-10, "symmetrized values disagree with the direct sum");
        }
    });

    harness.run("charpoly_path_agreement", [&](Rng& rng, CheckResult& result) {
        Eigen::MatrixXd D = Eigen::VectorXd::LinSpaced(3, 1, 3).asDiagonal();
        const Polynomial e2 = Polynomial::elementary_symmetric(3, 2);
        const double at_diag = eval_q_of_lambda_via_charpoly(e2, D);
        track(result, std::abs(at_diag - 11.0));
        require(result, std::abs(at_diag - 11.0) <= 1e-9, "e2(lambda(Diag(1,2,3))) != 11");

        for (int n = 3; n <= 4; ++n) {
            const Polynomial q = Polynomial::elementary_symmetric(n, 2) +
                                 pow(Polynomial::elementary_symmetric(n, 1), 2);
            for (int t = 0; t < 3; ++t) {
                const Eigen::MatrixXd X = random_symmetric(n, rng);
                const double via_charpoly = eval_q_of_lambda_via_charpoly(q, X);
                const double via_lambda = q.eval(lambda(X));
                const double err = std::abs(via_charpoly - via_lambda) /
                                   std::max(1.0, std::abs(via_lambda));
                track(result, err);
                require(result, err <= 1e-8,
                        "charpoly evaluation disagrees with the eigenvalue path");
            }
        }
    });

    harness.run("Y_full_rank", [&](Rng& rng, CheckResult& result) {
        for (int n = 2; n <= strata_top; ++n) {
            for (int t = 0; t < 2; ++t) {
                const Eigen::VectorXd y = distinct_vector(n, rng);
                const YMatrix Y = build_Y(y);
                const int rank = rank_Y(Y);
                require(result,
                        Y.rows.rows() == static_cast<Eigen::Index>(factorial_u64(n)) + 1,
                        "wrong row count at n = " + std::to_string(n));
                require(result, rank == n + 1,
                        "rank " + std::to_string(rank) + " != n + 1 at n = " +
                            std::to_string(n));
            }
            const int rank_const = rank_Y(build_Y(Eigen::VectorXd::Ones(n)));
            require(result, rank_const == 2,
                    "constant y must give rank 2, got " + std::to_string(rank_const));
        }
    });

    harness.run("corollary_A2", [&](Rng& rng, CheckResult& result) {
        int verified = 0;
        for (int n = 2; n <= 4; ++n) {
            for (const Permutation& sigma : all_permutations(n)) {
                Eigen::VectorXd y;
                do {
                    y = rng.gaussian_vector(n);
                } while (!blockwise_distinct(partition_of_perm(sigma), y, 1e-6));
                const bool ok = check_corollary_A2(
                    sigma, y, 2, config.seed * 1000003ULL + static_cast<std::uint64_t>(verified));
                require(result, ok,
                        "orthogonality consequence fails at sigma = " + sigma.to_cycle_string());
                ++verified;
            }
        }
        result.detail = std::to_string(verified) + " permutations verified";
    });

    harness.run("manifold_dimension_formula", [&](Rng&, CheckResult& result) {
        const auto manifolds = builtin_test_manifolds();
        int matched = 0;
        for (const ManifoldDescriptor& M : manifolds) {
            const std::uint64_t seed = config.seed * 1000003ULL +
                                       static_cast<std::uint64_t>(matched) + 17ULL;
            const int predicted = predicted_spectral_dimension(M, seed);
            const DimensionEstimate estimate =
                estimate_spectral_dimension(M, M.base_point, seed);
            require(result, estimate.conclusive,
                    manifold_label(M) + ": rank estimate inconclusive (gap ratio " +
                        std::to_string(estimate.gap_ratio) + ")");
            require(result, estimate.dimension == predicted,
                    manifold_label(M) + ": predicted " + std::to_string(predicted) +
                        ", estimated " + std::to_string(estimate.dimension));
            ++matched;
        }
        if (result.passed)
            result.detail = std::to_string(matched) + "/" + std::to_string(manifolds.size()) +
                            " manifolds match the formula";
    });

    harness.run("lifted_equation_zero_on_manifold", [&](Rng& rng, CheckResult& result) {
        // A stratum's constraints are all carried by the eigenvalue
        // multiplicity pattern, so its reduced equation has no components.
        {
            const ManifoldDescriptor S = make_stratum(Partition(3, {{1, 2}, {3}}));
            const Eigen::MatrixXd U = random_orthogonal(3, rng);
            const Eigen::VectorXd phi =
                lifted_local_equation(S, S.base_point, lift_point(S.base_point, U));
            require(result, phi.size() == 0,
                    "stratum reduced equation should be empty, has " +
                        std::to_string(phi.size()) + " components");
        }

        std::vector<ManifoldDescriptor> picks;
        picks.push_back(make_constant_support(3, 1));
        {
            Eigen::VectorXd base(3);
            base << 3, 2, 1;
            picks.push_back(make_sphere_in_perpperp(Partition(3, {{1}, {2}, {3}}),
                                                    Eigen::VectorXd::Zero(3), base.norm(),
                                                    base));
        }
        for (const ManifoldDescriptor& M : picks) {
            const double delta = effective_delta(M, M.base_point);
            const Eigen::MatrixXd U = random_orthogonal(M.n, rng);
            for (int t = 0; t < 6; ++t) {
                const Eigen::VectorXd y =
                    sample_manifold_point(M, M.base_point, 0.3 * delta, rng);
                const Eigen::VectorXd phi =
                    lifted_local_equation(M, M.base_point, lift_point(y, U));
                if (phi.size() == 0) continue;
                track(result, phi.norm());
                require(result, phi.norm() <= 1e-7,
                        manifold_label(M) + ": lifted equation nonzero on a manifold point");
            }
            // A normal perturbation of the base point must register.
            const ReducedSpaces rs = tangent_normal_at(M, M.base_point);
            if (rs.n_red > 0) {
                const Eigen::VectorXd off =
                    M.base_point + 0.2 * delta * rs.reduced_normal_basis.col(0);
                const Eigen::VectorXd phi =
                    lifted_local_equation(M, M.base_point, lift_point(off, U));
                require(result, phi.norm() > 1e-4,
                        manifold_label(M) + ": lifted equation blind to a normal offset");
            }
        }
    });

    harness.run("jacobian_rank_full", [&](Rng&, CheckResult& result) {
        int index = 0;
        for (const ManifoldDescriptor& M : builtin_test_manifolds()) {
            const std::uint64_t seed =
                config.seed * 1000003ULL + static_cast<std::uint64_t>(index) + 29ULL;
            const ReducedSpaces rs = tangent_normal_at(M, M.base_point, seed);
            const Eigen::MatrixXd X_bar =
                lift_point(M.base_point, Eigen::MatrixXd::Identity(M.n, M.n));
            const int rank = jacobian_rank_at(M, X_bar, seed);
            require(result, rank == rs.n_red,
                    manifold_label(M) + ": reduced Jacobian rank " + std::to_string(rank) +
                        " != " + std::to_string(rs.n_red));
            ++index;
        }
    });

    harness.run("tangent_symmetry_builtin", [&](Rng&, CheckResult& result) {
        for (const ManifoldDescriptor& M : builtin_test_manifolds()) {
            const TangentSymmetryReport rep = verify_tangent_normal_symmetry(M, M.base_point);
            std::string failed;
            for (const auto& c : rep.checks)
                if (!c.passed) failed += (failed.empty() ? "" : ", ") + c.id;
            require(result, rep.all_passed, manifold_label(M) + ": failed " + failed);
        }
    });

    harness.run("tangent_symmetry_negative_control", [&](Rng&, CheckResult& result) {
        const ManifoldDescriptor line = nonsymmetric_line_manifold(0.0);
        const TangentSymmetryReport rep =
            verify_tangent_normal_symmetry(line, line.base_point);
        require(result, !rep.all_passed,
                "the non-symmetric line passed the symmetry checks at the origin");
        if (result.passed) {
            int failures = 0;
            for (const auto& c : rep.checks)
                if (!c.passed) ++failures;
            result.detail = "control correctly fails " + std::to_string(failures) + " check" +
                            (failures == 1 ? "" : "s");
        }
    });

    harness.run("negative_control_dimension_mismatch", [&](Rng&, CheckResult& result) {
        const std::uint64_t seed = config.seed * 1000003ULL + 41ULL;
        const ManifoldDescriptor at_origin = nonsymmetric_line_manifold(0.0);
        const ManifoldDescriptor away = nonsymmetric_line_manifold(1.0);
        const int predicted = predicted_spectral_dimension(away, seed);
        const DimensionEstimate origin =
            estimate_spectral_dimension(at_origin, at_origin.base_point, seed);
        const DimensionEstimate generic =
            estimate_spectral_dimension(away, away.base_point, seed);
        require(result, origin.conclusive && generic.conclusive,
                "control rank estimates inconclusive");
        require(result, predicted == 2,
                "control predicted dimension " + std::to_string(predicted) + " != 2");
        require(result, generic.dimension == 2,
                "estimate away from the origin is " + std::to_string(generic.dimension) +
                    ", expected 2");
        require(result, origin.dimension == 1,
                "estimate at the origin is " + std::to_string(origin.dimension) +
                    ", expected 1");
        if (result.passed)
            result.detail = "estimated dimension drops from 2 to 1 at the origin, exposing "
                            "the failure of local symmetry";
    });

    return harness.take();
}

} // namespace spectra
