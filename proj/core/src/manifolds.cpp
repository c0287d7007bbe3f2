#include "spectra/manifolds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/QR>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "spectra/error.hpp"
#include "spectra/linalg.hpp"
#include "spectra/perm_group.hpp"
#include "spectra/spectral.hpp"
#include "spectra/strata.hpp"

namespace spectra {

namespace {

constexpr double kOnManifoldTol = 1e-8;
constexpr double kDomainTol = 1e-8;
constexpr double kCurveStep = 1e-4;
constexpr double kGaussNewtonTarget = 1e-12;
constexpr double kGaussNewtonAccept = 1e-10;
constexpr int kGaussNewtonIters = 20;

bool nonincreasing(const Eigen::VectorXd& x) {
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
        if (x(i) < x(i + 1) - 1e-12) return false;
    }
    return true;
}

void require_nonincreasing(const Eigen::VectorXd& x, const char* where) {
    if (!nonincreasing(x)) {
        std::ostringstream msg;
        msg << where << ": base point must have nonincreasing coordinates";
        throw PreconditionError(msg.str());
    }
}

void require_on_manifold(const ManifoldDescriptor& M, const Eigen::VectorXd& x,
                         const char* where) {
    const Eigen::VectorXd r = local_equation_value(M, x);
    if (r.size() > 0 && r.norm() > kOnManifoldTol) {
        std::ostringstream msg;
        msg << where << ": point violates the local equation by " << r.norm();
        throw PreconditionError(msg.str());
    }
}

// Default base point for partition kinds: block k at value (num_blocks - k).
Eigen::VectorXd partition_base_point(const Partition& P) {
    Eigen::VectorXd x(P.n());
    const int b = P.num_blocks();
    for (int k = 0; k < b; ++k) {
        for (int i : P.block(k)) x(i - 1) = static_cast<double>(b - k);
    }
    return x;
}

// Orthonormal columns spanning the blockwise-constant subspace of P.
Eigen::MatrixXd perpperp_basis_of(const Partition& P) {
    return Stratum(P).perpperp_basis();
}

// Columns e_i for the nonzero coordinates of a constant-support descriptor.
Eigen::MatrixXd support_basis(const ManifoldDescriptor& M) {
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(M.n, M.support);
    int col = 0;
    std::vector<char> is_zero(static_cast<std::size_t>(M.n), 0);
    for (int i : M.zero_indices) is_zero[static_cast<std::size_t>(i - 1)] = 1;
    for (int i = 1; i <= M.n; ++i) {
        if (!is_zero[static_cast<std::size_t>(i - 1)]) S(i - 1, col++) = 1.0;
    }
    return S;
}

// Tangent and normal bases straight from the SVD of the Jacobian, without
// the characteristic-partition reduction.
struct RawSpaces {
    Eigen::MatrixXd tangent;
    Eigen::MatrixXd normal;
};

RawSpaces raw_tangent_normal(const ManifoldDescriptor& M, const Eigen::VectorXd& x_bar) {
    require_on_manifold(M, x_bar, "tangent_normal");
    const int n = M.n;
    const int rows = n - M.d;
    if (rows == 0) {
        return {Eigen::MatrixXd::Identity(n, n), Eigen::MatrixXd::Zero(n, 0)};
    }
    const Eigen::MatrixXd J = local_equation_jacobian(M, x_bar);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    if (s.size() < rows || s(rows - 1) <= 1e-8) {
        throw PreconditionError(
            "tangent_normal: local-equation Jacobian is rank-deficient at the "
            "base point");
    }
    const Eigen::MatrixXd V = svd.matrixV();
    return {V.rightCols(M.d), V.leftCols(rows)};
}

Eigen::VectorXd gauss_newton_project(const ManifoldDescriptor& M, Eigen::VectorXd x) {
    for (int it = 0; it < kGaussNewtonIters; ++it) {
        const Eigen::VectorXd r = local_equation_value(M, x);
        if (r.size() == 0 || r.norm() < kGaussNewtonTarget) break;
        const Eigen::MatrixXd J = local_equation_jacobian(M, x);
        x -= J.completeOrthogonalDecomposition().solve(r);
    }
    const Eigen::VectorXd r = local_equation_value(M, x);
    if (r.size() > 0 && r.norm() > kGaussNewtonAccept) {
        std::ostringstream msg;
        msg << "gauss_newton_project: residual " << r.norm()
            << " after " << kGaussNewtonIters << " iterations";
        throw PreconditionError(msg.str());
    }
    return x;
}

// A curve through x_bar inside M with chart velocity w; t = 0 gives x_bar.
Eigen::VectorXd manifold_curve_point(const ManifoldDescriptor& M,
                                     const Eigen::VectorXd& x_bar,
                                     const Eigen::MatrixXd& chart_basis,
                                     const Eigen::VectorXd& w, double t) {
    switch (M.kind) {
        case ManifoldKind::STRATUM:
        case ManifoldKind::AFFINE_PERPPERP:
        case ManifoldKind::CONSTANT_SUPPORT:
            return x_bar + t * (chart_basis * w);
        case ManifoldKind::SPHERE_IN_PERPPERP: {
            const Eigen::VectorXd v = x_bar - M.center + t * (chart_basis * w);
            return M.center + M.radius * v / v.norm();
        }
        case ManifoldKind::CUSTOM:
            return gauss_newton_project(M, x_bar + t * (chart_basis * w));
    }
    throw UsageError("manifold_curve_point: unknown kind");
}

// The chart basis used by manifold_curve_point and the samplers.
Eigen::MatrixXd chart_basis_of(const ManifoldDescriptor& M, const Eigen::VectorXd& x_bar) {
    switch (M.kind) {
        case ManifoldKind::STRATUM:
        case ManifoldKind::AFFINE_PERPPERP:
        case ManifoldKind::SPHERE_IN_PERPPERP:
            return perpperp_basis_of(M.partition);
        case ManifoldKind::CONSTANT_SUPPORT:
            return support_basis(M);
        case ManifoldKind::CUSTOM:
            return raw_tangent_normal(M, x_bar).tangent;
    }
    throw UsageError("chart_basis_of: unknown kind");
}

// Probe that sampled manifold points stay on the manifold when permuted by
// the stabilizer of the base point. Built-in kinds are symmetric by
// construction; only CUSTOM descriptors are sampled.
bool manifold_symmetry_probe(const ManifoldDescriptor& M, const Eigen::VectorXd& x_bar,
                             int samples, Rng& rng) {
    if (M.kind != ManifoldKind::CUSTOM) return true;
    const auto group = enumerate_block_group(partition_of_point(x_bar, 1e-9));
    const double scale = 0.5 * effective_delta(M, x_bar);
    for (int s = 0; s < samples; ++s) {
        const Eigen::VectorXd x =
            (s == 0) ? x_bar : sample_manifold_point(M, x_bar, scale, rng);
        for (const auto& sigma : group) {
            if (sigma.is_identity()) continue;
            const Eigen::VectorXd moved = apply(sigma, x);
            const Eigen::VectorXd r = local_equation_value(M, moved);
            if (r.size() > 0 && r.norm() > kOnManifoldTol) return false;
        }
    }
    return true;
}

void require_symmetry(const ManifoldDescriptor& M, const Eigen::VectorXd& x_bar,
                      const char* where) {
    Rng rng(0x53f1);
    if (!manifold_symmetry_probe(M, x_bar, 16, rng)) {
        std::ostringstream msg;
        msg << where
            << ": descriptor failed the local-symmetry probe at the base "
               "point; the reduced equation is unjustified";
        throw PreconditionError(msg.str());
    }
}

Eigen::MatrixXd random_skew(int n, Rng& rng) {
    const Eigen::MatrixXd G = rng.gaussian_matrix(n, n);
    Eigen::MatrixXd A = 0.5 * (G - G.transpose());
    const double norm = A.norm();
    if (norm > 1e-12) A /= norm;
    return A;
}

// The unique point of M near x_bar with tangent coordinate u (graph of M
// over its tangent space); graph_normal receives the normal-space offset.
Eigen::VectorXd graph_point(const ManifoldDescriptor& M, const Eigen::VectorXd& x_bar,
                            const RawSpaces& spaces, const Eigen::VectorXd& u) {
    switch (M.kind) {
        case ManifoldKind::STRATUM:
        case ManifoldKind::AFFINE_PERPPERP:
        case ManifoldKind::CONSTANT_SUPPORT:
            return x_bar + u;
        case ManifoldKind::SPHERE_IN_PERPPERP: {
            const double rho = M.radius;
            const double u2 = u.squaredNorm();
            if (u2 >= rho * rho) {
                throw PreconditionError("graph_point: tangent offset leaves the chart");
            }
            const Eigen::VectorXd unit = (x_bar - M.center) / rho;
            const double g = -rho + std::sqrt(rho * rho - u2);
            return x_bar + u + g * unit;
        }
        case ManifoldKind::CUSTOM: {
            // Solve phi(x_bar + u + N z) = 0 for z by Gauss-Newton in z.
            const Eigen::MatrixXd& N = spaces.normal;
            Eigen::VectorXd z = Eigen::VectorXd::Zero(N.cols());
            for (int it = 0; it < kGaussNewtonIters; ++it) {
                const Eigen::VectorXd x = x_bar + u + N * z;
                const Eigen::VectorXd r = local_equation_value(M, x);
                if (r.norm() < kGaussNewtonTarget) break;
                const Eigen::MatrixXd J = local_equation_jacobian(M, x) * N;
                z -= J.completeOrthogonalDecomposition().solve(r);
            }
            const Eigen::VectorXd x = x_bar + u + N * z;
            const Eigen::VectorXd r = local_equation_value(M, x);
            if (r.norm() > kGaussNewtonAccept) {
                throw PreconditionError("graph_point: Gauss-Newton left the chart");
            }
            return x;
        }
    }
    throw UsageError("graph_point: unknown kind");
}

} // namespace

const char* to_string(ManifoldKind kind) {
    switch (kind) {
        case ManifoldKind::STRATUM: return "stratum";
        case ManifoldKind::AFFINE_PERPPERP: return "affine";
        case ManifoldKind::SPHERE_IN_PERPPERP: return "sphere";
        case ManifoldKind::CONSTANT_SUPPORT: return "constant_support";
        case ManifoldKind::CUSTOM: return "custom";
    }
    return "unknown";
}

ManifoldDescriptor make_stratum(const Partition& P, double delta) {
    ManifoldDescriptor M;
    M.kind = ManifoldKind::STRATUM;
    M.n = P.n();
    M.d = P.num_blocks();
    M.partition = P;
    M.base_point = partition_base_point(P);
    M.delta = delta;
    require_nonincreasing(M.base_point, "make_stratum");
    return M;
}

ManifoldDescriptor make_affine_perpperp(const Partition& P, double delta) {
    ManifoldDescriptor M = make_stratum(P, delta);
    M.kind = ManifoldKind::AFFINE_PERPPERP;
    return M;
}

ManifoldDescriptor make_sphere_in_perpperp(const Partition& P, const Eigen::VectorXd& center,
                                           double radius, const Eigen::VectorXd& base_point,
                                           double delta) {
    if (radius <= 0.0) throw UsageError("make_sphere_in_perpperp: radius must be positive");
    if (center.size() != P.n() || base_point.size() != P.n()) {
        throw UsageError("make_sphere_in_perpperp: vector sizes must match the partition");
    }
    ManifoldDescriptor M;
    M.kind = ManifoldKind::SPHERE_IN_PERPPERP;
    M.n = P.n();
    M.d = P.num_blocks() - 1;
    M.partition = P;
    M.center = center;
    M.radius = radius;
    M.base_point = base_point;
    M.delta = delta;
    const Stratum s(P);
    if (!s.in_perpperp(center, 1e-9)) {
        throw PreconditionError(
            "make_sphere_in_perpperp: center must be blockwise constant");
    }
    require_nonincreasing(M.base_point, "make_sphere_in_perpperp");
    require_on_manifold(M, M.base_point, "make_sphere_in_perpperp");
    return M;
}

ManifoldDescriptor make_constant_support(int n, int r, double delta) {
    if (n < 1 || r < 1 || r > n) {
        throw UsageError("make_constant_support: need 1 <= r <= n");
    }
    Eigen::VectorXd base = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < r; ++i) base(i) = static_cast<double>(r - i);
    return make_constant_support(base, delta);
}

ManifoldDescriptor make_constant_support(const Eigen::VectorXd& base_point, double delta) {
    ManifoldDescriptor M;
    M.kind = ManifoldKind::CONSTANT_SUPPORT;
    M.n = static_cast<int>(base_point.size());
    M.base_point = base_point;
    M.delta = delta;
    for (int i = 1; i <= M.n; ++i) {
        if (std::abs(base_point(i - 1)) <= 1e-12) M.zero_indices.push_back(i);
    }
    M.support = M.n - static_cast<int>(M.zero_indices.size());
    M.d = M.support;
    if (M.support == 0) {
        throw UsageError("make_constant_support: base point must have a nonzero entry");
    }
    require_nonincreasing(M.base_point, "make_constant_support");
    return M;
}

ManifoldDescriptor make_custom(int n, int d, const Eigen::VectorXd& base_point,
                               std::function<Eigen::VectorXd(const Eigen::VectorXd&)> phi,
                               std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> jacobian,
                               double delta) {
    if (n < 1 || d < 0 || d > n) throw UsageError("make_custom: need 0 <= d <= n");
    if (!phi || !jacobian) throw UsageError("make_custom: phi and jacobian are required");
    if (base_point.size() != n) throw UsageError("make_custom: base point size mismatch");
    ManifoldDescriptor M;
    M.kind = ManifoldKind::CUSTOM;
    M.n = n;
    M.d = d;
    M.base_point = base_point;
    M.delta = delta;
    M.custom_phi = std::move(phi);
    M.custom_jacobian = std::move(jacobian);
    require_nonincreasing(M.base_point, "make_custom");
    const Eigen::VectorXd r = M.custom_phi(M.base_point);
    if (static_cast<int>(r.size()) != n - d) {
        throw UsageError("make_custom: phi must map into R^(n-d)");
    }
    if (r.size() > 0 && r.norm() > kOnManifoldTol) {
        throw PreconditionError("make_custom: base point does not satisfy phi = 0");
    }
    const Eigen::MatrixXd J = M.custom_jacobian(M.base_point);
    if (J.rows() != n - d || J.cols() != n) {
        throw UsageError("make_custom: jacobian must be (n-d) x n");
    }
    return M;
}

Eigen::VectorXd local_equation_value(const ManifoldDescriptor& M, const Eigen::VectorXd& x) {
    if (static_cast<int>(x.size()) != M.n) {
        throw UsageError("local_equation_value: point size mismatch");
    }
    switch (M.kind) {
        case ManifoldKind::STRATUM:
        case ManifoldKind::AFFINE_PERPPERP:
        case ManifoldKind::SPHERE_IN_PERPPERP: {
            const bool sphere = M.kind == ManifoldKind::SPHERE_IN_PERPPERP;
            const int rows = M.n - M.partition.num_blocks() + (sphere ? 1 : 0);
            Eigen::VectorXd r(rows);
            int at = 0;
            for (const auto& block : M.partition.blocks()) {
                for (std::size_t j = 1; j < block.size(); ++j) {
                    r(at++) = x(block[j] - 1) - x(block[0] - 1);
                }
            }
            if (sphere) {
                r(at++) = (x - M.center).squaredNorm() - M.radius * M.radius;
            }
            return r;
        }
        case ManifoldKind::CONSTANT_SUPPORT: {
            Eigen::VectorXd r(static_cast<Eigen::Index>(M.zero_indices.size()));
            int at = 0;
            for (int i : M.zero_indices) r(at++) = x(i - 1);
            return r;
        }
        case ManifoldKind::CUSTOM:
            return M.custom_phi(x);
    }
    throw UsageError("local_equation_value: unknown kind");
}

Eigen::MatrixXd local_equation_jacobian(const ManifoldDescriptor& M, const Eigen::VectorXd& x) {
    if (static_cast<int>(x.size()) != M.n) {
        throw UsageError("local_equation_jacobian: point size mismatch");
    }
    switch (M.kind) {
        case ManifoldKind::STRATUM:
        case ManifoldKind::AFFINE_PERPPERP:
        case ManifoldKind::SPHERE_IN_PERPPERP: {
            const bool sphere = M.kind == ManifoldKind::SPHERE_IN_PERPPERP;
            const int rows = M.n - M.partition.num_blocks() + (sphere ? 1 : 0);
            Eigen::MatrixXd J = Eigen::MatrixXd::Zero(rows, M.n);
            int at = 0;
            for (const auto& block : M.partition.blocks()) {
                for (std::size_t j = 1; j < block.size(); ++j) {
                    J(at, block[j] - 1) = 1.0;
                    J(at, block[0] - 1) = -1.0;
                    ++at;
                }
            }
            if (sphere) J.row(at) = 2.0 * (x - M.center).transpose();
            return J;
        }
        case ManifoldKind::CONSTANT_SUPPORT: {
            Eigen::MatrixXd J = Eigen::MatrixXd::Zero(
                static_cast<Eigen::Index>(M.zero_indices.size()), M.n);
            int at = 0;
            for (int i : M.zero_indices) J(at++, i - 1) = 1.0;
            return J;
        }
        case ManifoldKind::CUSTOM: {
            const Eigen::MatrixXd J = M.custom_jacobian(x);
            if (J.rows() != M.n - M.d || J.cols() != M.n) {
                throw UsageError("local_equation_jacobian: jacobian shape mismatch");
            }
            return J;
        }
    }
    throw UsageError("local_equation_jacobian: unknown kind");
}

double effective_delta(const ManifoldDescriptor& M, const Eigen::VectorXd& x_bar) {
    double gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < x_bar.size(); ++i) {
        for (Eigen::Index j = i + 1; j < x_bar.size(); ++j) {
            const double diff = std::abs(x_bar(i) - x_bar(j));
            if (diff > 1e-9) gap = std::min(gap, diff);
        }
    }
    const double out = std::min(M.delta, 0.5 * gap);
    return std::isfinite(out) ? out : 0.5;
}

Eigen::VectorXd sample_manifold_point(const ManifoldDescriptor& M,
                                      const Eigen::VectorXd& x_bar, double scale, Rng& rng) {
    if (scale <= 0.0) throw UsageError("sample_manifold_point: scale must be positive");
    const Eigen::MatrixXd B = chart_basis_of(M, x_bar);
    if (B.cols() == 0) return x_bar;
    Eigen::VectorXd w = rng.gaussian_vector(static_cast<int>(B.cols()));
    const double norm = w.norm();
    if (norm < 1e-12) return x_bar;
    w *= rng.uniform(0.2, 1.0) / norm;
    return manifold_curve_point(M, x_bar, B, w, scale);
}

bool consecutive_blocks(const Partition& P) {
    for (const auto& block : P.blocks()) {
        if (block.back() - block.front() + 1 != static_cast<int>(block.size())) {
            return false;
        }
    }
    return true;
}

CharacteristicData characteristic_permutation(const ManifoldDescriptor& M,
                                              const Eigen::VectorXd& x_bar, double delta,
                                              int samples, Rng& rng) {
    require_on_manifold(M, x_bar, "characteristic_permutation");
    if (delta <= 0.0 || samples < 1) {
        throw UsageError("characteristic_permutation: delta and samples must be positive");
    }
    std::vector<Partition> observed;
    observed.push_back(partition_of_point(x_bar, 1e-8));
    for (int s = 0; s < samples; ++s) {
        const Eigen::VectorXd x = sample_manifold_point(M, x_bar, 0.9 * delta, rng);
        if ((x - x_bar).norm() > delta) continue;
        observed.push_back(partition_of_point(x, 1e-8));
    }
    std::size_t finest = 0;
    for (std::size_t i = 1; i < observed.size(); ++i) {
        if (observed[i].num_blocks() > observed[finest].num_blocks()) finest = i;
    }
    const Partition& candidate = observed[finest];
    for (const auto& Q : observed) {
        if (!refines(Q, candidate)) {
            throw PreconditionError(
                "characteristic_permutation: sampled partitions " + Q.to_string() +
                " and " + candidate.to_string() + " have no consistent finest member");
        }
    }
    if (!consecutive_blocks(candidate)) {
        throw PreconditionError(
            "characteristic_permutation: partition " + candidate.to_string() +
            " has a non-consecutive block, impossible for a manifold meeting "
            "the nonincreasing cone");
    }
    CharacteristicData out;
    out.sigma_star_partition = candidate;
    out.kappa_star = candidate.num_singletons();
    out.m_star = candidate.num_nontrivial();
    out.fm_split = FMSplit::from_partition(candidate);
    return out;
}

CharacteristicData characteristic_permutation(const ManifoldDescriptor& M,
                                              const Eigen::VectorXd& x_bar,
                                              std::uint64_t seed) {
    Rng rng(seed);
    return characteristic_permutation(M, x_bar, effective_delta(M, x_bar), 64, rng);
}

ReducedSpaces tangent_normal_at(const ManifoldDescriptor& M, const Eigen::VectorXd& x_bar,
                                std::uint64_t seed) {
    const RawSpaces raw = raw_tangent_normal(M, x_bar);
    const CharacteristicData cd = characteristic_permutation(M, x_bar, seed);
    ReducedSpaces out;
    out.tangent_basis = raw.tangent;
    out.normal_basis = raw.normal;
    out.sigma_star = cd.sigma_star_partition;
    const Eigen::MatrixXd projector = Stratum(cd.sigma_star_partition).projector_matrix();
    out.reduced_normal_basis = orthonormal_columns(projector * raw.normal, 1e-8);
    out.n_red = static_cast<int>(out.reduced_normal_basis.cols());
    return out;
}

int predicted_spectral_dimension(int d, const Partition& sigma_star) {
    if (d < 0) throw UsageError("predicted_spectral_dimension: d must be nonnegative");
    if (!consecutive_blocks(sigma_star)) {
        throw PreconditionError(
            "predicted_spectral_dimension: partition " + sigma_star.to_string() +
            " has a non-consecutive block; the dimension formula does not apply");
    }
    int cross = 0;
    for (int i = 0; i < sigma_star.num_blocks(); ++i) {
        for (int j = i + 1; j < sigma_star.num_blocks(); ++j) {
            cross += static_cast<int>(sigma_star.block(i).size()) *
                     static_cast<int>(sigma_star.block(j).size());
        }
    }
    return d + cross;
}

int predicted_spectral_dimension(const ManifoldDescriptor& M, std::uint64_t seed) {
    const CharacteristicData cd = characteristic_permutation(M, M.base_point, seed);
    return predicted_spectral_dimension(M.d, cd.sigma_star_partition);
}

DimensionEstimate estimate_spectral_dimension(const ManifoldDescriptor& M,
                                              const Eigen::VectorXd& x_bar,
                                              std::uint64_t seed, int n_samples) {
    require_on_manifold(M, x_bar, "estimate_spectral_dimension");
    if (n_samples < 1) throw UsageError("estimate_spectral_dimension: n_samples < 1");
    const int n = M.n;
    Rng rng(seed);
    const Eigen::MatrixXd U = random_orthogonal(n, rng);
    const Eigen::MatrixXd Xbar = lift_point(x_bar, U);
    const Eigen::MatrixXd chart = chart_basis_of(M, x_bar);

    std::vector<Eigen::VectorXd> columns;
    const double h = kCurveStep;

    // (a) difference quotients of curves U_t^T Diag(x_t) U_t.
    for (int s = 0; s < n_samples; ++s) {
        const Eigen::MatrixXd A = random_skew(n, rng);
        Eigen::VectorXd w = Eigen::VectorXd::Zero(chart.cols());
        if (chart.cols() > 0) {
            w = rng.gaussian_vector(static_cast<int>(chart.cols()));
            const double norm = w.norm();
            if (norm > 1e-12) w /= norm;
        }
        const Eigen::MatrixXd rot_up = (h * A).exp();
        const Eigen::MatrixXd rot_down = (-h * A).exp();
        const Eigen::VectorXd x_up = manifold_curve_point(M, x_bar, chart, w, h);
        const Eigen::VectorXd x_down = manifold_curve_point(M, x_bar, chart, w, -h);
        const Eigen::MatrixXd up =
            (U * rot_up).transpose() * x_up.asDiagonal() * (U * rot_up);
        const Eigen::MatrixXd down =
            (U * rot_down).transpose() * x_down.asDiagonal() * (U * rot_down);
        const Eigen::VectorXd col = svec((up - down) / (2.0 * h));
        const double norm = col.norm();
        if (norm > 1e-12) columns.push_back(col / norm);
    }

    // (b) commutators [Xbar, A] over the skew basis, plus lifted tangents.
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            const Eigen::MatrixXd A = skew_basis_element(n, i, j);
            const Eigen::VectorXd col = svec(Xbar * A - A * Xbar);
            const double norm = col.norm();
            if (norm > 1e-12) columns.push_back(col / norm);
        }
    }
    const Eigen::MatrixXd T = raw_tangent_normal(M, x_bar).tangent;
    for (Eigen::Index k = 0; k < T.cols(); ++k) {
        const Eigen::VectorXd w = T.col(k);
        const Eigen::VectorXd col = svec(U.transpose() * w.asDiagonal() * U);
        const double norm = col.norm();
        if (norm > 1e-12) columns.push_back(col / norm);
    }

    DimensionEstimate out;
    if (columns.empty()) {
        out.dimension = 0;
        out.conclusive = true;
        out.gap_ratio = std::numeric_limits<double>::infinity();
        return out;
    }
    Eigen::MatrixXd D(n * (n + 1) / 2, static_cast<Eigen::Index>(columns.size()));
    for (std::size_t c = 0; c < columns.size(); ++c) {
        D.col(static_cast<Eigen::Index>(c)) = columns[c];
    }
    const RankDecision decision = rank_with_gap(D, tol::kRankRelative, tol::kRankGapRatio);
    out.dimension = decision.rank;
    out.conclusive = decision.conclusive;
    out.gap_ratio = decision.gap_ratio;
    out.singular_values = decision.singular_values;
    return out;
}

Eigen::VectorXd lifted_local_equation(const ManifoldDescriptor& M,
                                      const Eigen::VectorXd& x_bar, const Eigen::MatrixXd& X,
                                      std::uint64_t seed) {
    require_on_manifold(M, x_bar, "lifted_local_equation");
    require_symmetry(M, x_bar, "lifted_local_equation");
    if (X.rows() != M.n || X.cols() != M.n) {
        throw UsageError("lifted_local_equation: X must be n x n");
    }
    const ReducedSpaces rs = tangent_normal_at(M, x_bar, seed);
    const RawSpaces raw{rs.tangent_basis, rs.normal_basis};
    const Eigen::VectorXd y = lambda(X);
    const double delta = effective_delta(M, x_bar);

    // Rectangular locality domain: both the fixed and the moving part of
    // y - x_bar (split by the characteristic partition) within delta/sqrt(2).
    const FMSplit split = FMSplit::from_partition(rs.sigma_star);
    const auto [yf, ym] = canonical_split(y, split);
    const auto [xf, xm] = canonical_split(x_bar, split);
    const double bound = delta / std::sqrt(2.0);
    if ((yf - xf).norm() > bound || (ym - xm).norm() > bound) {
        std::ostringstream msg;
        msg << "lifted_local_equation: lambda(X) leaves the locality domain "
               "(fixed-part offset "
            << (yf - xf).norm() << ", moving-part offset " << (ym - xm).norm()
            << ", bound " << bound << ")";
        throw PreconditionError(msg.str());
    }

    // Reduced-domain membership: the normal component outside the reduced
    // normal space must vanish.
    const Eigen::VectorXd diff = y - x_bar;
    const Eigen::VectorXd normal_part = rs.normal_basis * (rs.normal_basis.transpose() * diff);
    const Eigen::VectorXd reduced_part =
        rs.reduced_normal_basis * (rs.reduced_normal_basis.transpose() * diff);
    if ((normal_part - reduced_part).norm() > kDomainTol) {
        std::ostringstream msg;
        msg << "lifted_local_equation: lambda(X) leaves the reduced ambient "
               "domain (non-reduced normal component "
            << (normal_part - reduced_part).norm() << ")";
        throw PreconditionError(msg.str());
    }

    if (rs.n_red == 0) return Eigen::VectorXd::Zero(0);
    const Eigen::VectorXd u = rs.tangent_basis * (rs.tangent_basis.transpose() * diff);
    const Eigen::VectorXd graph = graph_point(M, x_bar, raw, u);
    return rs.reduced_normal_basis.transpose() * (y - graph);
}

int jacobian_rank_at(const ManifoldDescriptor& M, const Eigen::MatrixXd& X_bar,
                     std::uint64_t seed) {
    if (X_bar.rows() != M.n || X_bar.cols() != M.n) {
        throw UsageError("jacobian_rank_at: X_bar must be n x n");
    }
    const Eigen::VectorXd x_bar = M.base_point;
    require_symmetry(M, x_bar, "jacobian_rank_at");
    const SpectralPoint sp = spectral_point(X_bar);
    if ((sp.eigenvalues - x_bar).norm() > 1e-8) {
        throw UsageError("jacobian_rank_at: X_bar must lift the base point");
    }
    const ReducedSpaces rs = tangent_normal_at(M, x_bar, seed);
    if (rs.n_red == 0) return 0;

    Rng rng(seed);
    const Eigen::MatrixXd& U = sp.eigenbasis;
    std::vector<Eigen::VectorXd> columns;
    // Lifted directions of the reduced ambient domain: tangent and reduced
    // normal vectors, plus commutators (whose derivative contribution is 0).
    Eigen::MatrixXd dirs(M.n, rs.tangent_basis.cols() + rs.n_red);
    dirs.leftCols(rs.tangent_basis.cols()) = rs.tangent_basis;
    dirs.rightCols(rs.n_red) = rs.reduced_normal_basis;
    for (Eigen::Index k = 0; k < dirs.cols(); ++k) {
        const Eigen::MatrixXd H = U.transpose() * dirs.col(k).asDiagonal() * U;
        const Eigen::VectorXd dlam = (U * H * U.transpose()).diagonal();
        columns.push_back(-(rs.reduced_normal_basis.transpose() * dlam));
    }
    const int extra = static_cast<int>(dirs.cols()) + 4;
    for (int s = 0; s < extra; ++s) {
        const Eigen::MatrixXd A = random_skew(M.n, rng);
        const Eigen::MatrixXd H = X_bar * A - A * X_bar;
        const Eigen::VectorXd dlam = (U * H * U.transpose()).diagonal();
        columns.push_back(-(rs.reduced_normal_basis.transpose() * dlam));
    }
    Eigen::MatrixXd D(rs.n_red, static_cast<Eigen::Index>(columns.size()));
    for (std::size_t c = 0; c < columns.size(); ++c) {
        D.col(static_cast<Eigen::Index>(c)) = columns[c];
    }
    return rank_svd(D, 1e-8);
}

std::vector<ManifoldDescriptor> builtin_test_manifolds() {
    std::vector<ManifoldDescriptor> out;
    out.push_back(make_affine_perpperp(Partition(2, {{1, 2}})));
    out.push_back(make_stratum(Partition(3, {{1, 2}, {3}})));
    {
        Eigen::VectorXd base(3);
        base << 3, 2, 1;
        out.push_back(make_sphere_in_perpperp(Partition::discrete(3),
                                              Eigen::VectorXd::Zero(3),
                                              std::sqrt(14.0), base));
    }
    out.push_back(make_constant_support(3, 1));
    out.push_back(make_constant_support(3, 2));
    out.push_back(make_constant_support(3, 3));
    out.push_back(make_stratum(Partition(4, {{1, 2}, {3, 4}})));
    out.push_back(make_affine_perpperp(Partition(5, {{1, 2, 3}, {4, 5}})));
    {
        Eigen::VectorXd base(3);
        base << 2, 2, 1;
        out.push_back(make_sphere_in_perpperp(Partition(3, {{1, 2}, {3}}),
                                              Eigen::VectorXd::Zero(3), 3.0, base));
    }
    return out;
}

ManifoldDescriptor nonsymmetric_line_manifold(double t0) {
    if (t0 < 0.0) {
        throw UsageError("nonsymmetric_line_manifold: base must be nonincreasing");
    }
    Eigen::VectorXd base(2);
    base << t0, 0.0;
    auto phi = [](const Eigen::VectorXd& x) {
        Eigen::VectorXd r(1);
        r(0) = x(1);
        return r;
    };
    auto jacobian = [](const Eigen::VectorXd&) {
        Eigen::MatrixXd J(1, 2);
        J << 0.0, 1.0;
        return J;
    };
    return make_custom(2, 1, base, phi, jacobian);
}

TangentSymmetryReport verify_tangent_normal_symmetry(const ManifoldDescriptor& M,
                                                     const Eigen::VectorXd& x_bar) {
    const RawSpaces raw = raw_tangent_normal(M, x_bar);
    const Partition P = partition_of_point(x_bar, 1e-9);
    const Stratum stratum(P);
    const auto group = enumerate_block_group(P);

    TangentSymmetryReport report;
    auto add = [&report](std::string id, bool passed, std::string detail) {
        if (!passed) report.all_passed = false;
        report.checks.push_back({std::move(id), passed, std::move(detail)});
    };

    auto permuted_basis = [](const Permutation& sigma, const Eigen::MatrixXd& B) {
        Eigen::MatrixXd out(B.rows(), B.cols());
        for (Eigen::Index k = 0; k < B.cols(); ++k) out.col(k) = apply(sigma, B.col(k));
        return out;
    };

    for (const auto& sigma : group) {
        if (sigma.is_identity()) continue;
        const std::string tag = sigma.to_cycle_string();
        const bool t_ok = raw.tangent.cols() == 0 ||
                          same_span(permuted_basis(sigma, raw.tangent), raw.tangent);
        add("tangent_invariant_" + tag, t_ok,
            t_ok ? "" : "permuted tangent basis spans a different subspace");
        const bool n_ok = raw.normal.cols() == 0 ||
                          same_span(permuted_basis(sigma, raw.normal), raw.normal);
        add("normal_invariant_" + tag, n_ok,
            n_ok ? "" : "permuted normal basis spans a different subspace");
    }

    const Eigen::MatrixXd B_perpperp = stratum.perpperp_basis();
    const Eigen::MatrixXd B_perp = orthonormal_columns(
        Eigen::MatrixXd::Identity(M.n, M.n) - stratum.projector_matrix(), 1e-10);
    auto intersection_dim = [&](const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
        if (A.cols() == 0 || B.cols() == 0) return 0;
        Eigen::MatrixXd stacked(A.rows(), A.cols() + B.cols());
        stacked << A, B;
        return static_cast<int>(A.cols() + B.cols()) - rank_svd(stacked, 1e-10);
    };
    {
        const int inside = intersection_dim(raw.tangent, B_perpperp);
        const int outside = intersection_dim(raw.tangent, B_perp);
        const bool ok = inside + outside == raw.tangent.cols();
        std::ostringstream detail;
        detail << "tangent dim " << raw.tangent.cols() << " splits into " << inside
               << " + " << outside;
        add("tangent_decomposes", ok, ok ? "" : detail.str());
    }
    {
        const int inside = intersection_dim(raw.normal, B_perpperp);
        const int outside = intersection_dim(raw.normal, B_perp);
        const bool ok = inside + outside == raw.normal.cols();
        std::ostringstream detail;
        detail << "normal dim " << raw.normal.cols() << " splits into " << inside
               << " + " << outside;
        add("normal_decomposes", ok, ok ? "" : detail.str());
    }
    return report;
}

} // namespace spectra
