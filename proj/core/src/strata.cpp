#include "spectra/strata.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/SVD>

#include "spectra/error.hpp"
#include "spectra/perm_group.hpp"
#include "spectra/permutation.hpp"
#include "spectra/rng.hpp"

namespace spectra {

namespace {

void check_size(const Eigen::VectorXd& x, int n, const char* where) {
    if (static_cast<int>(x.size()) != n) {
        std::ostringstream msg;
        msg << where << ": vector has size " << x.size() << ", expected " << n;
        throw UsageError(msg.str());
    }
}

} // namespace

bool Stratum::contains(const Eigen::VectorXd& x, double tol) const {
    check_size(x, n(), "Stratum::contains");
    return partition_of_point(x, tol) == partition_;
}

bool Stratum::in_perpperp(const Eigen::VectorXd& x, double tol) const {
    check_size(x, n(), "Stratum::in_perpperp");
    for (const auto& block : partition_.blocks()) {
        const double ref = x(block.front() - 1);
        for (int i : block) {
            if (std::abs(x(i - 1) - ref) > tol) return false;
        }
    }
    return true;
}

bool Stratum::in_perp(const Eigen::VectorXd& x, double tol) const {
    check_size(x, n(), "Stratum::in_perp");
    for (const auto& block : partition_.blocks()) {
        double sum = 0.0;
        for (int i : block) sum += x(i - 1);
        if (std::abs(sum) > tol) return false;
    }
    return true;
}

Eigen::VectorXd Stratum::project_perpperp(const Eigen::VectorXd& x) const {
    check_size(x, n(), "Stratum::project_perpperp");
    Eigen::VectorXd out(n());
    for (const auto& block : partition_.blocks()) {
        double sum = 0.0;
        for (int i : block) sum += x(i - 1);
        const double mean = sum / static_cast<double>(block.size());
        for (int i : block) out(i - 1) = mean;
    }
    return out;
}

Eigen::VectorXd Stratum::project_perpperp_by_group(const Eigen::VectorXd& x) const {
    check_size(x, n(), "Stratum::project_perpperp_by_group");
    const auto group = enumerate_block_group(partition_);
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(n());
    for (const auto& sigma : group) acc += apply(sigma, x);
    return acc / static_cast<double>(group.size());
}

Eigen::MatrixXd Stratum::projector_matrix() const {
    Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n(), n());
    for (const auto& block : partition_.blocks()) {
        const double w = 1.0 / static_cast<double>(block.size());
        for (int i : block) {
            for (int j : block) P(i - 1, j - 1) = w;
        }
    }
    return P;
}

Eigen::MatrixXd Stratum::perpperp_basis() const {
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n(), partition_.num_blocks());
    for (int k = 0; k < partition_.num_blocks(); ++k) {
        const auto& block = partition_.block(k);
        const double w = 1.0 / std::sqrt(static_cast<double>(block.size()));
        for (int i : block) B(i - 1, k) = w;
    }
    return B;
}

Eigen::VectorXd Stratum::generic_point() const {
    Eigen::VectorXd x(n());
    for (int k = 0; k < partition_.num_blocks(); ++k) {
        for (int i : partition_.block(k)) x(i - 1) = static_cast<double>(k + 1);
    }
    return x;
}

double ball_preservation_radius(const Eigen::VectorXd& x, int max_n) {
    const int n = static_cast<int>(x.size());
    if (n < 1) throw UsageError("ball_preservation_radius: empty vector");
    if (n > max_n) {
        std::ostringstream msg;
        msg << "ball_preservation_radius: n = " << n
            << " exceeds the exhaustive-enumeration cap of " << max_n;
        throw CapError(msg.str());
    }
    double best = std::numeric_limits<double>::infinity();
    for (const auto& sigma : all_permutations(n)) {
        const double dist = (apply(sigma, x) - x).norm();
        if (dist > 0.0) best = std::min(best, dist / 3.0);
    }
    return best; // +infinity when every permutation fixes x
}

namespace {

void add_check(StratificationReport& report, std::string id, bool passed,
               std::string counterexample) {
    if (!passed) report.all_passed = false;
    report.checks.push_back({std::move(id), passed, passed ? "" : std::move(counterexample)});
}

std::string describe_pair(const Permutation& a, const Permutation& b) {
    return "sigma = " + a.to_cycle_string() + ", sigma' = " + b.to_cycle_string();
}

} // namespace

StratificationReport verify_stratification_properties(int n, std::uint64_t seed) {
    if (n < 1 || n > 5) {
        throw UsageError("verify_stratification_properties: n must be in [1, 5]");
    }
    StratificationReport report;
    report.n = n;

    const auto perms = all_permutations(n);
    const auto partitions = all_partitions(n);
    Rng rng(seed);

    // Order compatibility: sigma' precsim sigma iff the closure subspace of
    // P(sigma') is contained in that of P(sigma), tested via projectors.
    {
        bool ok = true;
        std::string cex;
        for (const auto& a : perms) {
            const Stratum sa(partition_of_perm(a));
            const Eigen::MatrixXd Pa = sa.projector_matrix();
            for (const auto& b : perms) {
                const Stratum sb(partition_of_perm(b));
                const Eigen::MatrixXd Pb = sb.projector_matrix();
                const bool rel = precsim(b, a);
                const bool contained = ((Pa * Pb) - Pb).norm() < 1e-12;
                if (rel != contained) {
                    ok = false;
                    cex = describe_pair(a, b);
                    break;
                }
            }
            if (!ok) break;
        }
        add_check(report, "order_matches_subspace_containment", ok, cex);
    }

    // Equivalence: equal partitions iff equal closure subspaces.
    {
        bool ok = true;
        std::string cex;
        for (const auto& a : perms) {
            for (const auto& b : perms) {
                const bool same_part = partition_of_perm(a) == partition_of_perm(b);
                const bool same_sub =
                    (Stratum(partition_of_perm(a)).projector_matrix() -
                     Stratum(partition_of_perm(b)).projector_matrix())
                        .norm() < 1e-12;
                if (same_part != same_sub) {
                    ok = false;
                    cex = describe_pair(a, b);
                    break;
                }
            }
            if (!ok) break;
        }
        add_check(report, "equivalence_matches_equal_subspaces", ok, cex);
    }

    // Closure decomposition: the closure subspace of P is the disjoint union
    // of the strata of all coarsenings of P, tested on sampled points.
    {
        bool ok = true;
        std::string cex;
        for (const auto& P : partitions) {
            const Stratum s(P);
            for (int trial = 0; trial < 8 && ok; ++trial) {
                Eigen::VectorXd x(n);
                for (int i = 0; i < n; ++i) x(i) = rng.uniform(-1.0, 1.0);
                const Eigen::VectorXd y = s.project_perpperp(x);
                const Partition Q = partition_of_point(y, 1e-9);
                // Q must coarsen P: every block of Q merges whole blocks of P.
                if (!refines(Q, P)) {
                    ok = false;
                    cex = "P = " + P.to_string() + ", projected point lands in " + Q.to_string();
                }
            }
            if (!ok) break;
        }
        add_check(report, "closure_splits_into_coarser_strata", ok, cex);
    }

    // Meets: the projector onto the closure of meet(P, Q) equals the limit
    // of alternating projections, equivalently its subspace is the
    // intersection of the two closures. Tested by containment + dimension.
    {
        bool ok = true;
        std::string cex;
        for (const auto& P : partitions) {
            const Eigen::MatrixXd BP = Stratum(P).perpperp_basis();
            for (const auto& Q : partitions) {
                const Eigen::MatrixXd BQ = Stratum(Q).perpperp_basis();
                const Partition M = meet(P, Q);
                const Stratum sm(M);
                const Eigen::MatrixXd PM = sm.projector_matrix();
                // Every vector in the meet subspace lies in both closures.
                const Eigen::MatrixXd PP = Stratum(P).projector_matrix();
                const Eigen::MatrixXd PQ = Stratum(Q).projector_matrix();
                const Eigen::MatrixXd BM = sm.perpperp_basis();
                const bool inside =
                    ((PP * BM) - BM).norm() < 1e-12 && ((PQ * BM) - BM).norm() < 1e-12;
                // And its dimension matches the intersection of the subspaces.
                Eigen::MatrixXd stacked(n, BP.cols() + BQ.cols());
                stacked << BP, BQ;
                Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked);
                int rank = 0;
                for (int i = 0; i < svd.singularValues().size(); ++i) {
                    if (svd.singularValues()(i) > 1e-10 * svd.singularValues()(0)) ++rank;
                }
                const int inter_dim =
                    static_cast<int>(BP.cols() + BQ.cols()) - rank;
                const bool dim_ok = inter_dim == M.num_blocks();
                if (!(inside && dim_ok)) {
                    ok = false;
                    cex = "P = " + P.to_string() + ", Q = " + Q.to_string() +
                          ", meet = " + M.to_string();
                    break;
                }
            }
            if (!ok) break;
        }
        add_check(report, "meet_subspace_is_intersection", ok, cex);
    }

    // Conjugation covariance: tau applied to the stratum of sigma gives the
    // stratum of tau sigma tau^{-1}, tested via generic points.
    {
        bool ok = true;
        std::string cex;
        for (const auto& sigma : perms) {
            const Stratum s(partition_of_perm(sigma));
            const Eigen::VectorXd g = s.generic_point();
            for (const auto& tau : perms) {
                const Eigen::VectorXd m = apply(tau, g);
                const Partition expect = partition_of_perm(conjugate(tau, sigma));
                if (partition_of_point(m, 1e-9) != expect) {
                    ok = false;
                    cex = "sigma = " + sigma.to_cycle_string() +
                          ", tau = " + tau.to_cycle_string();
                    break;
                }
            }
            if (!ok) break;
        }
        add_check(report, "conjugation_moves_strata_covariantly", ok, cex);
    }

    // Disjoint cover: every sampled point lies in exactly one stratum.
    {
        bool ok = true;
        std::string cex;
        for (int trial = 0; trial < 64 && ok; ++trial) {
            Eigen::VectorXd x(n);
            for (int i = 0; i < n; ++i) x(i) = rng.uniform(-1.0, 1.0);
            // Mix in points with deliberate coordinate collisions.
            if (trial % 3 == 1 && n >= 2) x(1) = x(0);
            if (trial % 5 == 2 && n >= 3) x(2) = x(0);
            int hits = 0;
            for (const auto& P : partitions) {
                if (Stratum(P).contains(x)) ++hits;
            }
            if (hits != 1) {
                std::ostringstream msg;
                msg << "point with " << hits << " containing strata";
                ok = false;
                cex = msg.str();
            }
        }
        add_check(report, "strata_partition_space", ok, cex);
    }

    return report;
}

} // namespace spectra
