// Acceptance gate: every release-blocking property of the library, one line
// of output per criterion. Exit code 0 only when all criteria hold.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "spectra/error.hpp"
#include "spectra/manifolds.hpp"
#include "spectra/perm_group.hpp"
#include "spectra/spectral.hpp"
#include "spectra/spectral_fn.hpp"
#include "spectra/strata.hpp"
#include "spectra/verify.hpp"

using spectra::all_partitions;
using spectra::all_permutations;
using spectra::MuchSmaller;
using spectra::much_smaller;
using spectra::parse_cycles;
using spectra::Partition;
using spectra::Permutation;
using spectra::precsim;
using spectra::Rng;
using spectra::Stratum;

namespace {

struct Criterion {
    std::string label;
    double budget_seconds;             // hard per-criterion runtime budget
    std::function<std::string()> body; // empty string = pass, else the failure
};

std::string run_shell(const std::string& command, int& exit_code) {
    std::string output;
    FILE* pipe = popen((command + " 2>&1").c_str(), "r");
    if (!pipe) {
        exit_code = -1;
        return output;
    }
    std::array<char, 4096> buf{};
    size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) output.append(buf.data(), got);
    const int status = pclose(pipe);
    exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return output;
}

std::string check_dimension_formula() {
    const auto manifolds = spectra::builtin_test_manifolds();
    if (manifolds.size() < 6) return "fewer than 6 built-in manifolds";
    for (std::size_t k = 0; k < manifolds.size(); ++k) {
        const auto& M = manifolds[k];
        const int predicted = spectra::predicted_spectral_dimension(M);
        const auto estimate = spectra::estimate_spectral_dimension(M, M.base_point);
        if (!estimate.conclusive)
            return "manifold " + std::to_string(k) + ": inconclusive rank estimate";
        if (estimate.dimension != predicted)
            return "manifold " + std::to_string(k) + ": estimated " +
                   std::to_string(estimate.dimension) + ", predicted " +
                   std::to_string(predicted);
    }
    // Closed cases: the scalar-matrix line, and constant support r = 1, 3 in
    // dimension 3 with the r (2n - r + 1) / 2 count.
    if (spectra::predicted_spectral_dimension(
            spectra::make_affine_perpperp(Partition(2, {{1, 2}}))) != 1)
        return "scalar-matrix line is not one-dimensional";
    if (spectra::predicted_spectral_dimension(spectra::make_constant_support(3, 1)) != 3)
        return "constant support r=1, n=3 should lift to dimension 3";
    if (spectra::predicted_spectral_dimension(spectra::make_constant_support(3, 3)) != 6)
        return "constant support r=3, n=3 should lift to dimension 6";
    return "";
}

std::string check_orbit_dimension() {
    for (int n = 2; n <= 6; ++n)
        for (const auto& P : all_partitions(n)) {
            const Eigen::VectorXd x = Stratum(P).generic_point();
            const int closed = spectra::orbit_dimension(x);
            const int oracle = spectra::orbit_dimension_numeric(x);
            if (closed != oracle)
                return "pattern " + P.to_string() + ": closed form " +
                       std::to_string(closed) + ", commutator rank " +
                       std::to_string(oracle);
        }
    return "";
}

std::string check_gradient_transfer() {
    Rng rng(202);
    double worst = 0.0;
    for (const auto& name : spectra::builtin_function_names()) {
        for (int trial = 0; trial < 100; ++trial) {
            const int n = 2 + static_cast<int>(rng.uniform_index(5));
            Eigen::VectorXd x(n);
            for (int i = 0; i < n; ++i) x(i) = rng.uniform(-2.0, 2.0);
            if (trial % 5 == 0 && n >= 3) {
                // Deliberately repeated eigenvalues below the top one.
                x(n - 1) = x(n - 2);
            }
            std::sort(x.data(), x.data() + n, std::greater<double>());
            // Keep the top eigenvalue simple so every family is smooth here.
            if (n >= 2 && x(0) - x(1) < 0.2) x(0) += 0.2;
            const Eigen::MatrixXd X =
                spectra::lift_point(x, spectra::random_orthogonal(n, rng));
            const auto f = spectra::builtin_function(name, n);
            worst = std::max(worst, spectra::gradient_check_error(f, X));
        }
    }
    if (worst >= 1e-6) {
        std::ostringstream ss;
        ss << "max relative gradient error " << worst;
        return ss.str();
    }
    return "";
}

std::string check_projection_equivalence() {
    Rng rng(303);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform_index(5));
        const auto perms = all_permutations(n);
        const auto& sigma = perms[rng.uniform_index(perms.size())];
        const Stratum S(spectra::partition_of_perm(sigma));
        const Eigen::VectorXd x = rng.gaussian_vector(n);
        const double diff =
            (S.project_perpperp(x) - S.project_perpperp_by_group(x)).cwiseAbs().maxCoeff();
        worst = std::max(worst, diff);
    }
    if (worst > 1e-12) {
        std::ostringstream ss;
        ss << "formulas disagree by " << worst;
        return ss.str();
    }
    return "";
}

std::string check_stratification_axioms() {
    for (int n = 2; n <= 5; ++n) {
        const auto report = spectra::verify_stratification_properties(n);
        if (!report.all_passed) {
            for (const auto& check : report.checks)
                if (!check.passed)
                    return "n=" + std::to_string(n) + " " + check.id + ": " +
                           check.counterexample;
        }
    }
    return "";
}

std::string check_rank_lemma() {
    Rng rng(404);
    for (int n = 2; n <= 6; ++n) {
        for (int trial = 0; trial < 100; ++trial) {
            Eigen::VectorXd y;
            while (true) {
                y = rng.gaussian_vector(n);
                Eigen::VectorXd s = y;
                std::sort(s.data(), s.data() + n);
                bool distinct = true;
                for (int i = 1; i < n; ++i)
                    if (s(i) - s(i - 1) < 1e-6) distinct = false;
                if (distinct) break;
            }
            const int rank = spectra::rank_Y(spectra::build_Y(y));
            if (rank != n + 1)
                return "n=" + std::to_string(n) + ": rank " + std::to_string(rank) +
                       " instead of " + std::to_string(n + 1);
        }
        if (spectra::rank_Y(spectra::build_Y(Eigen::VectorXd::Constant(n, 2.5))) != 2)
            return "n=" + std::to_string(n) + ": constant y should give rank 2";
    }
    for (int n = 2; n <= 5; ++n)
        for (const auto& P : all_partitions(n)) {
            std::vector<std::vector<int>> cycles;
            for (const auto& blk : P.blocks())
                if (blk.size() >= 2) cycles.push_back(blk);
            const auto sigma = Permutation::from_cycles(n, cycles);
            Eigen::VectorXd y(n);
            for (int k = 0; k < P.num_blocks(); ++k)
                for (std::size_t j = 0; j < P.block(k).size(); ++j)
                    y(P.block(k)[j] - 1) = 3.0 * k + 0.7 * static_cast<double>(j) + 0.31;
            if (!spectra::check_corollary_A2(sigma, y, 3, 17 * n))
                return "kernel not trivial for pattern " + P.to_string();
        }
    return "";
}

std::string check_order_relations() {
    // Everything at or above a 3-cycle: the whole of S_3, as a fixed set.
    const auto group = spectra::enumerate_S_succsim(parse_cycles("(1 2 3)"));
    std::set<std::string> got;
    for (const auto& g : group) got.insert(g.to_cycle_string());
    const std::set<std::string> expected = {"(1 2 3)", "(1 3 2)", "(1 2)(3)",
                                            "(1 3)(2)", "(1)(2 3)", "(1)(2)(3)"};
    if (got != expected) return "S^>=((123)) is not the whole of S_3";

    // Fixed classification vectors.
    const auto sigma = parse_cycles("(1)(23)(45)(6)(7)");
    if (much_smaller(parse_cycles("(123)(45)(6)(7)"), sigma) != MuchSmaller::MUCH_SMALLER)
        return "(123)(45) should sit much below (23)(45) in degree 7";
    if (much_smaller(parse_cycles("(167)(23)(45)"), sigma) != MuchSmaller::SMALLER_NOT_MUCH)
        return "(167)(23)(45) merges only singletons and is not much smaller";
    const auto s = parse_cycles("(4 5)", 5);
    const auto s1 = parse_cycles("(2 3)(4 5)");
    const auto s2 = parse_cycles("(1 2 3)(4 5)");
    if (much_smaller(s1, s) != MuchSmaller::SMALLER_NOT_MUCH ||
        much_smaller(s2, s) != MuchSmaller::SMALLER_NOT_MUCH ||
        much_smaller(s2, s1) != MuchSmaller::MUCH_SMALLER)
        return "triangle of classifications below (45) is wrong";

    // Transitivity of the three chain flavors, exhaustively on S_4.
    const auto perms = all_permutations(4);
    const int count = static_cast<int>(perms.size());
    std::vector<std::vector<MuchSmaller>> cls(count, std::vector<MuchSmaller>(count));
    std::vector<std::vector<char>> below(count, std::vector<char>(count));
    for (int i = 0; i < count; ++i)
        for (int j = 0; j < count; ++j) {
            cls[i][j] = much_smaller(perms[i], perms[j]);
            below[i][j] = precsim(perms[i], perms[j]);
        }
    for (int i = 0; i < count; ++i)
        for (int j = 0; j < count; ++j)
            for (int k = 0; k < count; ++k) {
                if (below[i][j] && below[j][k] && !below[i][k])
                    return "the at-or-below relation is not transitive";
                if (below[i][j] && cls[j][k] == MuchSmaller::MUCH_SMALLER &&
                    cls[i][k] != MuchSmaller::MUCH_SMALLER)
                    return "much-smaller does not absorb at-or-below on the left";
                if (cls[i][j] == MuchSmaller::SMALLER_NOT_MUCH &&
                    cls[j][k] == MuchSmaller::SMALLER_NOT_MUCH &&
                    cls[i][k] != MuchSmaller::SMALLER_NOT_MUCH)
                    return "smaller-not-much chains are not transitive";
            }
    return "";
}

std::string check_characteristic_permutation() {
    const auto manifolds = spectra::builtin_test_manifolds();
    const std::vector<Partition> expected = {
        Partition(2, {{1, 2}}),
        Partition(3, {{1, 2}, {3}}),
        Partition::discrete(3),
        Partition(3, {{1}, {2, 3}}),
        Partition::discrete(3),
        Partition::discrete(3),
        Partition(4, {{1, 2}, {3, 4}}),
        Partition(5, {{1, 2, 3}, {4, 5}}),
        Partition(3, {{1, 2}, {3}}),
    };
    for (std::size_t k = 0; k < manifolds.size(); ++k) {
        const auto cd =
            spectra::characteristic_permutation(manifolds[k], manifolds[k].base_point);
        if (!(cd.sigma_star_partition == expected[k]))
            return "manifold " + std::to_string(k) + ": detected " +
                   cd.sigma_star_partition.to_string() + ", expected " +
                   expected[k].to_string();
    }
    const Partition scattered(7, {{1}, {2, 7, 4}, {3, 5}, {6}});
    if (spectra::consecutive_blocks(scattered))
        return "{{1},{2,4,7},{3,5},{6}} wrongly accepted as consecutive";
    try {
        spectra::predicted_spectral_dimension(1, scattered);
        return "the dimension formula accepted a non-consecutive pattern";
    } catch (const spectra::PreconditionError&) {
    }
    return "";
}

std::string check_negative_control() {
    const auto line = spectra::nonsymmetric_line_manifold(0.0);
    const auto report = spectra::verify_tangent_normal_symmetry(line, line.base_point);
    if (report.all_passed) return "the symmetry decomposition accepted the line at 0";

    const auto at_origin = spectra::estimate_spectral_dimension(line, line.base_point);
    const auto shifted = spectra::nonsymmetric_line_manifold(1.0);
    const auto away = spectra::estimate_spectral_dimension(shifted, shifted.base_point);
    const bool flagged = !at_origin.conclusive || at_origin.dimension != away.dimension;
    if (!flagged) return "lifted rank estimate failed to expose the missing symmetry";
    return "";
}

std::string check_determinism() {
    const std::string cli = SPECTRA_CLI_PATH;
    int code_a = 0, code_b = 0;
    const std::string a = run_shell("'" + cli + "' verify run --seed 0", code_a);
    const std::string b = run_shell("'" + cli + "' verify run --seed 0", code_b);
    if (code_a != 0 || code_b != 0)
        return "verify run exited with " + std::to_string(code_a) + " / " +
               std::to_string(code_b);
    if (a != b) return "two identical runs produced different reports";
    if (a.find("\"all_passed\": true") == std::string::npos)
        return "the default report is not all-pass";
    return "";
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"dimension formula equals sampled rank on built-in manifolds", 60.0,
         check_dimension_formula},
        {"orbit dimension closed form matches the commutator-rank oracle (n <= 6)", 10.0,
         check_orbit_dimension},
        {"analytic spectral gradients match finite differences (5 families x 100)", 30.0,
         check_gradient_transfer},
        {"group-average and block-average projections agree to 1e-12 (1000 draws)", 5.0,
         check_projection_equivalence},
        {"stratification axioms verified exhaustively (n <= 5)", 30.0,
         check_stratification_axioms},
        {"permutation matrix rank lemma and kernel triviality", 60.0,
         check_rank_lemma},
        {"order-relation fixed vectors and chain transitivity", 1.0,
         check_order_relations},
        {"characteristic pattern detection and consecutive-blocks gate", 5.0,
         check_characteristic_permutation},
        {"non-symmetric line fails the symmetry and rank checks", 5.0,
         check_negative_control},
        {"verification suite output is byte-identical across runs", 60.0,
         check_determinism},
    };

    int failures = 0;
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto start = std::chrono::steady_clock::now();
        std::string failure;
        try {
            failure = criteria[k].body();
        } catch (const std::exception& e) {
            failure = std::string("exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (failure.empty() && seconds > criteria[k].budget_seconds) {
            std::ostringstream ss;
            ss << "over the " << criteria[k].budget_seconds << "s budget";
            failure = ss.str();
        }
        std::printf("[%s] %2zu %s (%.2fs)\n", failure.empty() ? "PASS" : "FAIL", k + 1,
                    criteria[k].label.c_str(), seconds);
        if (!failure.empty()) {
            std::printf("         %s\n", failure.c_str());
            ++failures;
        }
    }
    const double total =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%d/%zu criteria passed (%.2fs total)\n",
                static_cast<int>(criteria.size()) - failures, criteria.size(), total);
    return failures == 0 ? 0 : 1;
}
