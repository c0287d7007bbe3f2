#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "spectra/permutation.hpp"

namespace spectra {

// The (n!+1) x (n+1) matrix with first row (1,...,1,0) and one row
// (sigma y, 1) per permutation, in lexicographic order of the permutations.
struct YMatrix {
    int n = 0;
    Eigen::VectorXd y;
    Eigen::MatrixXd rows;
};

YMatrix build_Y(const Eigen::VectorXd& y, int max_n = 7);

// Rank of Y.rows, by singular values (threshold 1e-10 relative) with an
// exact rational-elimination cross-check; throws if the two disagree.
// Expected n+1 whenever y has two distinct coordinates, 2 for constant y.
int rank_Y(const YMatrix& Y);

// The orthogonality consequence: a vector x with blockwise zero sums over
// the partition of sigma and with <x, sigma' y> constant over the
// block-stabilizer of sigma must be zero. Builds that linear system and
// returns true iff its kernel is trivial. The given y is always checked;
// trials beyond the first draw fresh valid y (distinct within each block).
bool check_corollary_A2(const Permutation& sigma, const Eigen::VectorXd& y,
                        int trials = 1, std::uint64_t seed = 0);

struct SuiteConfig {
    int max_n = 5;
    std::uint64_t seed = 0;
    bool fault_injection = false; // perturb one identity by 1e-3, to prove
                                  // the suite can fail
    bool timings = false;         // include runtimes when serializing
};

struct CheckResult {
    std::string check_id;
    bool passed = false;
    double max_error = 0.0;
    double runtime_seconds = 0.0; // volatile; serialized only with timings
    std::string detail;
};

struct SuiteReport {
    int schema_version = 1;
    SuiteConfig config;
    bool all_passed = true;
    std::vector<CheckResult> checks;
};

// Runs the cross-module property suite with deterministic per-check seeds
// derived from config.seed. Identical config gives an identical report
// (runtimes aside).
SuiteReport run_suite(const SuiteConfig& config);

} // namespace spectra
