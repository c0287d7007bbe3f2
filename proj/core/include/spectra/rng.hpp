#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace spectra {

// Deterministic random source. Gaussian variates use an explicit Box-Muller
// transform over mt19937_64 uniforms instead of std::normal_distribution,
// whose output sequence is implementation-defined; seeded results here are
// reproducible across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : gen_(seed) {}

    // Uniform on [0, 1).
    double uniform();
    // Uniform on [lo, hi).
    double uniform(double lo, double hi);
    // Uniform integer in {0, ..., bound-1}.
    std::uint64_t uniform_index(std::uint64_t bound);
    // Standard normal variate.
    double gaussian();

    Eigen::VectorXd gaussian_vector(int n);
    Eigen::MatrixXd gaussian_matrix(int rows, int cols);
    // Uniform direction on the unit sphere in R^n.
    Eigen::VectorXd unit_vector(int n);

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace spectra
