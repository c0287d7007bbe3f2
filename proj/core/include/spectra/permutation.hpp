#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace spectra {

// A permutation of {1..n}, stored as its one-line image array:
// image(i) = sigma(i) with 1-based indices throughout the public interface.
// The cycle decomposition is computed once at construction and cached;
// instances are immutable afterwards and safe to share across threads.
class Permutation {
public:
    // Identity on {1..n}.
    explicit Permutation(int n);
    // From a 1-based image array; validates bijectivity.
    explicit Permutation(std::vector<int> images);

    static Permutation identity(int n) { return Permutation(n); }
    // From a list of cycles over {1..n}, e.g. {{1,2,3},{4,5}}.
    static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles);

    int n() const { return static_cast<int>(images_.size()); }
    // sigma(i), 1-based.
    int operator()(int i) const { return images_[i - 1]; }
    const std::vector<int>& images() const { return images_; }

    bool is_identity() const;
    Permutation inverse() const;
    // Composition (this o other): i -> this(other(i)).
    Permutation operator*(const Permutation& other) const;
    bool operator==(const Permutation& other) const = default;

    // Cycles of length >= 2, each rotated to start at its minimum,
    // sorted by that minimum. Fixed points are not listed.
    const std::vector<std::vector<int>>& cycles() const { return cycles_; }
    // Indices moved by the permutation, sorted.
    std::vector<int> support() const;

    // Cycle notation, fixed points included as singletons: "(1 2 3)(4)".
    std::string to_cycle_string() const;

private:
    std::vector<int> images_;
    std::vector<std::vector<int>> cycles_;

    void build_cycles();
};

// The natural action on vectors: y = sigma x with y_{sigma(i)} = x_i
// (equivalently y_i = x_{sigma^{-1}(i)}).
Eigen::VectorXd apply(const Permutation& sigma, const Eigen::VectorXd& x);

// tau o sigma o tau^{-1}; its cycles are the tau-images of sigma's cycles.
Permutation conjugate(const Permutation& tau, const Permutation& sigma);

// Parses cycle notation such as "(1 2 3)(4)" or "(1,2,3)", plus the compact
// form "(123)(45)" where every digit is one element (used only when the whole
// string contains no spaces or commas; multi-digit elements always need
// separators). Fixed points may be omitted when n is given; otherwise n is
// taken as the largest element mentioned.
Permutation parse_cycles(const std::string& text, std::optional<int> n = std::nullopt);

// All n! permutations of {1..n} in lexicographic image order.
std::vector<Permutation> all_permutations(int n);

} // namespace spectra
