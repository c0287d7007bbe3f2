#include "spectra/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "spectra/error.hpp"

namespace spectra {

Permutation::Permutation(int n) {
    if (n < 0) throw UsageError("permutation degree must be >= 0");
    images_.resize(n);
    std::iota(images_.begin(), images_.end(), 1);
    build_cycles();
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
    const int n = static_cast<int>(images_.size());
    std::vector<char> seen(n, 0);
    for (int v : images_) {
        if (v < 1 || v > n) throw UsageError("image out of range in permutation");
        if (seen[v - 1]) throw UsageError("duplicate image in permutation");
        seen[v - 1] = 1;
    }
    build_cycles();
}

Permutation Permutation::from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
    if (n < 0) throw UsageError("permutation degree must be >= 0");
    if (n == 0 && !cycles.empty()) throw UsageError("cycles on an empty ground set");
    std::vector<int> images(n);
    std::iota(images.begin(), images.end(), 1);
    std::vector<char> used(n, 0);
    for (const auto& cyc : cycles) {
        for (int v : cyc) {
            if (v < 1 || v > n) throw UsageError("cycle element out of range");
            if (used[v - 1]) throw UsageError("cycles are not disjoint");
            used[v - 1] = 1;
        }
        const int len = static_cast<int>(cyc.size());
        for (int k = 0; k < len; ++k) images[cyc[k] - 1] = cyc[(k + 1) % len];
    }
    return Permutation(std::move(images));
}

void Permutation::build_cycles() {
    const int n = this->n();
    std::vector<char> visited(n, 0);
    for (int start = 1; start <= n; ++start) {
        if (visited[start - 1]) continue;
        std::vector<int> cyc;
        int cur = start;
        do {
            visited[cur - 1] = 1;
            cyc.push_back(cur);
            cur = images_[cur - 1];
        } while (cur != start);
        if (cyc.size() >= 2) cycles_.push_back(std::move(cyc));
    }
    // Traversal from increasing start points already yields cycles rotated to
    // their minimum, in order of that minimum.
}

bool Permutation::is_identity() const { return cycles_.empty(); }

Permutation Permutation::inverse() const {
    std::vector<int> inv(images_.size());
    for (int i = 1; i <= n(); ++i) inv[images_[i - 1] - 1] = i;
    return Permutation(std::move(inv));
}

Permutation Permutation::operator*(const Permutation& other) const {
    if (n() != other.n()) throw UsageError("composing permutations of different degree");
    std::vector<int> images(images_.size());
    for (int i = 1; i <= n(); ++i) images[i - 1] = images_[other.images_[i - 1] - 1];
    return Permutation(std::move(images));
}

std::vector<int> Permutation::support() const {
    std::vector<int> s;
    for (int i = 1; i <= n(); ++i)
        if (images_[i - 1] != i) s.push_back(i);
    return s;
}

std::string Permutation::to_cycle_string() const {
    std::ostringstream out;
    std::vector<char> in_cycle(n(), 0);
    for (const auto& cyc : cycles_)
        for (int v : cyc) in_cycle[v - 1] = 1;

    // Emit nontrivial cycles and singletons interleaved by minimum element.
    std::size_t next_cycle = 0;
    for (int i = 1; i <= n(); ++i) {
        if (in_cycle[i - 1]) {
            if (next_cycle < cycles_.size() && cycles_[next_cycle][0] == i) {
                out << '(';
                const auto& cyc = cycles_[next_cycle];
                for (std::size_t k = 0; k < cyc.size(); ++k) {
                    if (k) out << ' ';
                    out << cyc[k];
                }
                out << ')';
                ++next_cycle;
            }
        } else {
            out << '(' << i << ')';
        }
    }
    return out.str();
}

Eigen::VectorXd apply(const Permutation& sigma, const Eigen::VectorXd& x) {
    if (x.size() != sigma.n()) throw UsageError("vector length does not match permutation degree");
    Eigen::VectorXd y(x.size());
    for (int i = 1; i <= sigma.n(); ++i) y(sigma(i) - 1) = x(i - 1);
    return y;
}

Permutation conjugate(const Permutation& tau, const Permutation& sigma) {
    if (tau.n() != sigma.n()) throw UsageError("conjugating permutations of different degree");
    return tau * sigma * tau.inverse();
}

namespace {

int parse_int(const std::string& text, std::size_t& pos) {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw UsageError("expected a number at position " + std::to_string(start) +
                                       " in \"" + text + "\"");
    return std::stoi(text.substr(start, pos - start));
}

} // namespace

Permutation parse_cycles(const std::string& text, std::optional<int> n) {
    // Two notations: separated elements "(1 2 3)" / "(1,2,3)" where tokens
    // are full numbers, and the compact classical form "(123)" where the
    // string has no separators and every digit is its own element. The whole
    // string is read in one mode: any space or comma disables splitting.
    const bool compact =
        text.find(' ') == std::string::npos && text.find(',') == std::string::npos &&
        text.find('\t') == std::string::npos;

    std::vector<std::vector<int>> cycles;
    std::size_t pos = 0;
    int max_elem = 0;
    auto skip_sep = [&](bool allow_comma) {
        while (pos < text.size() &&
               (std::isspace(static_cast<unsigned char>(text[pos])) ||
                (allow_comma && text[pos] == ',')))
            ++pos;
    };
    auto note = [&](std::vector<int>& cyc, int v) {
        if (v < 1)
            throw UsageError("cycle elements must be >= 1 (separate multi-digit elements "
                             "with spaces or commas)");
        cyc.push_back(v);
        max_elem = std::max(max_elem, v);
    };
    skip_sep(false);
    while (pos < text.size()) {
        if (text[pos] != '(')
            throw UsageError("expected '(' at position " + std::to_string(pos) +
                             " in \"" + text + "\"");
        ++pos;
        std::vector<int> cyc;
        skip_sep(true);
        while (pos < text.size() && text[pos] != ')') {
            if (compact) {
                const char c = text[pos];
                if (!std::isdigit(static_cast<unsigned char>(c)))
                    throw UsageError("expected a digit at position " + std::to_string(pos) +
                                     " in \"" + text + "\"");
                note(cyc, c - '0');
                ++pos;
            } else {
                note(cyc, parse_int(text, pos));
                skip_sep(true);
            }
        }
        if (pos >= text.size())
            throw UsageError("unterminated cycle (missing ')') in \"" + text + "\"");
        ++pos; // ')'
        if (!cyc.empty()) cycles.push_back(std::move(cyc));
        skip_sep(false);
    }
    if (max_elem == 0 && !n) throw UsageError("empty permutation and no degree given");
    const int degree = n.value_or(max_elem);
    if (degree < max_elem)
        throw UsageError("cycle element " + std::to_string(max_elem) +
                         " exceeds degree " + std::to_string(degree));
    return Permutation::from_cycles(degree, cycles);
}

std::vector<Permutation> all_permutations(int n) {
    std::vector<int> images(n);
    std::iota(images.begin(), images.end(), 1);
    std::vector<Permutation> out;
    do {
        out.push_back(Permutation(images));
    } while (std::next_permutation(images.begin(), images.end()));
    return out;
}

} // namespace spectra
