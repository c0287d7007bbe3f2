#include "spectra/perm_group.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <string>

#include "spectra/config.hpp"
#include "spectra/error.hpp"

namespace spectra {

std::uint64_t enumeration_cap() {
    if (const char* env = std::getenv("SPECTRA_CAP")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
    }
    return kDefaultEnumerationCap;
}

BigInt card_block_group(const Partition& P) {
    BigInt card = 1;
    for (const auto& b : P.blocks())
        for (std::size_t k = 2; k <= b.size(); ++k) card *= static_cast<unsigned>(k);
    return card;
}

BigInt card_S_succsim(const Permutation& sigma) {
    return card_block_group(partition_of_perm(sigma));
}

std::vector<Permutation> enumerate_block_group(const Partition& P,
                                               std::optional<std::uint64_t> cap) {
    const BigInt card = card_block_group(P);
    const std::uint64_t limit = cap.value_or(enumeration_cap());
    if (card > limit)
        throw CapError("block-stabilizer group has " + card.str() +
                       " elements, above the cap of " + std::to_string(limit));

    // Cartesian product of the per-block symmetric groups: run an odometer of
    // per-block arrangements, rebuilt with std::next_permutation.
    const int n = P.n();
    const int nb = P.num_blocks();
    std::vector<std::vector<int>> arrangement(nb);
    for (int k = 0; k < nb; ++k) arrangement[k] = P.block(k);

    std::vector<Permutation> out;
    out.reserve(static_cast<std::size_t>(card));
    while (true) {
        std::vector<int> images(n);
        for (int k = 0; k < nb; ++k) {
            const auto& b = P.block(k);
            for (std::size_t i = 0; i < b.size(); ++i) images[b[i] - 1] = arrangement[k][i];
        }
        out.push_back(Permutation(std::move(images)));
        int k = nb - 1;
        while (k >= 0 && !std::next_permutation(arrangement[k].begin(), arrangement[k].end()))
            --k; // next_permutation wrapped this block back to sorted order
        if (k < 0) break;
    }
    return out;
}

std::vector<Permutation> enumerate_S_succsim(const Permutation& sigma,
                                             std::optional<std::uint64_t> cap) {
    return enumerate_block_group(partition_of_perm(sigma), cap);
}

} // namespace spectra
