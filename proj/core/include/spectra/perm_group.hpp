#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "spectra/partition.hpp"
#include "spectra/permutation.hpp"

namespace spectra {

using BigInt = boost::multiprecision::cpp_int;

// |S^>=(sigma)| = product over blocks of |I_i|!, exact, no enumeration.
BigInt card_S_succsim(const Permutation& sigma);
BigInt card_block_group(const Partition& P);

// The subgroup of all permutations preserving each block of
// partition_of_perm(sigma) setwise (equivalently, all sigma2 >= sigma).
// Errors with CapError when the cardinality exceeds the cap
// (default enumeration_cap(); pass `cap` to override).
std::vector<Permutation> enumerate_S_succsim(const Permutation& sigma,
                                             std::optional<std::uint64_t> cap = std::nullopt);
std::vector<Permutation> enumerate_block_group(const Partition& P,
                                               std::optional<std::uint64_t> cap = std::nullopt);

} // namespace spectra
