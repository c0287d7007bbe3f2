#pragma once

#include <cstdint>

namespace spectra {

// Default cap on the size of any permutation-set enumeration (for a
// block-stabilizer subgroup the size is the product of block factorials).
// Overridable process-wide through the SPECTRA_CAP environment variable.
inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

// Effective enumeration cap: SPECTRA_CAP if set and parsable, else the default.
std::uint64_t enumeration_cap();

namespace tol {
// Absolute tolerance for point/stratum membership decisions.
inline constexpr double kMembership = 1e-9;
// Orthogonality / exact-identity checks on well-scaled matrices.
inline constexpr double kOrthogonality = 1e-10;
// Agreement between the group-average and block-average projections.
inline constexpr double kProjectionAgreement = 1e-12;
// Invariance margin for the local-symmetry probe.
inline constexpr double kSymmetryProbe = 1e-10;
// Central finite-difference step for gradient checks.
inline constexpr double kFdStep = 1e-5;
// Relative singular-value threshold for rank decisions on sampled directions.
inline constexpr double kRankRelative = 1e-6;
// Required ratio across the singular-value gap for a conclusive rank.
inline constexpr double kRankGapRatio = 10.0;
} // namespace tol

} // namespace spectra
