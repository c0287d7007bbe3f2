#pragma once

#include <string>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "spectra/manifolds.hpp"
#include "spectra/partition.hpp"
#include "spectra/permutation.hpp"
#include "spectra/polynomial.hpp"
#include "spectra/strata.hpp"
#include "spectra/verify.hpp"

namespace spectra {

using json = nlohmann::json;

// Vectors are plain arrays; square matrices are {"n": n, "data": row-major}.
json vector_to_json(const Eigen::VectorXd& v);
Eigen::VectorXd vector_from_json(const json& j);
json matrix_to_json(const Eigen::MatrixXd& X);
Eigen::MatrixXd matrix_from_json(const json& j);

// {"n": n, "images": [sigma(1), ..., sigma(n)]}
json permutation_to_json(const Permutation& sigma);
Permutation permutation_from_json(const json& j);

// {"n": n, "blocks": [[...], ...]}
json partition_to_json(const Partition& P);
Partition partition_from_json(const json& j);

// {"n": n, "terms": [{"exponents": [...], "coeff": 3 | "1/3"}, ...]}.
// Coefficients are integers when exact, "p/q" strings otherwise; input also
// accepts doubles (converted exactly).
json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const json& j);

// Descriptor exchange format. Builtin kinds carry their parameters; kind
// "custom" carries polynomial equations whose Jacobian is derived
// symbolically. Infinite delta is serialized as the string "inf".
json manifold_to_json(const ManifoldDescriptor& M);
ManifoldDescriptor manifold_from_json(const json& j);

json characteristic_to_json(const CharacteristicData& data);
json dimension_estimate_to_json(const DimensionEstimate& estimate);
json stratification_report_to_json(const StratificationReport& report);
json tangent_symmetry_report_to_json(const TangentSymmetryReport& report);

json suite_config_to_json(const SuiteConfig& config);
SuiteConfig suite_config_from_json(const json& j);
// Per-check runtimes are included only when the config requested timings,
// keeping the default serialization reproducible byte for byte.
json suite_report_to_json(const SuiteReport& report);

// dump(2) with a trailing newline; keys are emitted in sorted order.
std::string to_pretty_string(const json& j);

} // namespace spectra
