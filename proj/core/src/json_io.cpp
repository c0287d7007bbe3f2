#include "spectra/json_io.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "spectra/error.hpp"

namespace spectra {

namespace {

json rational_to_json(const Rational& r) {
    const auto num = boost::multiprecision::numerator(r);
    const auto den = boost::multiprecision::denominator(r);
    if (den == 1 && num >= std::numeric_limits<std::int64_t>::min() &&
        num <= std::numeric_limits<std::int64_t>::max()) {
        return static_cast<std::int64_t>(num);
    }
    return r.str();
}

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_number_float()) return Rational(j.get<double>());
    if (j.is_string()) {
        try {
            return Rational(j.get<std::string>());
        } catch (const std::exception&) {
            throw UsageError("invalid rational literal: " + j.get<std::string>());
        }
    }
    throw UsageError("coefficient must be a number or a \"p/q\" string");
}

double delta_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
        throw UsageError("delta must be a number or \"inf\"");
    }
    return j.get<double>();
}

json delta_to_json(double delta) {
    if (std::isinf(delta)) return "inf";
    return delta;
}

const json& at(const json& j, const char* key) {
    if (!j.contains(key)) throw UsageError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

} // namespace

json vector_to_json(const Eigen::VectorXd& v) {
    json j = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v(i));
    return j;
}

Eigen::VectorXd vector_from_json(const json& j) {
    if (!j.is_array()) throw UsageError("vector must be a JSON array");
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
    return v;
}

json matrix_to_json(const Eigen::MatrixXd& X) {
    if (X.rows() != X.cols()) throw UsageError("only square matrices are serialized");
    json data = json::array();
    for (Eigen::Index r = 0; r < X.rows(); ++r)
        for (Eigen::Index c = 0; c < X.cols(); ++c) data.push_back(X(r, c));
    return json{{"n", X.rows()}, {"data", std::move(data)}};
}

Eigen::MatrixXd matrix_from_json(const json& j) {
    const int n = at(j, "n").get<int>();
    const json& data = at(j, "data");
    if (n < 1 || !data.is_array() || data.size() != static_cast<std::size_t>(n) * n)
        throw UsageError("matrix data must hold n*n entries in row-major order");
    Eigen::MatrixXd X(n, n);
    std::size_t k = 0;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) X(r, c) = data[k++].get<double>();
    return X;
}

json permutation_to_json(const Permutation& sigma) {
    return json{{"n", sigma.n()}, {"images", sigma.images()}};
}

Permutation permutation_from_json(const json& j) {
    if (j.is_string()) return parse_cycles(j.get<std::string>());
    return Permutation(at(j, "images").get<std::vector<int>>());
}

json partition_to_json(const Partition& P) {
    return json{{"n", P.n()}, {"blocks", P.blocks()}};
}

Partition partition_from_json(const json& j) {
    return Partition(at(j, "n").get<int>(),
                     at(j, "blocks").get<std::vector<std::vector<int>>>());
}

json polynomial_to_json(const Polynomial& p) {
    json terms = json::array();
    for (const auto& [exponents, coeff] : p.terms())
        terms.push_back(json{{"exponents", exponents}, {"coeff", rational_to_json(coeff)}});
    return json{{"n", p.n()}, {"terms", std::move(terms)}};
}

Polynomial polynomial_from_json(const json& j) {
    Polynomial p(at(j, "n").get<int>());
    for (const json& term : at(j, "terms")) {
        p.add_term(at(term, "exponents").get<std::vector<int>>(),
                   rational_from_json(at(term, "coeff")));
    }
    return p;
}

json manifold_to_json(const ManifoldDescriptor& M) {
    json j{{"kind", to_string(M.kind)}, {"n", M.n}, {"d", M.d},
           {"base_point", vector_to_json(M.base_point)}, {"delta", delta_to_json(M.delta)}};
    switch (M.kind) {
        case ManifoldKind::STRATUM:
        case ManifoldKind::AFFINE_PERPPERP:
            j["partition"] = M.partition.blocks();
            break;
        case ManifoldKind::SPHERE_IN_PERPPERP:
            j["partition"] = M.partition.blocks();
            j["center"] = vector_to_json(M.center);
            j["radius"] = M.radius;
            break;
        case ManifoldKind::CONSTANT_SUPPORT:
            j["support"] = M.support;
            break;
        case ManifoldKind::CUSTOM:
            throw UsageError(
                "custom descriptors with callback equations cannot be serialized; only "
                "polynomial-equation descriptors round-trip through JSON");
    }
    return j;
}

ManifoldDescriptor manifold_from_json(const json& j) {
    const std::string kind = at(j, "kind").get<std::string>();
    const double delta = j.contains("delta") ? delta_from_json(j.at("delta"))
                                             : std::numeric_limits<double>::infinity();

    const auto partition_of = [&](int n) {
        return Partition(n, at(j, "partition").get<std::vector<std::vector<int>>>());
    };
    const auto base_override = [&](ManifoldDescriptor M) {
        if (j.contains("base_point")) {
            ManifoldDescriptor probe = M;
            probe.base_point = vector_from_json(j.at("base_point"));
            local_equation_value(probe, probe.base_point); // validates dimensions
            M.base_point = probe.base_point;
        }
        return M;
    };

    if (kind == "stratum") {
        const int n = at(j, "n").get<int>();
        return base_override(make_stratum(partition_of(n), delta));
    }
    if (kind == "affine") {
        const int n = at(j, "n").get<int>();
        return base_override(make_affine_perpperp(partition_of(n), delta));
    }
    if (kind == "sphere") {
        const int n = at(j, "n").get<int>();
        return make_sphere_in_perpperp(partition_of(n), vector_from_json(at(j, "center")),
                                       at(j, "radius").get<double>(),
                                       vector_from_json(at(j, "base_point")), delta);
    }
    if (kind == "constant_support") {
        if (j.contains("base_point"))
            return make_constant_support(vector_from_json(j.at("base_point")), delta);
        return make_constant_support(at(j, "n").get<int>(), at(j, "support").get<int>(), delta);
    }
    if (kind == "custom") {
        const int n = at(j, "n").get<int>();
        std::vector<Polynomial> equations;
        for (const json& eq : at(j, "equations")) {
            Polynomial p = polynomial_from_json(eq);
            if (p.n() != n)
                throw UsageError("custom equation arity does not match the descriptor's n");
            equations.push_back(std::move(p));
        }
        if (equations.empty()) throw UsageError("custom descriptor needs at least one equation");
        std::vector<std::vector<Polynomial>> jacobian;
        for (const Polynomial& p : equations) {
            std::vector<Polynomial> row;
            for (int i = 1; i <= n; ++i) row.push_back(p.derivative(i));
            jacobian.push_back(std::move(row));
        }
        const int rows = static_cast<int>(equations.size());
        const auto phi = [equations](const Eigen::VectorXd& x) {
            Eigen::VectorXd v(static_cast<Eigen::Index>(equations.size()));
            for (std::size_t r = 0; r < equations.size(); ++r)
                v(static_cast<Eigen::Index>(r)) = equations[r].eval(x);
            return v;
        };
        const auto jac = [jacobian, n](const Eigen::VectorXd& x) {
            Eigen::MatrixXd J(static_cast<Eigen::Index>(jacobian.size()), n);
            for (std::size_t r = 0; r < jacobian.size(); ++r)
                for (int c = 0; c < n; ++c)
                    J(static_cast<Eigen::Index>(r), c) = jacobian[r][static_cast<std::size_t>(c)].eval(x);
            return J;
        };
        const int d = j.contains("d") ? j.at("d").get<int>() : n - rows;
        return make_custom(n, d, vector_from_json(at(j, "base_point")), phi, jac, delta);
    }
    throw UsageError("unknown manifold kind: " + kind);
}

json characteristic_to_json(const CharacteristicData& data) {
    return json{{"partition", data.sigma_star_partition.blocks()},
                {"kappa_star", data.kappa_star},
                {"m_star", data.m_star},
                {"f_indices", data.fm_split.f_indices},
                {"m_indices", data.fm_split.m_indices}};
}

json dimension_estimate_to_json(const DimensionEstimate& estimate) {
    return json{{"dimension", estimate.dimension},
                {"conclusive", estimate.conclusive},
                {"gap_ratio", std::isinf(estimate.gap_ratio) ? json("inf")
                                                             : json(estimate.gap_ratio)},
                {"singular_values", vector_to_json(estimate.singular_values)}};
}

json stratification_report_to_json(const StratificationReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks) {
        json entry{{"id", c.id}, {"passed", c.passed}};
        if (!c.passed) entry["counterexample"] = c.counterexample;
        checks.push_back(std::move(entry));
    }
    return json{{"n", report.n}, {"all_passed", report.all_passed},
                {"checks", std::move(checks)}};
}

json tangent_symmetry_report_to_json(const TangentSymmetryReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks) {
        json entry{{"id", c.id}, {"passed", c.passed}};
        if (!c.detail.empty()) entry["detail"] = c.detail;
        checks.push_back(std::move(entry));
    }
    return json{{"all_passed", report.all_passed}, {"checks", std::move(checks)}};
}

json suite_config_to_json(const SuiteConfig& config) {
    return json{{"max_n", config.max_n},
                {"seed", config.seed},
                {"fault_injection", config.fault_injection},
                {"timings", config.timings}};
}

SuiteConfig suite_config_from_json(const json& j) {
    SuiteConfig config;
    if (j.contains("max_n")) config.max_n = j.at("max_n").get<int>();
    if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("fault_injection"))
        config.fault_injection = j.at("fault_injection").get<bool>();
    if (j.contains("timings")) config.timings = j.at("timings").get<bool>();
    return config;
}

json suite_report_to_json(const SuiteReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks) {
        json entry{{"check_id", c.check_id}, {"passed", c.passed}, {"max_error", c.max_error}};
        if (!c.detail.empty()) entry["detail"] = c.detail;
        if (report.config.timings) entry["runtime_seconds"] = c.runtime_seconds;
        checks.push_back(std::move(entry));
    }
    return json{{"schema_version", report.schema_version},
                {"config", suite_config_to_json(report.config)},
                {"all_passed", report.all_passed},
                {"checks", std::move(checks)}};
}

std::string to_pretty_string(const json& j) { return j.dump(2) + "\n"; }

} // namespace spectra
