#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spectra/error.hpp"
#include "spectra/json_io.hpp"
#include "spectra/manifolds.hpp"
#include "spectra/perm_group.hpp"
#include "spectra/spectral.hpp"
#include "spectra/spectral_fn.hpp"
#include "spectra/strata.hpp"
#include "spectra/verify.hpp"

namespace {

using spectra::json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

// Thrown by command handlers when a verification fails; maps to exit code 1
// after all normal output has been printed.
struct CheckFailure {};

spectra::Permutation parse_perm(const std::string& text, std::optional<int> n) {
    return spectra::parse_cycles(text, n);
}

// Both permutations on one {1..n}: the explicit --n when given, else the
// larger of the two inferred degrees (fixed points are implicit).
std::pair<spectra::Permutation, spectra::Permutation> parse_perm_pair(
    const std::string& first, const std::string& second, std::optional<int> n) {
    if (n) return {parse_perm(first, n), parse_perm(second, n)};
    const int degree =
        std::max(parse_perm(first, std::nullopt).n(), parse_perm(second, std::nullopt).n());
    return {parse_perm(first, degree), parse_perm(second, degree)};
}

Eigen::VectorXd parse_vector(const std::string& text) {
    Eigen::VectorXd out;
    std::vector<double> values;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            values.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw spectra::UsageError("invalid number in vector: \"" + item + "\"");
        }
    }
    if (values.empty()) throw spectra::UsageError("empty vector literal");
    out.resize(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i)
        out(static_cast<Eigen::Index>(i)) = values[i];
    return out;
}

spectra::Partition parse_partition_arg(const std::string& text, std::optional<int> n_hint) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw spectra::UsageError(std::string("invalid partition literal: ") + e.what());
    }
    if (!j.is_array()) throw spectra::UsageError("partition must be an array of blocks");
    const auto blocks = j.get<std::vector<std::vector<int>>>();
    int n = 0;
    for (const auto& b : blocks)
        for (int i : b) n = std::max(n, i);
    if (n_hint) n = std::max(n, *n_hint);
    return spectra::Partition(n, blocks);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw spectra::UsageError("cannot open output file: " + path);
    out << content;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw spectra::UsageError("cannot open input file: " + path);
    try {
        return json::parse(in);
    } catch (const std::exception& e) {
        throw spectra::UsageError("invalid JSON in " + path + ": " + e.what());
    }
}

struct PermOptions {
    std::string first;
    std::string second;
    std::optional<int> n;
    bool count = false;
    std::string format = "pretty";
};

void print_or_json(const std::string& format, const std::string& pretty, const json& j) {
    if (format == "json")
        std::cout << spectra::to_pretty_string(j);
    else
        std::cout << pretty << "\n";
}

void run_perm_order(const PermOptions& opt) {
    const auto [first, second] = parse_perm_pair(opt.first, opt.second, opt.n);
    const auto verdict = spectra::much_smaller(first, second);
    print_or_json(opt.format, spectra::to_string(verdict),
                  json{{"first", opt.first},
                       {"second", opt.second},
                       {"order", spectra::to_string(verdict)}});
}

void run_perm_meet(const PermOptions& opt) {
    const auto [first, second] = parse_perm_pair(opt.first, opt.second, opt.n);
    const auto M = spectra::meet(first, second);
    print_or_json(opt.format, M.to_string(), spectra::partition_to_json(M));
}

void run_perm_conjugate(const PermOptions& opt) {
    const auto [tau, sigma] = parse_perm_pair(opt.first, opt.second, opt.n);
    const auto moved = spectra::conjugate(tau, sigma);
    print_or_json(opt.format, moved.to_cycle_string(), spectra::permutation_to_json(moved));
}

void run_perm_s_succsim(const PermOptions& opt) {
    const auto sigma = parse_perm(opt.first, opt.n);
    const spectra::BigInt card = spectra::card_S_succsim(sigma);
    if (opt.count) {
        print_or_json(opt.format, card.str(),
                      json{{"sigma", sigma.to_cycle_string()}, {"count", card.str()}});
        return;
    }
    const auto group = spectra::enumerate_S_succsim(sigma);
    if (opt.format == "json") {
        json elements = json::array();
        for (const auto& g : group) elements.push_back(g.to_cycle_string());
        std::cout << spectra::to_pretty_string(json{{"sigma", sigma.to_cycle_string()},
                                                    {"count", card.str()},
                                                    {"elements", std::move(elements)}});
        return;
    }
    std::cout << "count: " << card.str() << "\n";
    for (const auto& g : group) std::cout << g.to_cycle_string() << "\n";
}

void run_perm_fm_split(const PermOptions& opt) {
    const auto sigma = parse_perm(opt.first, opt.n);
    const auto split = spectra::FMSplit::from_perm(sigma);
    const auto [sigma_f, sigma_m] = spectra::fm_decompose_perm(sigma, split);
    json jf = json::array(), jm = json::array();
    for (int i : split.f_indices) jf.push_back(i);
    for (int i : split.m_indices) jm.push_back(i);
    if (opt.format == "json") {
        std::cout << spectra::to_pretty_string(
            json{{"sigma", sigma.to_cycle_string()},
                 {"kappa_star", split.kappa_star},
                 {"f_indices", std::move(jf)},
                 {"m_indices", std::move(jm)},
                 {"sigma_f", sigma_f.to_cycle_string()},
                 {"sigma_m", sigma_m.to_cycle_string()}});
        return;
    }
    std::cout << "kappa_star: " << split.kappa_star << "\n";
    std::cout << "f_indices:";
    for (int i : split.f_indices) std::cout << " " << i;
    std::cout << "\nm_indices:";
    for (int i : split.m_indices) std::cout << " " << i;
    std::cout << "\nsigma_f: " << sigma_f.to_cycle_string() << "\n";
    std::cout << "sigma_m: " << sigma_m.to_cycle_string() << "\n";
}

int run_strata_verify(int n, std::uint64_t seed, const std::string& report_path) {
    const auto report = spectra::verify_stratification_properties(n, seed);
    std::cout << "seed: " << seed << "\n";
    for (const auto& check : report.checks) {
        std::cout << (check.passed ? "[PASS] " : "[FAIL] ") << check.id;
        if (!check.passed) std::cout << "  (" << check.counterexample << ")";
        std::cout << "\n";
    }
    if (!report_path.empty()) {
        json j = spectra::stratification_report_to_json(report);
        j["seed"] = seed;
        write_file(report_path, spectra::to_pretty_string(j));
    }
    return report.all_passed ? kExitOk : kExitCheckFailure;
}

int run_spectral_lift(const std::string& x_text, std::uint64_t seed,
                      const std::string& out_path) {
    Eigen::VectorXd x = parse_vector(x_text);
    std::sort(x.data(), x.data() + x.size(), std::greater<double>());
    spectra::Rng rng(seed);
    const Eigen::MatrixXd U = spectra::random_orthogonal(static_cast<int>(x.size()), rng);
    const Eigen::MatrixXd X = spectra::lift_point(x, U);
    const Eigen::VectorXd recovered = spectra::lambda(X);

    std::cout << "seed: " << seed << "\n";
    std::cout << "lambda:";
    for (Eigen::Index i = 0; i < recovered.size(); ++i) std::cout << " " << recovered(i);
    std::cout << "\ntrace: " << X.trace() << "\n";
    std::cout << "orbit_dimension: " << spectra::orbit_dimension(x)
              << " (numeric: " << spectra::orbit_dimension_numeric(x) << ")\n";

    const double roundtrip = (recovered - x).norm();
    std::cout << "roundtrip_error: " << roundtrip << "\n";
    if (!out_path.empty()) {
        json j = spectra::matrix_to_json(X);
        j["seed"] = seed;
        write_file(out_path, spectra::to_pretty_string(j));
    }
    return roundtrip <= 1e-9 ? kExitOk : kExitCheckFailure;
}

int run_specfn_gradcheck(const std::string& name, int n, int trials, std::uint64_t seed) {
    const auto f = spectra::builtin_function(name, n);
    spectra::Rng rng(seed);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        Eigen::MatrixXd A = rng.gaussian_matrix(n, n);
        const Eigen::MatrixXd X = 0.5 * (A + A.transpose());
        worst = std::max(worst, spectra::gradient_check_error(f, X));
    }
    std::cout << "seed: " << seed << "\n";
    std::cout << "f: " << name << "  n: " << n << "  trials: " << trials << "\n";
    std::cout << "max_rel_error: " << worst << "\n";
    const bool ok = worst <= 1e-6;
    std::cout << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? kExitOk : kExitCheckFailure;
}

struct DimcheckOptions {
    std::string builtin_kind;
    std::string spec_path;
    std::string partition;
    std::string center;
    std::string base_point;
    double radius = 0.0;
    int support = -1;
    std::optional<int> n;
    std::uint64_t seed = 0;
    int samples = 40;
    std::string out_path;
};

spectra::ManifoldDescriptor build_dimcheck_manifold(const DimcheckOptions& opt) {
    if (!opt.spec_path.empty()) return spectra::manifold_from_json(read_json_file(opt.spec_path));
    if (opt.builtin_kind == "stratum")
        return spectra::make_stratum(parse_partition_arg(opt.partition, opt.n));
    if (opt.builtin_kind == "affine")
        return spectra::make_affine_perpperp(parse_partition_arg(opt.partition, opt.n));
    if (opt.builtin_kind == "sphere") {
        if (opt.center.empty() || opt.base_point.empty() || opt.radius <= 0.0) {
            throw spectra::UsageError(
                "sphere needs --center, --radius and --base-point");
        }
        return spectra::make_sphere_in_perpperp(parse_partition_arg(opt.partition, opt.n),
                                                parse_vector(opt.center), opt.radius,
                                                parse_vector(opt.base_point));
    }
    if (opt.builtin_kind == "constant_support") {
        if (!opt.n || opt.support < 0)
            throw spectra::UsageError("constant_support needs --n and --support");
        return spectra::make_constant_support(*opt.n, opt.support);
    }
    throw spectra::UsageError("unknown builtin kind: \"" + opt.builtin_kind +
                              "\" (expected stratum, affine, sphere, or constant_support)");
}

int run_manifold_dimcheck(const DimcheckOptions& opt) {
    const auto M = build_dimcheck_manifold(opt);
    const int predicted = spectra::predicted_spectral_dimension(M, opt.seed);
    const auto estimate =
        spectra::estimate_spectral_dimension(M, M.base_point, opt.seed, opt.samples);

    std::cout << "seed: " << opt.seed << "\n";
    const bool ok = estimate.conclusive && estimate.dimension == predicted;
    std::cout << "predicted=" << predicted << " estimated=" << estimate.dimension
              << (estimate.conclusive ? "" : " (inconclusive)") << " "
              << (ok ? "PASS" : "FAIL") << "\n";

    if (!opt.out_path.empty()) {
        std::ostringstream csv;
        csv << "index,singular_value\n";
        for (Eigen::Index i = 0; i < estimate.singular_values.size(); ++i)
            csv << i << "," << estimate.singular_values(i) << "\n";
        write_file(opt.out_path, csv.str());
    }
    return ok ? kExitOk : kExitCheckFailure;
}

int run_verify_run(const std::string& config_path, std::optional<int> max_n,
                   std::optional<std::uint64_t> seed, bool fault_injection, bool timings,
                   const std::string& out_path) {
    spectra::SuiteConfig config;
    if (!config_path.empty())
        config = spectra::suite_config_from_json(read_json_file(config_path));
    if (max_n) config.max_n = *max_n;
    if (seed) config.seed = *seed;
    if (fault_injection) config.fault_injection = true;
    if (timings) config.timings = true;

    const auto report = spectra::run_suite(config);
    const std::string serialized =
        spectra::to_pretty_string(spectra::suite_report_to_json(report));
    std::cout << serialized;
    if (!out_path.empty()) write_file(out_path, serialized);
    return report.all_passed ? kExitOk : kExitCheckFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Permutation strata, spectral lifts, and manifold dimension checks"};
    app.require_subcommand(1);

    // perm ---------------------------------------------------------------
    auto* perm = app.add_subcommand("perm", "Permutation and partition operations");
    perm->require_subcommand(1);

    PermOptions perm_opt;
    int perm_n = 0;

    const auto add_perm_common = [&](CLI::App* cmd, bool two_args) {
        cmd->add_option("first", perm_opt.first, "Permutation in cycle notation")->required();
        if (two_args)
            cmd->add_option("second", perm_opt.second, "Permutation in cycle notation")
                ->required();
        cmd->add_option("--n", perm_n, "Degree (fixed points may then be omitted)");
        cmd->add_option("--format", perm_opt.format, "Output format: pretty or json")
            ->check(CLI::IsMember({"pretty", "json"}));
    };

    auto* perm_order = perm->add_subcommand(
        "order", "Classify the first permutation against the second in the refinement order");
    add_perm_common(perm_order, true);
    auto* perm_meet = perm->add_subcommand("meet", "Finest common coarsening of two partitions");
    add_perm_common(perm_meet, true);
    auto* perm_conj = perm->add_subcommand("conjugate", "tau sigma tau^{-1} (tau first)");
    add_perm_common(perm_conj, true);
    auto* perm_group = perm->add_subcommand(
        "s-succsim", "Block-stabilizer subgroup of everything at or above sigma");
    add_perm_common(perm_group, false);
    perm_group->add_flag("--count", perm_opt.count, "Print only the cardinality");
    auto* perm_split = perm->add_subcommand(
        "fm-split", "Split into fixed-point and support coordinates");
    add_perm_common(perm_split, false);

    // strata ---------------------------------------------------------------
    auto* strata = app.add_subcommand("strata", "Affine stratification checks");
    strata->require_subcommand(1);
    auto* strata_verify = strata->add_subcommand(
        "verify", "Verify the structural properties of the stratification of R^n");
    int strata_n = 3;
    std::uint64_t strata_seed = 0;
    std::string strata_report;
    strata_verify->add_option("--n", strata_n, "Ambient dimension (2..5)")->required();
    strata_verify->add_option("--seed", strata_seed, "Random seed (default 0)");
    strata_verify->add_option("--report", strata_report, "Write a JSON report here");

    // spectral ---------------------------------------------------------------
    auto* spectral = app.add_subcommand("spectral", "Spectral lifting");
    spectral->require_subcommand(1);
    auto* spectral_lift = spectral->add_subcommand(
        "lift", "Lift a vector to a random symmetric matrix with that spectrum");
    std::string lift_x;
    std::uint64_t lift_seed = 0;
    std::string lift_out;
    spectral_lift->add_option("--x", lift_x, "Comma-separated eigenvalues")->required();
    spectral_lift->add_option("--seed", lift_seed, "Random seed (default 0)");
    spectral_lift->add_option("--out", lift_out, "Write the matrix as JSON here");

    // specfn ---------------------------------------------------------------
    auto* specfn = app.add_subcommand("specfn", "Spectral functions");
    specfn->require_subcommand(1);
    auto* gradcheck = specfn->add_subcommand(
        "gradcheck", "Compare the gradient transfer formula with finite differences");
    std::string gradcheck_f = "sumsq";
    int gradcheck_n = 4;
    int gradcheck_trials = 8;
    std::uint64_t gradcheck_seed = 0;
    gradcheck->add_option("--f", gradcheck_f, "Builtin function name")
        ->check(CLI::IsMember(spectra::builtin_function_names()));
    gradcheck->add_option("--n", gradcheck_n, "Matrix size")->required();
    gradcheck->add_option("--trials", gradcheck_trials, "Random matrices to test");
    gradcheck->add_option("--seed", gradcheck_seed, "Random seed (default 0)");

    // manifold ---------------------------------------------------------------
    auto* manifold = app.add_subcommand("manifold", "Locally symmetric manifolds");
    manifold->require_subcommand(1);
    auto* dimcheck = manifold->add_subcommand(
        "dimcheck", "Compare the predicted spectral dimension with a sampled estimate");
    DimcheckOptions dim_opt;
    int dim_n = 0;
    dimcheck->add_option("--builtin", dim_opt.builtin_kind,
                         "Manifold kind: stratum, affine, sphere, constant_support");
    dimcheck->add_option("--spec", dim_opt.spec_path, "JSON descriptor file");
    dimcheck->add_option("--partition", dim_opt.partition,
                         "Partition blocks, e.g. \"[[1,2],[3]]\"");
    dimcheck->add_option("--center", dim_opt.center, "Sphere center (comma-separated)");
    dimcheck->add_option("--radius", dim_opt.radius, "Sphere radius");
    dimcheck->add_option("--base-point", dim_opt.base_point,
                         "Base point (comma-separated, nonincreasing)");
    dimcheck->add_option("--support", dim_opt.support, "Nonzero coordinate count");
    dimcheck->add_option("--n", dim_n, "Ambient dimension");
    dimcheck->add_option("--seed", dim_opt.seed, "Random seed (default 0)");
    dimcheck->add_option("--samples", dim_opt.samples, "Sampled curve directions");
    dimcheck->add_option("--out", dim_opt.out_path, "Write singular values as CSV here");

    // verify ---------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "Cross-module verification suite");
    verify->require_subcommand(1);
    auto* verify_run = verify->add_subcommand("run", "Run the suite and print a JSON report");
    std::string verify_config;
    int verify_max_n = -1;
    std::int64_t verify_seed = -1;
    bool verify_fault = false;
    bool verify_timings = false;
    std::string verify_out;
    verify_run->add_option("--config", verify_config, "Suite configuration JSON file");
    verify_run->add_option("--max-n", verify_max_n, "Largest exhaustive dimension");
    verify_run->add_option("--seed", verify_seed, "Random seed (default 0)");
    verify_run->add_flag("--fault-injection", verify_fault,
                         "Perturb one identity by 1e-3 so its check must fail");
    verify_run->add_flag("--timings", verify_timings, "Include per-check runtimes");
    verify_run->add_option("--out", verify_out, "Also write the report here");

    try {
        app.parse(argc, argv);

        if (perm_order->count("--n") || perm_meet->count("--n") || perm_conj->count("--n") ||
            perm_group->count("--n") || perm_split->count("--n")) {
            perm_opt.n = perm_n;
        }

        if (*perm_order) run_perm_order(perm_opt);
        else if (*perm_meet) run_perm_meet(perm_opt);
        else if (*perm_conj) run_perm_conjugate(perm_opt);
        else if (*perm_group) run_perm_s_succsim(perm_opt);
        else if (*perm_split) run_perm_fm_split(perm_opt);
        else if (*strata_verify)
            return run_strata_verify(strata_n, strata_seed, strata_report);
        else if (*spectral_lift) return run_spectral_lift(lift_x, lift_seed, lift_out);
        else if (*gradcheck)
            return run_specfn_gradcheck(gradcheck_f, gradcheck_n, gradcheck_trials,
                                        gradcheck_seed);
        else if (*dimcheck) {
            if (dimcheck->count("--n")) dim_opt.n = dim_n;
            return run_manifold_dimcheck(dim_opt);
        } else if (*verify_run) {
            return run_verify_run(
                verify_config,
                verify_max_n >= 0 ? std::optional<int>(verify_max_n) : std::nullopt,
                verify_seed >= 0 ? std::optional<std::uint64_t>(
                                       static_cast<std::uint64_t>(verify_seed))
                                 : std::nullopt,
                verify_fault, verify_timings, verify_out);
        }
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const spectra::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const spectra::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailure;
    }
}
