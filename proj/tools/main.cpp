#include <CLI11.hpp>
#include <cstdint>
#include <exception>
#include <iostream>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "wrad/fock.hpp"
#include "wrad/hermite.hpp"
#include "wrad/json_io.hpp"
#include "wrad/report.hpp"
#include "wrad/rng.hpp"
#include "wrad/verify.hpp"

namespace {

using namespace wrad;

struct CommonOptions {
    std::string output;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOptions& common) {
    cmd->add_option("--output", common.output, "Write the report here instead of stdout");
    cmd->add_option("--format", common.format, "Report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
}

void emit_record(const std::vector<std::pair<std::string, double>>& fields,
                 const CommonOptions& common) {
    write_output(render_record(fields, parse_report_format(common.format)), common.output);
}

int run_bridge_stats(double T, double c, double t, int grid_steps,
                     const CommonOptions& common) {
    const Grid grid(grid_steps);
    const ConditionedLaw law = bridge_law(T, c, grid);
    const GaussianLaw1D g = conditioned_law(law, kernel_vector(t, grid));
    emit_record({{"mean", g.mean}, {"variance", g.variance}}, common);
    return 0;
}

int run_grt_linear(const std::string& input, const CommonOptions& common) {
    const nlohmann::json spec = load_json_file(input);
    if (!spec.contains("subspace")) throw SchemaError("grt-linear input: missing 'subspace'");
    if (!spec.contains("h")) throw SchemaError("grt-linear input: missing 'h'");
    const AffineSubspace sub = subspace_from_json(spec.at("subspace"));
    const ConditionedLaw law = closest_point(sub);
    const CmVector h = vector_spec_from_json(spec.at("h"), law.grid());
    const GaussianLaw1D g = conditioned_law(law, h);
    emit_record({{"mean", g.mean}, {"variance", g.variance}}, common);
    return 0;
}

int run_multi_bridge(const std::string& input, const CommonOptions& common) {
    const nlohmann::json spec = load_json_file(input);
    if (!spec.contains("grid")) throw SchemaError("multi-bridge input: missing 'grid'");
    if (!spec.contains("times") || !spec.contains("levels")) {
        throw SchemaError("multi-bridge input: missing 'times'/'levels'");
    }
    const Grid grid(spec.at("grid").get<int>());
    const std::vector<double> times = spec.at("times").get<std::vector<double>>();
    const std::vector<double> levels = spec.at("levels").get<std::vector<double>>();
    if (!spec.contains("f")) throw SchemaError("multi-bridge input: missing 'f'");
    const CmVector f = vector_spec_from_json(spec.at("f"), grid);

    const double direct = multi_bridge_mean(times, levels, f);
    const ConditionedLaw law = multi_bridge_law(times, levels, grid);
    const GaussianLaw1D g = conditioned_law(law, f);
    emit_record({{"mean", direct}, {"mean_crosscheck", g.mean}, {"variance", g.variance}},
                common);
    return 0;
}

int run_ito_grt(const std::string& input, int grid_steps, const CommonOptions& common) {
    const nlohmann::json spec = load_json_file(input);
    const ItoGrtSpec ito = ito_spec_from_json(spec, Grid(grid_steps));
    double value;
    if (ito.power_form) {
        value = grt_power_ito(ito.factors.front(), ito.degree, ito.T, ito.c);
    } else {
        value = grt_symmetric_ito(ProductFunctional(ito.factors), ito.T, ito.c);
    }
    emit_record({{"value", value}}, common);
    return 0;
}

int run_fock_check(const std::string& input, int64_t samples, uint64_t seed,
                   const CommonOptions& common) {
    const nlohmann::json spec = load_json_file(input);
    if (!spec.contains("subspace")) throw SchemaError("fock-check input: missing 'subspace'");
    if (!spec.contains("vectors") || !spec.at("vectors").is_array() ||
        spec.at("vectors").empty()) {
        throw SchemaError("fock-check input: 'vectors' must be a nonempty array");
    }
    const ConditionedLaw law = closest_point(subspace_from_json(spec.at("subspace")));
    const int max_order =
        spec.contains("max_order") ? spec.at("max_order").get<int>() : kMaxFockOrder;

    // User vectors are projected onto the law's centered subspace.
    std::vector<CmVector> vectors;
    for (const nlohmann::json& v : spec.at("vectors")) {
        vectors.push_back(project(law, vector_spec_from_json(v, law.grid())));
    }

    std::vector<FockCheck> checks;
    const GramCertificate cert = isometry_gram_certificate(law, vectors, max_order);
    FockCheck cert_check;
    cert_check.check = "gram_certificate_max_err";
    cert_check.computed = cert.max_abs_err;
    cert_check.reference = 0.0;
    cert_check.abs_err = cert.max_abs_err;
    cert_check.pass = cert.max_abs_err <= 1e-8;
    checks.push_back(cert_check);

    for (size_t i = 0; i + 1 < vectors.size(); i += 2) {
        for (FockCheck& c : verify_ul_isometry(law, vectors[i], vectors[i + 1], samples,
                                               mix_seed(seed, 100 + i))) {
            checks.push_back(std::move(c));
        }
    }
    for (size_t i = 0; i < vectors.size(); ++i) {
        for (FockCheck& c :
             verify_ul_linear_term(law, vectors[i], samples, mix_seed(seed, 200 + i))) {
            checks.push_back(std::move(c));
        }
    }
    write_output(render(checks, parse_report_format(common.format)), common.output);
    for (const FockCheck& c : checks) {
        if (!c.pass) return 1;
    }
    return 0;
}

int run_verify(const std::string& suite, const VerifyOptions& options,
               const CommonOptions& common) {
    const std::vector<CompareReport> rows = run_verify_suite(suite, options);
    write_output(render(rows, parse_report_format(common.format)), common.output);
    return all_pass(rows) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Closed-form conditioned-Wiener computations with a Monte Carlo oracle"};
    app.require_subcommand(1);

    CommonOptions common;

    auto* bridge_stats = app.add_subcommand(
        "bridge-stats", "Mean and variance of the path value at t under a pinned path law");
    double bs_T = 0.5, bs_c = 0.0, bs_t = 0.25;
    int bs_grid = 256;
    bridge_stats->add_option("--T", bs_T, "Pin time")->required();
    bridge_stats->add_option("--c", bs_c, "Pin level")->required();
    bridge_stats->add_option("--t", bs_t, "Evaluation time (a knot)")->required();
    bridge_stats->add_option("--grid", bs_grid, "Grid steps (default 256)");
    add_common(bridge_stats, common);

    auto* grt_linear_cmd = app.add_subcommand(
        "grt-linear", "Conditioned law of a linear functional from a JSON subspace spec");
    std::string gl_input;
    grt_linear_cmd->add_option("--input", gl_input, "JSON spec with 'subspace' and 'h'")
        ->required();
    add_common(grt_linear_cmd, common);

    auto* multi_bridge_cmd = app.add_subcommand(
        "multi-bridge", "Multi-pin mean by direct integration, cross-checked");
    std::string mb_input;
    multi_bridge_cmd->add_option("--input", mb_input, "JSON spec")->required();
    add_common(multi_bridge_cmd, common);

    auto* ito_cmd = app.add_subcommand(
        "ito-grt", "Radon transform of a multiple Ito integral at a pinned subspace");
    std::string ito_input;
    int ito_grid = 256;
    ito_cmd->add_option("--input", ito_input, "JSON spec")->required();
    ito_cmd->add_option("--grid", ito_grid, "Default grid for kernel factors");
    add_common(ito_cmd, common);

    auto* fock_cmd = app.add_subcommand(
        "fock-check", "Fock-side isometry checks for a conditioned law");
    std::string fock_input;
    int64_t fock_samples = 100000;
    uint64_t fock_seed = 0;
    fock_cmd->add_option("--input", fock_input, "JSON spec")->required();
    fock_cmd->add_option("--samples", fock_samples, "Monte Carlo sample count");
    fock_cmd->add_option("--seed", fock_seed, "Seed (default 0)");
    add_common(fock_cmd, common);

    auto* verify_cmd = app.add_subcommand(
        "verify", "Run a closed-form vs Monte Carlo comparison suite");
    std::string suite = "all";
    VerifyOptions verify_options;
    verify_cmd->add_option("--suite", suite, "bridge, multibridge, ito, fock, or all");
    verify_cmd->add_option("--grid", verify_options.grid, "Grid steps (default 256)");
    verify_cmd->add_option("--samples", verify_options.samples,
                           "Samples per comparison (default 100000)");
    verify_cmd->add_option("--seed", verify_options.seed, "Seed (default 0)");
    add_common(verify_cmd, common);

    CLI11_PARSE(app, argc, argv);

    try {
        if (bridge_stats->parsed()) {
            return run_bridge_stats(bs_T, bs_c, bs_t, bs_grid, common);
        }
        if (grt_linear_cmd->parsed()) return run_grt_linear(gl_input, common);
        if (multi_bridge_cmd->parsed()) return run_multi_bridge(mb_input, common);
        if (ito_cmd->parsed()) return run_ito_grt(ito_input, ito_grid, common);
        if (fock_cmd->parsed()) {
            return run_fock_check(fock_input, fock_samples, fock_seed, common);
        }
        if (verify_cmd->parsed()) return run_verify(suite, verify_options, common);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
