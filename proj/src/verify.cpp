#include "wrad/verify.hpp"

#include <cmath>

#include "wrad/fock.hpp"
#include "wrad/hermite.hpp"
#include "wrad/report.hpp"
#include "wrad/rng.hpp"

namespace wrad {

namespace {

CompareReport exact_row(std::string label, double computed, double reference,
                        double tol = 1e-9) {
    CompareReport row;
    row.check = std::move(label);
    row.closed_form = reference;
    row.estimate = computed;
    row.std_error = 0.0;
    const double diff = computed - reference;
    row.z_score = std::abs(diff) <= tol ? 0.0 : diff / tol;
    row.pass = std::abs(diff) <= tol;
    return row;
}

struct LabeledFunctional {
    std::string label;
    Functional functional;
    double closed_form;
};

// One sampling pass for a batch of rows against the same law.
void append_mc_rows(std::vector<CompareReport>& rows, const ConditionedLaw& law,
                    const std::vector<LabeledFunctional>& batch, const VerifyOptions& o,
                    uint64_t salt) {
    std::vector<Functional> functionals;
    functionals.reserve(batch.size());
    for (const LabeledFunctional& lf : batch) functionals.push_back(lf.functional);
    const std::vector<McEstimate> estimates =
        estimate_many(law, functionals, o.samples, mix_seed(o.seed, salt), o.threads);
    for (size_t i = 0; i < batch.size(); ++i) {
        CompareReport row;
        row.check = batch[i].label;
        row.closed_form = batch[i].closed_form;
        row.estimate = estimates[i].mean;
        row.std_error = estimates[i].std_error;
        row.z_score = z_score_of(row.estimate, row.closed_form, row.std_error);
        row.pass = std::abs(row.z_score) <= 4.0;
        rows.push_back(std::move(row));
    }
}

void require_grid_multiple(const VerifyOptions& o, int multiple, const char* suite) {
    if (o.grid % multiple != 0) {
        throw DomainError(std::string(suite) + " suite needs --grid divisible by " +
                          std::to_string(multiple) + ", got " + std::to_string(o.grid));
    }
}

// Fixed test vectors, deterministic and independent of the user seed.
CmVector sawtooth_vector(Grid grid) {
    std::vector<double> deriv(grid.n_steps());
    for (int i = 0; i < grid.n_steps(); ++i) {
        deriv[i] = (i % 2 == 0 ? 1.0 : -0.5) + 0.25 * std::sin(2.0 + 3.0 * i);
    }
    return CmVector(grid, std::move(deriv));
}

CmVector ramp_vector(Grid grid) {
    std::vector<double> deriv(grid.n_steps());
    for (int i = 0; i < grid.n_steps(); ++i) {
        deriv[i] = 0.5 + static_cast<double>(i) / grid.n_steps();
    }
    return CmVector(grid, std::move(deriv));
}

Functional centered_product(const ConditionedLaw& law, double s, double t) {
    const Grid grid = law.grid();
    const double mean_s = grt_linear(law, kernel_vector(s, grid));
    const double mean_t = grt_linear(law, kernel_vector(t, grid));
    Composed c;
    c.inputs = {PathEval{s}, PathEval{t}};
    c.combine = [mean_s, mean_t](std::span<const double> x) {
        return (x[0] - mean_s) * (x[1] - mean_t);
    };
    c.name = "centered_product";
    return c;
}

std::string fmt(double v) { return format_double(v); }

std::vector<CompareReport> bridge_suite(const VerifyOptions& o) {
    require_grid_multiple(o, 8, "bridge");
    const Grid grid(o.grid);
    std::vector<CompareReport> rows;

    {  // pinned at T = 1/2, c = 1
        const double T = 0.5, c = 1.0;
        const ConditionedLaw law = bridge_law(T, c, grid);
        std::vector<LabeledFunctional> batch;
        for (double t : {0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875}) {
            batch.push_back({"bridge/path_eval(" + fmt(t) + ")", PathEval{t},
                             c / T * std::min(T, t)});
        }
        const CmVector f1 = sawtooth_vector(grid);
        const CmVector f2 = ramp_vector(grid);
        batch.push_back({"bridge/wiener_integral(sawtooth)", WienerIntegral{f1},
                         grt_linear(law, f1)});
        batch.push_back({"bridge/wiener_integral(ramp)", WienerIntegral{f2},
                         grt_linear(law, f2)});
        batch.push_back(
            {"bridge/exp_of_wiener(sawtooth)", ExpOfWiener{1.0, f1},
             exponential_moment(law, f1, std::complex<double>(1.0, 0.0)).real()});
        batch.push_back({"bridge/cov(0.25,0.75)", centered_product(law, 0.25, 0.75),
                         conditioned_cov(law, kernel_vector(0.25, grid),
                                         kernel_vector(0.75, grid))});
        batch.push_back({"bridge/cov(0.125,0.625)", centered_product(law, 0.125, 0.625),
                         conditioned_cov(law, kernel_vector(0.125, grid),
                                         kernel_vector(0.625, grid))});
        batch.push_back({"bridge/pinned_functional", WienerIntegral{kernel_vector(T, grid)},
                         c});
        append_mc_rows(rows, law, batch, o, 11);
    }

    {  // pinned at T = 1/4, c = -1
        const double T = 0.25, c = -1.0;
        const ConditionedLaw law = bridge_law(T, c, grid);
        std::vector<LabeledFunctional> batch;
        for (double t : {0.125, 0.25, 0.5, 0.75}) {
            batch.push_back({"bridge_neg/path_eval(" + fmt(t) + ")", PathEval{t},
                             c / T * std::min(T, t)});
        }
        const CmVector f1 = sawtooth_vector(grid);
        batch.push_back({"bridge_neg/wiener_integral(sawtooth)", WienerIntegral{f1},
                         grt_linear(law, f1)});
        batch.push_back(
            {"bridge_neg/exp_of_wiener(sawtooth)", ExpOfWiener{1.0, f1},
             exponential_moment(law, f1, std::complex<double>(1.0, 0.0)).real()});
        append_mc_rows(rows, law, batch, o, 13);
    }

    {  // no constraints: plain Wiener measure
        const ConditionedLaw law = ConditionedLaw::wiener(grid);
        std::vector<LabeledFunctional> batch;
        batch.push_back({"wiener/path_eval(0.5)", PathEval{0.5}, 0.0});
        batch.push_back({"wiener/cov(0.25,0.75)", centered_product(law, 0.25, 0.75), 0.25});
        append_mc_rows(rows, law, batch, o, 17);
    }
    return rows;
}

std::vector<CompareReport> multibridge_suite(const VerifyOptions& o) {
    require_grid_multiple(o, 8, "multibridge");
    const Grid grid(o.grid);
    std::vector<CompareReport> rows;

    {
        const std::vector<double> times = {0.25, 0.5, 0.75};
        const std::vector<double> levels = {1.0, -1.0, 0.0};
        const ConditionedLaw law = multi_bridge_law(times, levels, grid);
        std::vector<LabeledFunctional> batch;
        for (size_t k = 0; k < times.size(); ++k) {
            batch.push_back({"multibridge/pin(" + fmt(times[k]) + ")", PathEval{times[k]},
                             levels[k]});
        }
        for (double t : {0.125, 0.375, 0.625, 0.875}) {
            batch.push_back({"multibridge/path_eval(" + fmt(t) + ")", PathEval{t},
                             grt_linear(law, kernel_vector(t, grid))});
        }
        for (size_t j = 0; j < times.size(); ++j) {
            const CmVector f = kernel_vector(times[j], grid);
            batch.push_back({"multibridge/increment_functional(" + fmt(times[j]) + ")",
                             WienerIntegral{f}, multi_bridge_mean(times, levels, f)});
        }
        batch.push_back({"multibridge/cov(0.125,0.375)",
                         centered_product(law, 0.125, 0.375),
                         conditioned_cov(law, kernel_vector(0.125, grid),
                                         kernel_vector(0.375, grid))});
        batch.push_back({"multibridge/cov(0.375,0.625)",
                         centered_product(law, 0.375, 0.625),
                         conditioned_cov(law, kernel_vector(0.375, grid),
                                         kernel_vector(0.625, grid))});
        const CmVector f1 = sawtooth_vector(grid);
        batch.push_back(
            {"multibridge/exp_of_wiener(sawtooth)", ExpOfWiener{1.0, f1},
             exponential_moment(law, f1, std::complex<double>(1.0, 0.0)).real()});
        append_mc_rows(rows, law, batch, o, 19);

        // Redundant closed-form routes: direct piecewise integration vs the
        // Gram-based transform.
        for (const CmVector& f : {sawtooth_vector(grid), ramp_vector(grid)}) {
            rows.push_back(exact_row("multibridge/direct_vs_projection",
                                     multi_bridge_mean(times, levels, f),
                                     grt_linear(law, f)));
        }
    }

    {
        const std::vector<double> times = {0.5, 1.0};
        const std::vector<double> levels = {2.0, 1.0};
        const ConditionedLaw law = multi_bridge_law(times, levels, grid);
        std::vector<LabeledFunctional> batch;
        for (double t : {0.25, 0.75}) {
            batch.push_back({"multibridge2/path_eval(" + fmt(t) + ")", PathEval{t},
                             grt_linear(law, kernel_vector(t, grid))});
        }
        const CmVector f = kernel_vector(0.5, grid);
        batch.push_back({"multibridge2/increment_functional(0.5)", WienerIntegral{f},
                         multi_bridge_mean(times, levels, f)});
        const CmVector f1 = ramp_vector(grid);
        batch.push_back(
            {"multibridge2/exp_of_wiener(ramp)", ExpOfWiener{1.0, f1},
             exponential_moment(law, f1, std::complex<double>(1.0, 0.0)).real()});
        append_mc_rows(rows, law, batch, o, 23);
    }
    return rows;
}

std::vector<CompareReport> ito_suite(const VerifyOptions& o) {
    require_grid_multiple(o, 2, "ito");
    const Grid grid(o.grid);
    std::vector<CompareReport> rows;
    const CmVector full = kernel_vector(1.0, grid);
    const CmVector half = kernel_vector(0.5, grid);

    uint64_t salt = 29;
    for (double T : {0.5, 1.0}) {
        for (double c : {0.0, 1.0}) {
            const ConditionedLaw law = bridge_law(T, c, grid);
            std::vector<LabeledFunctional> batch;
            for (const auto& [name, f] :
                 {std::pair<const char*, const CmVector&>{"full", full},
                  std::pair<const char*, const CmVector&>{"half", half}}) {
                const double u2 = norm_squared(f);
                for (int n = 1; n <= 4; ++n) {
                    batch.push_back({"ito/J" + std::to_string(n) + "(" + name +
                                         ")@T=" + fmt(T) + ",c=" + fmt(c),
                                     HermiteOfWiener{n, f, u2}, grt_power_ito(f, n, T, c)});
                }
            }
            // Mixed two-factor product via the polarized identity
            // I(f)I(g) - <f,g> for the degree-2 integral.
            const double cross = inner_product(half, full);
            Composed mixed;
            mixed.inputs = {WienerIntegral{half}, WienerIntegral{full}};
            mixed.combine = [cross](std::span<const double> x) {
                return x[0] * x[1] - cross;
            };
            mixed.name = "mixed_J2";
            const ProductFunctional pf({half, full});
            batch.push_back({"ito/J2(half,full)@T=" + fmt(T) + ",c=" + fmt(c), mixed,
                             grt_symmetric_ito(pf, T, c)});
            append_mc_rows(rows, law, batch, o, salt);
            salt += 2;
        }
    }
    return rows;
}

std::vector<CompareReport> fock_suite(const VerifyOptions& o) {
    require_grid_multiple(o, 8, "fock");
    const Grid grid(o.grid);
    const ConditionedLaw law = bridge_law(0.5, 1.0, grid);
    const CmVector v = project(law, kernel_vector(0.25, grid));
    const CmVector w = project(law, kernel_vector(0.875, grid) -
                                        0.5 * kernel_vector(0.125, grid));

    std::vector<FockCheck> checks;
    for (const FockCheck& c :
         verify_ul_isometry(law, v, w, o.samples, mix_seed(o.seed, 41))) {
        checks.push_back(c);
    }
    for (const FockCheck& c :
         verify_ul_linear_term(law, v, o.samples, mix_seed(o.seed, 43))) {
        checks.push_back(c);
    }
    for (const FockCheck& c :
         verify_ul_linear_term(law, w, o.samples, mix_seed(o.seed, 47))) {
        checks.push_back(c);
    }

    std::vector<CompareReport> rows;
    for (const FockCheck& c : checks) {
        CompareReport row;
        row.check = "fock/" + c.check;
        row.closed_form = c.reference;
        row.estimate = c.computed;
        row.std_error = c.std_error;
        if (c.is_mc) {
            row.z_score = c.z_score;
        } else {
            const double diff = c.computed - c.reference;
            row.z_score = std::abs(diff) <= 1e-9 ? 0.0 : diff / 1e-9;
        }
        row.pass = c.pass;
        rows.push_back(std::move(row));
    }

    const CmVector v3 = project(law, sawtooth_vector(grid));
    const CmVector vectors[] = {v, w, 0.5 * v3};
    const GramCertificate cert = isometry_gram_certificate(law, vectors, kMaxFockOrder);
    CompareReport cert_row;
    cert_row.check = "fock/gram_certificate_max_err";
    cert_row.closed_form = 0.0;
    cert_row.estimate = cert.max_abs_err;
    cert_row.std_error = 0.0;
    cert_row.z_score = cert.max_abs_err <= 1e-8 ? 0.0 : cert.max_abs_err / 1e-8;
    cert_row.pass = cert.max_abs_err <= 1e-8;
    rows.push_back(std::move(cert_row));
    return rows;
}

}  // namespace

bool all_pass(const std::vector<CompareReport>& rows) {
    for (const CompareReport& r : rows) {
        if (!r.pass) return false;
    }
    return true;
}

std::vector<CompareReport> run_verify_suite(const std::string& suite,
                                            const VerifyOptions& options) {
    if (options.samples < 1) throw DomainError("need at least one sample");
    if (suite == "bridge") return bridge_suite(options);
    if (suite == "multibridge") return multibridge_suite(options);
    if (suite == "ito") return ito_suite(options);
    if (suite == "fock") return fock_suite(options);
    if (suite == "all") {
        std::vector<CompareReport> rows = bridge_suite(options);
        for (auto&& r : multibridge_suite(options)) rows.push_back(std::move(r));
        for (auto&& r : ito_suite(options)) rows.push_back(std::move(r));
        for (auto&& r : fock_suite(options)) rows.push_back(std::move(r));
        return rows;
    }
    throw DomainError("unknown suite '" + suite +
                      "' (expected bridge, multibridge, ito, fock, or all)");
}

}  // namespace wrad
