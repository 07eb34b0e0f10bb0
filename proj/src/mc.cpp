#include "wrad/mc.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "wrad/hermite.hpp"
#include "wrad/rng.hpp"

namespace wrad {

namespace {

// Constraint rows at knot level: <v, path> = sum_i v'_i (w_{i+1} - w_i)
// telescopes to coefficients v'_{k-1} - v'_k on the knot values.
Eigen::MatrixXd constraint_rows(const ConditionedLaw& law) {
    const int n = law.grid().n_steps();
    const int m = law.codim();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, n);
    for (int j = 0; j < m; ++j) {
        const CmVector v = refine(law.constraints()[j], law.grid());
        const auto d = v.deriv();
        for (int k = 0; k < n; ++k) {
            const double next = k + 1 < n ? d[k + 1] : 0.0;
            a(j, k) = d[k] - next;
        }
    }
    return a;
}

}  // namespace

DiscretizedLaw discretize_law(const ConditionedLaw& law) {
    const int n = law.grid().n_steps();
    if (n > kMaxDenseGrid) {
        throw DomainError("grid with " + std::to_string(n) +
                          " steps exceeds the dense-conditioning limit " +
                          std::to_string(kMaxDenseGrid));
    }
    Eigen::MatrixXd sigma(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            sigma(i, j) = law.grid().knot(j + 1);  // min{t_i, t_j}, knots are 1-based
            sigma(j, i) = sigma(i, j);
        }
    }
    DiscretizedLaw out{law.grid(), Eigen::VectorXd::Zero(n), std::move(sigma)};
    if (law.codim() == 0) return out;

    const Eigen::MatrixXd a = constraint_rows(law);
    const Eigen::MatrixXd k = out.cov * a.transpose();          // n x m
    const Eigen::MatrixXd g_inv = invert_spd_gram(a * k);       // (A Sigma A^T)^{-1}
    out.mean = k * (g_inv * law.levels());
    out.cov -= k * g_inv * k.transpose();
    out.cov = 0.5 * (out.cov + out.cov.transpose().eval());
    return out;
}

PathSampler::PathSampler(const ConditionedLaw& law) : law_(discretize_law(law)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(law_.cov);
    const Eigen::VectorXd& lambda = eig.eigenvalues();
    const int n = static_cast<int>(lambda.size());
    const double lambda_max = std::max(lambda(n - 1), 0.0);
    // Absolute floor: when every direction is pinned the whole spectrum is
    // rounding noise and a purely relative test would reject it.
    const double clip = 1e-9 * lambda_max + 1e-12;
    if (lambda(0) < -clip) {
        throw IndefiniteCovariance("conditioned covariance has eigenvalue " +
                                   std::to_string(lambda(0)) + " below -1e-9 * " +
                                   std::to_string(lambda_max));
    }
    // Eigenvalues within the clip window are zero-variance constraint
    // directions; keeping them would leak spurious noise onto the pins.
    int rank = 0;
    for (int i = 0; i < n; ++i) {
        if (lambda(i) > clip) ++rank;
    }
    factor_.resize(n, rank);
    int col = 0;
    for (int i = 0; i < n; ++i) {
        if (lambda(i) > clip) {
            factor_.col(col++) = eig.eigenvectors().col(i) * std::sqrt(lambda(i));
        }
    }
}

PathSample PathSampler::sample_one(uint64_t seed, uint64_t path_index) const {
    const int n = static_cast<int>(law_.mean.size());
    Eigen::MatrixXd column(n, 1);
    sample_block(seed, path_index, column);
    std::vector<double> values(column.data(), column.data() + n);
    return PathSample{law_.grid, std::move(values)};
}

void PathSampler::sample_block(uint64_t seed, uint64_t first_path,
                               Eigen::Ref<Eigen::MatrixXd> out) const {
    const int r = rank();
    const auto batch = out.cols();
    Eigen::MatrixXd z(r, batch);
    for (Eigen::Index p = 0; p < batch; ++p) {
        NormalStream stream(seed, first_path + static_cast<uint64_t>(p));
        stream.fill({z.col(p).data(), static_cast<size_t>(r)});
    }
    out.noalias() = factor_ * z;
    out.colwise() += law_.mean;
}

std::vector<PathSample> sample_paths(const ConditionedLaw& law, int64_t n_samples,
                                     uint64_t seed) {
    if (n_samples < 1) throw DomainError("need at least one sample");
    PathSampler sampler(law);
    std::vector<PathSample> out;
    out.reserve(static_cast<size_t>(n_samples));
    for (int64_t p = 0; p < n_samples; ++p) {
        out.push_back(sampler.sample_one(seed, static_cast<uint64_t>(p)));
    }
    return out;
}

// --- Functional evaluation -------------------------------------------------

namespace {

struct CompiledBase {
    enum class Kind { kWiener, kHermite, kExp, kPathEval };
    Kind kind;
    std::vector<double> coeffs;  // step derivative on the law grid
    int degree = 0;
    double u2 = 0.0;
    double z = 0.0;
    int knot = 0;
};

CompiledBase compile_base(const BaseFunctional& f, const Grid& grid) {
    CompiledBase c{};
    const auto coeffs_of = [&grid](const CmVector& v) {
        const CmVector r = refine(v, grid);
        return std::vector<double>(r.deriv().begin(), r.deriv().end());
    };
    if (const auto* w = std::get_if<WienerIntegral>(&f)) {
        c.kind = CompiledBase::Kind::kWiener;
        c.coeffs = coeffs_of(w->f);
    } else if (const auto* hw = std::get_if<HermiteOfWiener>(&f)) {
        c.kind = CompiledBase::Kind::kHermite;
        c.coeffs = coeffs_of(hw->f);
        c.degree = hw->n;
        c.u2 = hw->u2;
    } else if (const auto* e = std::get_if<ExpOfWiener>(&f)) {
        c.kind = CompiledBase::Kind::kExp;
        c.coeffs = coeffs_of(e->f);
        c.z = e->z;
    } else {
        c.kind = CompiledBase::Kind::kPathEval;
        c.knot = grid.knot_index(std::get<PathEval>(f).t);
    }
    return c;
}

double eval_base(const CompiledBase& c, std::span<const double> values,
                 std::span<const double> increments) {
    switch (c.kind) {
        case CompiledBase::Kind::kPathEval:
            return c.knot == 0 ? 0.0 : values[c.knot - 1];
        default:
            break;
    }
    double integral = 0.0;
    for (size_t i = 0; i < increments.size(); ++i) integral += c.coeffs[i] * increments[i];
    switch (c.kind) {
        case CompiledBase::Kind::kWiener:
            return integral;
        case CompiledBase::Kind::kHermite:
            return hermite(c.degree, integral, c.u2);
        case CompiledBase::Kind::kExp:
            return std::exp(c.z * integral);
        default:
            return 0.0;  // unreachable
    }
}

struct CompiledFunctional {
    std::vector<CompiledBase> bases;
    std::function<double(std::span<const double>)> combine;  // null for a single base

    double eval(std::span<const double> values, std::span<const double> increments,
                std::vector<double>& scratch) const {
        if (!combine) return eval_base(bases.front(), values, increments);
        scratch.clear();
        for (const CompiledBase& b : bases) {
            scratch.push_back(eval_base(b, values, increments));
        }
        return combine(scratch);
    }
};

CompiledFunctional compile(const Functional& f, const Grid& grid) {
    CompiledFunctional out;
    if (const auto* composed = std::get_if<Composed>(&f)) {
        if (!composed->combine) {
            throw UnknownFunctional("composed functional '" + composed->name +
                                    "' has no combiner");
        }
        if (composed->inputs.empty()) {
            throw UnknownFunctional("composed functional '" + composed->name +
                                    "' has no inputs");
        }
        for (const BaseFunctional& b : composed->inputs) {
            out.bases.push_back(compile_base(b, grid));
        }
        out.combine = composed->combine;
        return out;
    }
    std::visit(
        [&](const auto& base) {
            if constexpr (!std::is_same_v<std::decay_t<decltype(base)>, Composed>) {
                out.bases.push_back(compile_base(BaseFunctional(base), grid));
            }
        },
        f);
    return out;
}

int resolve_threads(int threads, int64_t n_chunks) {
    if (threads <= 0) {
        if (const char* env = std::getenv("WIENER_RADON_THREADS")) {
            threads = std::atoi(env);
        }
    }
    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
    }
    const int64_t capped = std::min<int64_t>(threads, n_chunks);
    return static_cast<int>(std::clamp<int64_t>(capped, 1, 16));
}

}  // namespace

std::string functional_name(const Functional& f) {
    if (std::holds_alternative<WienerIntegral>(f)) return "wiener_integral";
    if (const auto* hw = std::get_if<HermiteOfWiener>(&f)) {
        return "hermite_of_wiener(n=" + std::to_string(hw->n) + ")";
    }
    if (std::holds_alternative<ExpOfWiener>(f)) return "exp_of_wiener";
    if (const auto* pe = std::get_if<PathEval>(&f)) {
        return "path_eval(t=" + std::to_string(pe->t) + ")";
    }
    const auto& composed = std::get<Composed>(f);
    return composed.name.empty() ? "composed" : composed.name;
}

std::vector<McEstimate> estimate_many(const ConditionedLaw& law,
                                      std::span<const Functional> functionals,
                                      int64_t n_samples, uint64_t seed, int threads) {
    if (n_samples < 1) throw DomainError("need at least one sample");
    if (functionals.empty()) return {};

    PathSampler sampler(law);
    const int n = law.grid().n_steps();
    const size_t n_fn = functionals.size();
    std::vector<CompiledFunctional> compiled;
    compiled.reserve(n_fn);
    for (const Functional& f : functionals) compiled.push_back(compile(f, law.grid()));

    const int64_t n_chunks = (n_samples + kMcChunkSize - 1) / kMcChunkSize;
    // partials[chunk * n_fn + fn] = (sum, sum of squares) for that chunk.
    std::vector<std::pair<double, double>> partials(static_cast<size_t>(n_chunks) * n_fn);

    const auto run_chunk = [&](int64_t chunk) {
        const int64_t first = chunk * kMcChunkSize;
        const int64_t batch = std::min(kMcChunkSize, n_samples - first);
        Eigen::MatrixXd block(n, batch);
        sampler.sample_block(seed, static_cast<uint64_t>(first), block);

        std::vector<KahanSum> sums(n_fn), squares(n_fn);
        std::vector<double> increments(n);
        std::vector<double> scratch;
        for (int64_t p = 0; p < batch; ++p) {
            const double* col = block.col(p).data();
            increments[0] = col[0];
            for (int i = 1; i < n; ++i) increments[i] = col[i] - col[i - 1];
            const std::span<const double> values(col, static_cast<size_t>(n));
            for (size_t fn = 0; fn < n_fn; ++fn) {
                const double v = compiled[fn].eval(values, increments, scratch);
                sums[fn].add(v);
                squares[fn].add(v * v);
            }
        }
        for (size_t fn = 0; fn < n_fn; ++fn) {
            partials[static_cast<size_t>(chunk) * n_fn + fn] = {sums[fn].value(),
                                                                squares[fn].value()};
        }
    };

    const int n_threads = resolve_threads(threads, n_chunks);
    if (n_threads == 1) {
        for (int64_t chunk = 0; chunk < n_chunks; ++chunk) run_chunk(chunk);
    } else {
        std::atomic<int64_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    const int64_t chunk = next.fetch_add(1);
                    if (chunk >= n_chunks) return;
                    run_chunk(chunk);
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }

    // Chunk partials reduce in index order, so the result is independent of
    // the thread schedule.
    std::vector<McEstimate> out(n_fn);
    for (size_t fn = 0; fn < n_fn; ++fn) {
        KahanSum total, total_sq;
        for (int64_t chunk = 0; chunk < n_chunks; ++chunk) {
            const auto& [s, ss] = partials[static_cast<size_t>(chunk) * n_fn + fn];
            total.add(s);
            total_sq.add(ss);
        }
        const double count = static_cast<double>(n_samples);
        const double mean = total.value() / count;
        double variance = 0.0;
        if (n_samples > 1) {
            variance = (total_sq.value() - count * mean * mean) / (count - 1.0);
            variance = std::max(variance, 0.0);
        }
        out[fn] = McEstimate{mean, std::sqrt(variance / count), n_samples, seed};
    }
    return out;
}

McEstimate estimate(const ConditionedLaw& law, const Functional& functional,
                    int64_t n_samples, uint64_t seed, int threads) {
    const Functional fns[] = {functional};
    return estimate_many(law, fns, n_samples, seed, threads)[0];
}

double z_score_of(double estimate_value, double closed_form_value, double std_error) {
    const double scale =
        std::max({1.0, std::abs(estimate_value), std::abs(closed_form_value)});
    const double diff = estimate_value - closed_form_value;
    if (std_error > 1e-12 * scale) return diff / std_error;
    return std::abs(diff) <= 1e-9 ? 0.0 : diff / 1e-9;
}

CompareReport compare(const ConditionedLaw& law, const Functional& functional,
                      double closed_form_value, int64_t n_samples, uint64_t seed,
                      std::string label, int threads) {
    const McEstimate mc = estimate(law, functional, n_samples, seed, threads);
    CompareReport report;
    report.check = label.empty() ? functional_name(functional) : std::move(label);
    report.closed_form = closed_form_value;
    report.estimate = mc.mean;
    report.std_error = mc.std_error;
    report.z_score = z_score_of(mc.mean, closed_form_value, mc.std_error);
    report.pass = std::abs(report.z_score) <= 4.0;
    return report;
}

}  // namespace wrad
