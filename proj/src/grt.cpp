#include "wrad/grt.hpp"

#include <cmath>
#include <string>

namespace wrad {

double clamp_variance(double variance) {
    if (variance >= 0.0) return variance;
    if (variance >= -1e-12) return 0.0;
    throw NumericalInconsistency("variance came out " + std::to_string(variance));
}

double grt_linear(const ConditionedLaw& law, const CmVector& h) {
    return inner_product(law.closest_point(), h);
}

GaussianLaw1D conditioned_law(const ConditionedLaw& law, const CmVector& h) {
    const CmVector p = project(law, h);
    return GaussianLaw1D{grt_linear(law, h), clamp_variance(norm_squared(p))};
}

double conditioned_cov(const ConditionedLaw& law, const CmVector& h1, const CmVector& h2) {
    return inner_product(project(law, h1), project(law, h2));
}

std::complex<double> exponential_moment(const ConditionedLaw& law, const CmVector& h,
                                        std::complex<double> z) {
    const GaussianLaw1D g = conditioned_law(law, h);
    return std::exp(z * g.mean + 0.5 * z * z * g.variance);
}

namespace {

// Exact integral of the step function over [knot(a), knot(b)].
double integrate_cells(const CmVector& f, int a, int b) {
    double sum = 0.0;
    for (int i = a; i < b; ++i) sum += f.deriv()[i];
    return sum * f.grid().dt();
}

}  // namespace

double multi_bridge_mean(std::span<const double> times, std::span<const double> levels,
                         const CmVector& f) {
    if (times.empty() || times.size() != levels.size()) {
        throw DomainError("need matching nonempty time/level lists");
    }
    const Grid& g = f.grid();
    double mean = 0.0;
    double prev_t = 0.0, prev_c = 0.0;
    int prev_idx = 0;
    for (size_t k = 0; k < times.size(); ++k) {
        if (times[k] <= prev_t) {
            throw TimesNotIncreasing("pin times must satisfy 0 < T_1 < ... < T_m");
        }
        const int idx = g.knot_index(times[k]);
        mean += (levels[k] - prev_c) / (times[k] - prev_t) * integrate_cells(f, prev_idx, idx);
        prev_t = times[k];
        prev_c = levels[k];
        prev_idx = idx;
    }
    return mean;
}

}  // namespace wrad
