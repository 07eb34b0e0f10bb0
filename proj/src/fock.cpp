#include "wrad/fock.hpp"

#include <cmath>

#include "wrad/grt.hpp"
#include "wrad/mc.hpp"

namespace wrad {

struct FockElement::SpaceData {
    std::vector<CmVector> base;
    int max_order;
    // multi_indices[n] lists every occupation vector of total order n over
    // dim() modes, in a fixed lexicographic order.
    std::vector<std::vector<std::vector<int>>> multi_indices;
    std::vector<std::vector<double>> index_factorial;  // alpha! per index
};

namespace {

void enumerate(int modes_left, int order_left, std::vector<int>& current,
               std::vector<std::vector<int>>& out) {
    if (modes_left == 1) {
        current.push_back(order_left);
        out.push_back(current);
        current.pop_back();
        return;
    }
    for (int k = order_left; k >= 0; --k) {
        current.push_back(k);
        enumerate(modes_left - 1, order_left - k, current, out);
        current.pop_back();
    }
}

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

}  // namespace

FockSpace::FockSpace(std::vector<CmVector> base, int max_order) {
    const int d = static_cast<int>(base.size());
    if (d < 1 || d > kMaxFockModes) {
        throw DomainError("Fock base must have 1.." + std::to_string(kMaxFockModes) +
                          " modes, got " + std::to_string(d));
    }
    if (max_order < 0 || max_order > kMaxFockOrder) {
        throw DomainError("Fock truncation order must be 0.." +
                          std::to_string(kMaxFockOrder));
    }
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j <= i; ++j) {
            const double ip = inner_product(base[j], base[i]);
            const double expected = i == j ? 1.0 : 0.0;
            if (std::abs(ip - expected) > 1e-10) {
                throw DomainError("Fock base is not orthonormal: <b" + std::to_string(j) +
                                  ", b" + std::to_string(i) + "> = " + std::to_string(ip));
            }
        }
    }
    auto data = std::make_shared<FockElement::SpaceData>();
    data->base = std::move(base);
    data->max_order = max_order;
    data->multi_indices.resize(max_order + 1);
    data->index_factorial.resize(max_order + 1);
    std::vector<int> scratch;
    for (int n = 0; n <= max_order; ++n) {
        enumerate(d, n, scratch, data->multi_indices[n]);
        data->index_factorial[n].reserve(data->multi_indices[n].size());
        for (const auto& alpha : data->multi_indices[n]) {
            double f = 1.0;
            for (int a : alpha) f *= factorial(a);
            data->index_factorial[n].push_back(f);
        }
    }
    data_ = std::move(data);
}

int FockSpace::dim() const { return static_cast<int>(data_->base.size()); }
int FockSpace::max_order() const { return data_->max_order; }
std::span<const CmVector> FockSpace::base() const { return data_->base; }

Eigen::VectorXd FockSpace::coords_of(const CmVector& h) const {
    Eigen::VectorXd coords(dim());
    for (int i = 0; i < dim(); ++i) coords(i) = inner_product(data_->base[i], h);
    return coords;
}

FockElement FockSpace::vacuum() const {
    FockElement e;
    e.space_ = data_;
    e.coeffs_.resize(max_order() + 1);
    for (int n = 0; n <= max_order(); ++n) {
        e.coeffs_[n].assign(data_->multi_indices[n].size(), 0.0);
    }
    e.coeffs_[0][0] = 1.0;
    return e;
}

FockElement FockSpace::exp_vector(const Eigen::VectorXd& coords) const {
    if (coords.size() != dim()) throw DomainError("coordinate/mode count mismatch");
    FockElement e = vacuum();
    std::vector<std::vector<double>> coeffs = std::move(e.coeffs_);
    for (int n = 1; n <= max_order(); ++n) {
        const auto& indices = data_->multi_indices[n];
        for (size_t idx = 0; idx < indices.size(); ++idx) {
            // Exp(v) order-n coefficient of alpha: a^alpha / alpha!.
            double value = 1.0;
            for (int i = 0; i < dim(); ++i) {
                for (int rep = 0; rep < indices[idx][i]; ++rep) value *= coords(i);
            }
            coeffs[n][idx] = value / data_->index_factorial[n][idx];
        }
    }
    e.coeffs_ = std::move(coeffs);
    return e;
}

FockElement FockSpace::power_tensor(const Eigen::VectorXd& coords, int order) const {
    if (coords.size() != dim()) throw DomainError("coordinate/mode count mismatch");
    if (order < 0 || order > max_order()) {
        throw DomainError("tensor order outside truncation");
    }
    FockElement e = vacuum();
    e.coeffs_[0][0] = order == 0 ? 1.0 : 0.0;
    if (order > 0) {
        const auto& indices = data_->multi_indices[order];
        const double n_fact = factorial(order);
        for (size_t idx = 0; idx < indices.size(); ++idx) {
            // v^{(x)n} coefficient of alpha: (n!/alpha!) a^alpha.
            double value = 1.0;
            for (int i = 0; i < dim(); ++i) {
                for (int rep = 0; rep < indices[idx][i]; ++rep) value *= coords(i);
            }
            e.coeffs_[order][idx] = n_fact / data_->index_factorial[order][idx] * value;
        }
    }
    return e;
}

FockElement operator+(const FockElement& a, const FockElement& b) {
    if (a.space_ != b.space_) {
        throw BaseMismatch("Fock elements belong to different truncated spaces");
    }
    FockElement out = a;
    for (size_t n = 0; n < out.coeffs_.size(); ++n) {
        for (size_t idx = 0; idx < out.coeffs_[n].size(); ++idx) {
            out.coeffs_[n][idx] += b.coeffs_[n][idx];
        }
    }
    return out;
}

FockElement operator*(double c, const FockElement& x) {
    FockElement out = x;
    for (auto& order : out.coeffs_) {
        for (double& v : order) v *= c;
    }
    return out;
}

double FockSpace::inner(const FockElement& x, const FockElement& y) const {
    if (x.space_ != data_ || y.space_ != data_) {
        throw BaseMismatch("Fock elements belong to different truncated spaces");
    }
    double total = 0.0;
    for (int n = 0; n <= max_order(); ++n) {
        const auto& fact = data_->index_factorial[n];
        double order_sum = 0.0;
        for (size_t idx = 0; idx < fact.size(); ++idx) {
            order_sum += fact[idx] * x.coeffs_[n][idx] * y.coeffs_[n][idx];
        }
        total += order_sum;
    }
    return total;
}

double exp_truncation_tail(double s, int max_order) {
    const double a = std::abs(s);
    double term = 1.0;
    for (int n = 1; n <= max_order + 1; ++n) term *= a / n;
    double tail = 0.0;
    int n = max_order + 1;
    while (term > 0.0 && tail + term != tail) {
        tail += term;
        ++n;
        term *= a / n;
    }
    return tail;
}

namespace {

void require_centered(const ConditionedLaw& law, const CmVector& v, const char* which) {
    const double drift = norm(project(law, v) - v);
    const double scale = std::max(1.0, norm(v));
    if (drift > 1e-9 * scale) {
        throw NotCentered(std::string(which) +
                          " is not invariant under the law's projection (residual " +
                          std::to_string(drift) + ")");
    }
}

FockCheck exact_check(std::string name, double computed, double reference, double tol) {
    FockCheck c;
    c.check = std::move(name);
    c.computed = computed;
    c.reference = reference;
    c.abs_err = std::abs(computed - reference);
    c.pass = c.abs_err <= tol;
    return c;
}

FockCheck mc_check(std::string name, double computed, double reference, double std_error) {
    FockCheck c;
    c.check = std::move(name);
    c.computed = computed;
    c.reference = reference;
    c.std_error = std_error;
    c.is_mc = true;
    c.z_score = z_score_of(computed, reference, std_error);
    c.pass = std::abs(c.z_score) <= 4.0;
    return c;
}

}  // namespace

std::vector<FockCheck> verify_ul_isometry(const ConditionedLaw& law, const CmVector& v,
                                          const CmVector& w, int64_t n_samples,
                                          uint64_t seed) {
    require_centered(law, v, "v");
    require_centered(law, w, "w");
    const double reference = std::exp(inner_product(v, w));
    const double normalizer = std::exp(-0.5 * (norm_squared(v) + norm_squared(w)));

    // Closed route: the Gaussian exponential-moment formula applied to v+w.
    const double closed =
        normalizer * exponential_moment(law, v + w, std::complex<double>(1.0, 0.0)).real();
    std::vector<FockCheck> out;
    out.push_back(exact_check("ul_isometry_closed_form", closed, reference,
                              1e-12 * std::max(1.0, std::abs(reference))));

    const McEstimate mc = estimate(law, Functional(ExpOfWiener{1.0, v + w}), n_samples, seed);
    out.push_back(mc_check("ul_isometry_mc", normalizer * mc.mean, reference,
                           normalizer * mc.std_error));
    return out;
}

std::vector<FockCheck> verify_ul_linear_term(const ConditionedLaw& law, const CmVector& v,
                                             int64_t n_samples, uint64_t seed) {
    require_centered(law, v, "v");
    const double expected_var = norm_squared(v);
    const double scale = std::max(1.0, expected_var);

    const GaussianLaw1D g = conditioned_law(law, v);
    std::vector<FockCheck> out;
    out.push_back(exact_check("ul_linear_mean_closed", g.mean, 0.0, 1e-12 * scale));
    out.push_back(exact_check("ul_linear_var_closed", g.variance, expected_var,
                              1e-12 * scale));

    const McEstimate mc = estimate(law, Functional(WienerIntegral{v}), n_samples, seed);
    out.push_back(mc_check("ul_linear_mean_mc", mc.mean, 0.0, mc.std_error));
    const double sample_var =
        mc.std_error * mc.std_error * static_cast<double>(mc.n_samples);
    // Standard error of a Gaussian sample variance.
    const double var_se = sample_var * std::sqrt(2.0 / (static_cast<double>(n_samples) - 1.0));
    out.push_back(mc_check("ul_linear_var_mc", sample_var, expected_var, var_se));
    return out;
}

GramCertificate isometry_gram_certificate(const ConditionedLaw& law,
                                          std::span<const CmVector> vectors, int max_order) {
    if (vectors.empty()) throw DomainError("certificate needs at least one vector");
    for (const CmVector& v : vectors) require_centered(law, v, "vector");

    const std::vector<CmVector> base = orthonormalize(vectors);
    FockSpace space(base, max_order);
    std::vector<FockElement> coherent;
    coherent.reserve(vectors.size());
    for (const CmVector& v : vectors) {
        coherent.push_back(space.exp_vector(space.coords_of(v)));
    }

    const int k = static_cast<int>(vectors.size());
    GramCertificate cert;
    cert.fock_gram.resize(k, k);
    cert.l2_gram.resize(k, k);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            cert.fock_gram(i, j) = space.inner(coherent[i], coherent[j]);
            const double normalizer =
                std::exp(-0.5 * (norm_squared(vectors[i]) + norm_squared(vectors[j])));
            cert.l2_gram(i, j) =
                normalizer *
                exponential_moment(law, vectors[i] + vectors[j], std::complex<double>(1.0, 0.0))
                    .real();
            cert.max_abs_err =
                std::max(cert.max_abs_err, std::abs(cert.fock_gram(i, j) - cert.l2_gram(i, j)));
        }
    }
    return cert;
}

}  // namespace wrad
