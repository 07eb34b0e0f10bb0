#include "wrad/hermite.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

namespace wrad {

namespace {

void check_degree(int n) {
    if (n < 0) throw DomainError("Hermite degree must be nonnegative");
    if (n > kMaxHermiteDegree) {
        throw DegreeTooLarge("degree " + std::to_string(n) + " exceeds guardrail " +
                             std::to_string(kMaxHermiteDegree));
    }
}

double integrate_prefix(const CmVector& f, int idx) {
    double sum = 0.0;
    for (int i = 0; i < idx; ++i) sum += f.deriv()[i];
    return sum * f.grid().dt();
}

int bridge_knot(const Grid& grid, double T) {
    const int idx = grid.knot_index(T);
    if (idx == 0) throw InvalidBridgeTime("pin time must be positive");
    return idx;
}

double int_pow(double base, int n) {
    double p = 1.0;
    for (int i = 0; i < n; ++i) p *= base;
    return p;
}

}  // namespace

double hermite(int n, double x, double u2) {
    check_degree(n);
    if (u2 < 0.0) throw DomainError("variance parameter must be nonnegative");
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = x;
    for (int k = 1; k < n; ++k) {
        const double next = x * cur - static_cast<double>(k) * u2 * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

GaussHermiteRule gauss_hermite_rule(int k) {
    if (k < 1) throw DomainError("quadrature needs at least one node");
    // Golub-Welsch on the Jacobi matrix of the exp(-x^2) weight.
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(k, k);
    for (int i = 1; i < k; ++i) {
        const double b = std::sqrt(i / 2.0);
        jacobi(i - 1, i) = b;
        jacobi(i, i - 1) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
    const double mu0 = std::sqrt(M_PI);
    GaussHermiteRule rule;
    rule.nodes.resize(k);
    rule.weights.resize(k);
    for (int i = 0; i < k; ++i) {
        rule.nodes[i] = eig.eigenvalues()(i);
        const double q0 = eig.eigenvectors()(0, i);
        rule.weights[i] = mu0 * q0 * q0;
    }
    return rule;
}

ShiftOfVarianceCheck shift_of_variance_check(int n, double mean, double var_x, double u2) {
    check_degree(n);
    if (var_x < 0.0) throw DomainError("var_x must be nonnegative");
    if (u2 < var_x) {
        throw VarianceOrder("variance parameter " + std::to_string(u2) +
                            " below var(X) = " + std::to_string(var_x));
    }
    const int k = (n + 2 + 1) / 2 + 4;
    const GaussHermiteRule rule = gauss_hermite_rule(k);
    const double scale = std::sqrt(2.0 * var_x);
    double acc = 0.0;
    for (int i = 0; i < k; ++i) {
        acc += rule.weights[i] * hermite(n, mean + scale * rule.nodes[i], u2);
    }
    return ShiftOfVarianceCheck{acc / std::sqrt(M_PI), hermite(n, mean, u2 - var_x)};
}

ProductFunctional::ProductFunctional(std::vector<CmVector> fs, bool symm)
    : factors(std::move(fs)), symmetrized(symm) {
    if (factors.empty()) throw DomainError("product functional needs at least one factor");
    const Grid& g = factors.front().grid();
    for (const CmVector& f : factors) {
        if (f.grid() != g) throw GridMismatch("factors must share one grid");
    }
}

double grt_power_ito(const CmVector& f, int n, double T, double c) {
    check_degree(n);
    const int idx = bridge_knot(f.grid(), T);
    const double mass = integrate_prefix(f, idx);
    return int_pow(mass, n) * hermite(n, c / T, 1.0 / T);
}

double grt_symmetric_ito(const ProductFunctional& F, double T, double c) {
    const int n = F.degree();
    check_degree(n);
    const int idx = bridge_knot(F.grid(), T);
    double product = 1.0;
    for (const CmVector& f : F.factors) product *= integrate_prefix(f, idx);
    return product * hermite(n, c / T, 1.0 / T);
}

double grt_symmetric_ito(std::span<const std::pair<double, ProductFunctional>> terms,
                         double T, double c) {
    if (terms.empty()) throw DomainError("empty linear combination");
    const int n = terms.front().second.degree();
    double sum = 0.0;
    for (const auto& [weight, F] : terms) {
        if (F.degree() != n) {
            throw DomainError("all terms of a combination must share one degree");
        }
        sum += weight * grt_symmetric_ito(F, T, c);
    }
    return sum;
}

std::vector<double> chaos_expansion_coeffs(const CmVector& h, int max_order, double T,
                                           double c) {
    check_degree(max_order);
    const int idx = bridge_knot(h.grid(), T);
    const double mass = integrate_prefix(h, idx);
    // One pass of the recurrence covers every order.
    std::vector<double> out(max_order + 1);
    const double x = c / T;
    const double u2 = 1.0 / T;
    double prev = 1.0, cur = x, power = 1.0;
    for (int n = 0; n <= max_order; ++n) {
        const double herm = n == 0 ? 1.0 : cur;
        out[n] = power * herm;
        power *= mass;
        if (n >= 1) {
            const double next = x * cur - static_cast<double>(n) * u2 * prev;
            prev = cur;
            cur = next;
        }
    }
    return out;
}

}  // namespace wrad
