#pragma once

#include <span>
#include <utility>
#include <vector>

#include "wrad/cm_space.hpp"

namespace wrad {

// Magnitude/cancellation guardrail on Hermite degrees.
inline constexpr int kMaxHermiteDegree = 60;

// Hermite polynomial with variance parameter, H_n(x; u^2), defined by the
// generating function exp(t x - u^2 t^2 / 2) = sum_n t^n/n! H_n(x; u^2).
// Evaluated by the three-term recurrence
//   H_0 = 1, H_1 = x, H_{k+1} = x H_k - k u^2 H_{k-1},
// which the tests pin against the generating-function Taylor coefficients.
double hermite(int n, double x, double u2);

// Gauss-Hermite rule for the weight exp(-x^2): k nodes integrate
// polynomials up to degree 2k-1 exactly.
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussHermiteRule gauss_hermite_rule(int k);

// Both sides of the identity E[H_n(X; u^2)] = H_n(E X; u^2 - var X) for
// Gaussian X. The expectation side is computed by Gauss-Hermite quadrature
// with ceil((n+2)/2)+4 nodes (exact for the polynomial integrand), the
// other by a single Hermite evaluation at the shifted variance.
struct ShiftOfVarianceCheck {
    double quadrature;  // E[H_n(X; u^2)] by quadrature
    double shifted;     // H_n(mean; u^2 - var_x)
};
ShiftOfVarianceCheck shift_of_variance_check(int n, double mean, double var_x, double u2);

// Product functional f_1 (x) ... (x) f_n whose multiple Ito integral is
// being transformed. The transform is invariant under symmetrization of the
// factors; the flag records whether the caller already symmetrized.
struct ProductFunctional {
    explicit ProductFunctional(std::vector<CmVector> factors, bool symmetrized = true);

    std::vector<CmVector> factors;
    bool symmetrized;

    int degree() const { return static_cast<int>(factors.size()); }
    const Grid& grid() const { return factors.front().grid(); }
};

// Radon transform of the n-fold Ito integral of f^{(x)n} at the pinned
// subspace { h(T) = c }:
//   (int_0^T f)^n * H_n(c/T; 1/T).
// T must be a positive knot.
double grt_power_ito(const CmVector& f, int n, double T, double c);

// Same for a factorized product functional: (prod_j int_0^T f_j) * H_n(c/T; 1/T).
double grt_symmetric_ito(const ProductFunctional& F, double T, double c);

// Linear combination of factorized functionals of one common degree.
double grt_symmetric_ito(std::span<const std::pair<double, ProductFunctional>> terms,
                         double T, double c);

// Radon transforms of the terms of the chaos series
//   exp(I(h) - |h|^2/2) = sum_n J_n(h'^{(x)n}) / n!
// at the pinned subspace: entry n is grt_power_ito(h, n, T, c). Partial sums
// of entry/n! converge to exp(<h_L,h> + |P h|^2/2 - |h|^2/2).
std::vector<double> chaos_expansion_coeffs(const CmVector& h, int max_order, double T,
                                           double c);

}  // namespace wrad
