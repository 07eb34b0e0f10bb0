#pragma once

#include <complex>
#include <span>

#include "wrad/affine.hpp"

namespace wrad {

// Law of a single conditioned Wiener integral: Gaussian with the stated
// mean and variance.
struct GaussianLaw1D {
    double mean = 0.0;
    double variance = 0.0;
};

// Variances are nonnegative in exact arithmetic; values in [-1e-12, 0) are
// rounding debris and clamp to zero, anything lower is a genuine bug.
double clamp_variance(double variance);

// Radon transform of the linear functional attached to h: the value
// <h_L, h> that the functional takes at the subspace's closest point.
double grt_linear(const ConditionedLaw& law, const CmVector& h);

// Full conditioned law of the Wiener integral of h's derivative:
// mean <h_L, h>, variance |P h|^2.
GaussianLaw1D conditioned_law(const ConditionedLaw& law, const CmVector& h);

// Covariance <P h1, P h2> of two conditioned Wiener integrals.
double conditioned_cov(const ConditionedLaw& law, const CmVector& h1, const CmVector& h2);

// E[exp(z X)] for the conditioned integral X: exp(z*mean + z^2/2*variance).
// At z = i u this is the characteristic function.
std::complex<double> exponential_moment(const ConditionedLaw& law, const CmVector& h,
                                        std::complex<double> z);

// Mean of the Wiener integral of f under the multi-pin law, computed by
// direct piecewise integration:
//   (c_1/T_1) * int_0^{T_1} f + sum_k ((c_k - c_{k-1})/(T_k - T_{k-1})) *
//   int_{T_{k-1}}^{T_k} f.
// Deliberately does not go through grt_linear so the two routes can
// cross-check each other.
double multi_bridge_mean(std::span<const double> times, std::span<const double> levels,
                         const CmVector& f);

}  // namespace wrad
