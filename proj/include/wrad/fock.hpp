#pragma once

#include <Eigen/Core>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "wrad/affine.hpp"

namespace wrad {

inline constexpr int kMaxFockModes = 8;
inline constexpr int kMaxFockOrder = 30;

class FockSpace;

// Element of the truncated symmetric Fock space: one coefficient per
// occupation multi-index per order. With orthonormal modes e_1..e_d the
// stored coefficient of alpha is the coordinate along the symmetrized basis
// tensor e^{alpha}, and the n!-weighted Fock inner product collapses to
// sum_alpha alpha! x_alpha y_alpha.
class FockElement {
public:
    double coefficient(int order, int index) const { return coeffs_[order][index]; }

    friend FockElement operator+(const FockElement& a, const FockElement& b);
    friend FockElement operator*(double c, const FockElement& x);

private:
    friend class FockSpace;
    struct SpaceData;
    std::shared_ptr<const SpaceData> space_;
    std::vector<std::vector<double>> coeffs_;
};

// Truncated symmetric Fock space over d orthonormal Cameron-Martin vectors,
// with all symmetric tensor orders up to max_order.
class FockSpace {
public:
    // base must be orthonormal within 1e-10; d <= 8, max_order <= 30.
    FockSpace(std::vector<CmVector> base, int max_order);

    int dim() const;
    int max_order() const;
    std::span<const CmVector> base() const;

    // Coordinates <base_i, h> of a vector lying in the span of the base.
    Eigen::VectorXd coords_of(const CmVector& h) const;

    FockElement vacuum() const;

    // Truncated coherent vector Exp(v) = sum_n v^{(x)n} / n!.
    FockElement exp_vector(const Eigen::VectorXd& coords) const;

    // Pure tensor power v^{(x)n} as an element (all other orders zero).
    FockElement power_tensor(const Eigen::VectorXd& coords, int order) const;

    // n!-weighted inner product; BaseMismatch across spaces.
    double inner(const FockElement& x, const FockElement& y) const;

private:
    std::shared_ptr<const FockElement::SpaceData> data_;
};

inline double fock_inner(const FockSpace& space, const FockElement& x, const FockElement& y) {
    return space.inner(x, y);
}

// Tail bound sum_{n > max_order} |s|^n / n! of the coherent inner-product
// truncation.
double exp_truncation_tail(double s, int max_order);

// One verification row. Exact (non-MC) checks report the absolute error,
// Monte Carlo checks the z-score; the unused field is NaN.
struct FockCheck {
    std::string check;
    double computed = 0.0;
    double reference = 0.0;
    double abs_err = std::numeric_limits<double>::quiet_NaN();
    double z_score = std::numeric_limits<double>::quiet_NaN();
    double std_error = 0.0;  // zero for exact checks
    bool is_mc = false;
    bool pass = false;
};

// Checks the exponential-vector identity underlying the Fock decomposition
// of the conditioned measure: the L^2(mu_L) pairing of the normalized
// exponentials of v and w equals exp(<v,w>). Both routes are run: the
// closed Gaussian formula (exact) and the Monte Carlo oracle. v and w must
// be invariant under the law's projection within 1e-9 (NotCentered).
std::vector<FockCheck> verify_ul_isometry(const ConditionedLaw& law, const CmVector& v,
                                          const CmVector& w, int64_t n_samples,
                                          uint64_t seed);

// Checks that the conditioned integral of a centered vector has mean 0 and
// variance |v|^2, by closed form (exact) and by Monte Carlo.
std::vector<FockCheck> verify_ul_linear_term(const ConditionedLaw& law, const CmVector& v,
                                             int64_t n_samples, uint64_t seed);

// Finite-rank isometry certificate: the Gram matrix of truncated coherent
// vectors Exp(v_i) against the closed-form Gram of the normalized
// exponential functionals in L^2(mu_L).
struct GramCertificate {
    Eigen::MatrixXd fock_gram;
    Eigen::MatrixXd l2_gram;
    double max_abs_err = 0.0;
};
GramCertificate isometry_gram_certificate(const ConditionedLaw& law,
                                          std::span<const CmVector> vectors, int max_order);

}  // namespace wrad
