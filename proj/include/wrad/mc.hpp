#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "wrad/affine.hpp"
#include "wrad/grt.hpp"

namespace wrad {

// Dense conditioning is only meant for verification-sized grids.
inline constexpr int kMaxDenseGrid = 4096;

// Paths are generated in fixed-size chunks; chunking affects only how work
// is grouped, never which random numbers a path sees.
inline constexpr int64_t kMcChunkSize = 1024;

// Discretized path: values at knots t_1..t_n, with implicit value 0 at t_0.
struct PathSample {
    Grid grid;
    std::vector<double> values;
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    int64_t n_samples = 0;
    uint64_t seed = 0;
};

// --- Functionals of a discretized path -----------------------------------

// sum_i f_i * dB_i, the Wiener integral of a step function.
struct WienerIntegral {
    CmVector f;
};

// H_n(sum_i f_i dB_i; u2).
struct HermiteOfWiener {
    int n;
    CmVector f;
    double u2;
};

// exp(z * sum_i f_i dB_i).
struct ExpOfWiener {
    double z;
    CmVector f;
};

// Path value at a knot time.
struct PathEval {
    double t;
};

using BaseFunctional = std::variant<WienerIntegral, HermiteOfWiener, ExpOfWiener, PathEval>;

// Pointwise function of finitely many base functionals.
struct Composed {
    std::vector<BaseFunctional> inputs;
    std::function<double(std::span<const double>)> combine;
    std::string name;
};

using Functional =
    std::variant<WienerIntegral, HermiteOfWiener, ExpOfWiener, PathEval, Composed>;

std::string functional_name(const Functional& f);

// --- Discretized law and sampling -----------------------------------------

// Finite-dimensional marginal of the conditioned measure at the knots:
// mean vector and conditioned covariance obtained by Gaussian conditioning
// of the Brownian covariance min{t_i,t_j} on the constraint rows.
struct DiscretizedLaw {
    Grid grid;
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;
};

DiscretizedLaw discretize_law(const ConditionedLaw& law);

// Sampler over a factorized discretized law. The covariance is factorized
// by symmetric eigendecomposition; eigenvalues within 1e-9 * lambda_max of
// zero are clipped to zero (constraint directions are exactly singular),
// and anything below -1e-9 * lambda_max raises IndefiniteCovariance.
// Path index p draws its normals from the (seed, p) substream, so results
// do not depend on how paths are batched or threaded.
class PathSampler {
public:
    explicit PathSampler(const ConditionedLaw& law);

    const DiscretizedLaw& law() const { return law_; }
    int rank() const { return static_cast<int>(factor_.cols()); }

    PathSample sample_one(uint64_t seed, uint64_t path_index) const;

    // Fills out (n_knots x batch) with paths first_path .. first_path+batch-1.
    void sample_block(uint64_t seed, uint64_t first_path,
                      Eigen::Ref<Eigen::MatrixXd> out) const;

private:
    DiscretizedLaw law_;
    Eigen::MatrixXd factor_;  // n x rank, V * sqrt(lambda)
};

// Materialized draw of n_samples paths.
std::vector<PathSample> sample_paths(const ConditionedLaw& law, int64_t n_samples,
                                     uint64_t seed);

// Sample-mean estimate with standard error. Deterministic: identical
// (law, functional, n_samples, seed) give bit-identical results, and the
// thread count (default from WIENER_RADON_THREADS, else hardware) never
// changes the output.
McEstimate estimate(const ConditionedLaw& law, const Functional& functional,
                    int64_t n_samples, uint64_t seed, int threads = 0);

// One sampling pass shared by several functionals of the same law.
std::vector<McEstimate> estimate_many(const ConditionedLaw& law,
                                      std::span<const Functional> functionals,
                                      int64_t n_samples, uint64_t seed, int threads = 0);

// --- Closed form vs Monte Carlo -------------------------------------------

struct CompareReport {
    std::string check;
    double closed_form = 0.0;
    double estimate = 0.0;
    double std_error = 0.0;
    double z_score = 0.0;
    bool pass = false;
};

// Discrepancy in standard errors. A standard error at rounding level
// (<= 1e-12 relative to the values) is treated as exactly zero: the
// functional is deterministic under the law and the CLT does not apply to
// rounding noise. In that degenerate case the z-score is 0 when the values
// agree within 1e-9 absolute and the mismatch in units of 1e-9 otherwise.
double z_score_of(double estimate_value, double closed_form_value, double std_error);

// Runs the estimator and scores the discrepancy in standard errors.
// Degenerate case: with zero standard error the z-score is 0 when the two
// values agree within 1e-9 absolute, and the mismatch measured in units of
// that tolerance otherwise.
CompareReport compare(const ConditionedLaw& law, const Functional& functional,
                      double closed_form_value, int64_t n_samples, uint64_t seed,
                      std::string label = "", int threads = 0);

}  // namespace wrad
