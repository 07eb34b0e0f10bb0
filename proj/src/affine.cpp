#include "wrad/affine.hpp"

#include <Eigen/Dense>
#include <string>
#include <utility>

namespace wrad {

AffineSubspace::AffineSubspace(std::vector<CmVector> cs, Eigen::VectorXd ls)
    : constraints(std::move(cs)), levels(std::move(ls)) {
    if (constraints.empty()) {
        throw DomainError("affine subspace needs at least one constraint");
    }
    if (static_cast<int>(constraints.size()) != levels.size()) {
        throw DomainError("constraint/level count mismatch: " +
                          std::to_string(constraints.size()) + " vs " +
                          std::to_string(levels.size()));
    }
    const Grid& g = constraints.front().grid();
    for (const CmVector& v : constraints) {
        if (v.grid() != g) throw GridMismatch("constraint vectors must share one grid");
    }
    if (static_cast<int>(constraints.size()) > g.n_steps()) {
        throw DomainError("more constraints than grid dimensions");
    }
}

Eigen::MatrixXd gram_matrix(const AffineSubspace& sub) {
    const int m = sub.codim();
    Eigen::MatrixXd g(m, m);
    for (int j = 0; j < m; ++j) {
        for (int k = 0; k <= j; ++k) {
            g(j, k) = inner_product(sub.constraints[k], sub.constraints[j]);
            g(k, j) = g(j, k);
        }
    }
    return g;
}

Eigen::MatrixXd invert_spd_gram(const Eigen::MatrixXd& gram) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    const Eigen::VectorXd& lambda = eig.eigenvalues();
    const double largest = lambda(lambda.size() - 1);
    const double smallest = lambda(0);
    if (largest <= 0.0 || smallest <= kGramSingularTol * largest) {
        throw SingularGram("constraints are linearly dependent within tolerance "
                           "(smallest eigenvalue " + std::to_string(smallest) +
                           ", largest " + std::to_string(largest) + ")",
                           smallest, largest);
    }
    return eig.eigenvectors() * lambda.cwiseInverse().asDiagonal() *
           eig.eigenvectors().transpose();
}

namespace {

CmVector linear_combination(Grid grid, std::span<const CmVector> vectors,
                            const Eigen::VectorXd& coeffs) {
    CmVector acc = CmVector::zero(grid);
    for (int k = 0; k < coeffs.size(); ++k) {
        acc = acc + coeffs(k) * vectors[k];
    }
    return acc;
}

}  // namespace

ConditionedLaw::ConditionedLaw(Grid grid, std::vector<CmVector> constraints,
                               Eigen::VectorXd levels, Eigen::MatrixXd gram,
                               Eigen::MatrixXd gram_inverse, Eigen::VectorXd coeffs,
                               CmVector closest)
    : grid_(grid),
      constraints_(std::move(constraints)),
      levels_(std::move(levels)),
      gram_(std::move(gram)),
      gram_inverse_(std::move(gram_inverse)),
      coeffs_(std::move(coeffs)),
      closest_(std::move(closest)) {}

ConditionedLaw ConditionedLaw::wiener(Grid grid) {
    return ConditionedLaw(grid, {}, Eigen::VectorXd(0), Eigen::MatrixXd(0, 0),
                          Eigen::MatrixXd(0, 0), Eigen::VectorXd(0), CmVector::zero(grid));
}

ConditionedLaw closest_point(const AffineSubspace& sub) {
    const Eigen::MatrixXd gram = gram_matrix(sub);
    const Eigen::MatrixXd gram_inverse = invert_spd_gram(gram);
    const Eigen::VectorXd coeffs = gram_inverse * sub.levels;
    CmVector closest = linear_combination(sub.grid(), sub.constraints, coeffs);
    return ConditionedLaw(sub.grid(), sub.constraints, sub.levels, gram, gram_inverse,
                          coeffs, std::move(closest));
}

CmVector project(const ConditionedLaw& law, const CmVector& h) {
    if (law.codim() == 0) return h;
    const int m = law.codim();
    Eigen::VectorXd applied(m);
    for (int j = 0; j < m; ++j) {
        applied(j) = inner_product(law.constraints()[j], h);
    }
    const Eigen::VectorXd y = law.gram_inverse() * applied;
    CmVector result = h;
    for (int j = 0; j < m; ++j) {
        result = result - y(j) * law.constraints()[j];
    }
    return result;
}

OrthonormalBridgeBasis orthonormal_bridge_basis(std::span<const double> times,
                                                std::span<const double> levels, Grid grid) {
    if (times.empty() || times.size() != levels.size()) {
        throw DomainError("need matching nonempty time/level lists");
    }
    const int m = static_cast<int>(times.size());
    for (int k = 0; k < m; ++k) {
        const double prev = k == 0 ? 0.0 : times[k - 1];
        if (times[k] <= prev) {
            throw TimesNotIncreasing("pin times must satisfy 0 < T_1 < ... < T_m");
        }
    }
    OrthonormalBridgeBasis out;
    out.levels.resize(m);
    for (int k = 0; k < m; ++k) {
        const double prev_t = k == 0 ? 0.0 : times[k - 1];
        const double prev_c = k == 0 ? 0.0 : levels[k - 1];
        const double gap = times[k] - prev_t;
        CmVector increment = k == 0 ? kernel_vector(times[0], grid)
                                    : kernel_vector(times[k], grid) -
                                          kernel_vector(times[k - 1], grid);
        out.vectors.push_back((1.0 / std::sqrt(gap)) * increment);
        out.levels(k) = (levels[k] - prev_c) / std::sqrt(gap);
    }
    return out;
}

ConditionedLaw bridge_law(double T, double c, Grid grid) {
    const double times[] = {T};
    const double levels[] = {c};
    return multi_bridge_law(times, levels, grid);
}

ConditionedLaw multi_bridge_law(std::span<const double> times,
                                std::span<const double> levels, Grid grid) {
    if (times.empty() || times.size() != levels.size()) {
        throw DomainError("need matching nonempty time/level lists");
    }
    for (size_t k = 0; k < times.size(); ++k) {
        const double prev = k == 0 ? 0.0 : times[k - 1];
        if (times[k] <= prev) {
            throw TimesNotIncreasing("pin times must satisfy 0 < T_1 < ... < T_m");
        }
    }
    std::vector<CmVector> constraints;
    constraints.reserve(times.size());
    for (double t : times) constraints.push_back(kernel_vector(t, grid));
    Eigen::VectorXd c(levels.size());
    for (size_t k = 0; k < levels.size(); ++k) c(k) = levels[k];
    return closest_point(AffineSubspace(std::move(constraints), std::move(c)));
}

}  // namespace wrad
