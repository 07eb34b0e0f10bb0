#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

#include "wrad/cm_space.hpp"

namespace wrad {

// Relative eigenvalue threshold below which a constraint Gram matrix is
// treated as singular.
inline constexpr double kGramSingularTol = 1e-10;

// A closed affine subspace of finite codimension m, given as the level set
// { h : <v_j, h> = c_j, j = 1..m } of m linearly independent constraint
// vectors on a shared grid.
struct AffineSubspace {
    AffineSubspace(std::vector<CmVector> constraints, Eigen::VectorXd levels);

    std::vector<CmVector> constraints;
    Eigen::VectorXd levels;

    const Grid& grid() const { return constraints.front().grid(); }
    int codim() const { return static_cast<int>(constraints.size()); }
};

// Gram matrix of the constraint vectors: entry (j,k) = <v_k, v_j>.
Eigen::MatrixXd gram_matrix(const AffineSubspace& sub);

// Inverse of a symmetric positive definite Gram matrix via
// eigendecomposition. Raises SingularGram when the smallest eigenvalue is
// at or below kGramSingularTol times the largest.
Eigen::MatrixXd invert_spd_gram(const Eigen::MatrixXd& gram);

// Everything needed to evaluate the conditioned Gaussian law: the point of
// the subspace closest to the origin, the constraint Gram matrix and its
// inverse, and the expansion coefficients of the closest point in the
// constraint vectors. With no constraints (codim 0) the law is plain Wiener
// measure: closest point zero, projection the identity.
class ConditionedLaw {
public:
    // Unconditioned degenerate case.
    static ConditionedLaw wiener(Grid grid);

    const Grid& grid() const { return grid_; }
    int codim() const { return static_cast<int>(constraints_.size()); }
    std::span<const CmVector> constraints() const { return constraints_; }
    const Eigen::VectorXd& levels() const { return levels_; }
    const CmVector& closest_point() const { return closest_; }
    const Eigen::MatrixXd& gram() const { return gram_; }
    const Eigen::MatrixXd& gram_inverse() const { return gram_inverse_; }
    const Eigen::VectorXd& coefficients() const { return coeffs_; }

private:
    friend ConditionedLaw closest_point(const AffineSubspace& sub);
    ConditionedLaw(Grid grid, std::vector<CmVector> constraints, Eigen::VectorXd levels,
                   Eigen::MatrixXd gram, Eigen::MatrixXd gram_inverse,
                   Eigen::VectorXd coeffs, CmVector closest);

    Grid grid_;
    std::vector<CmVector> constraints_;
    Eigen::VectorXd levels_;
    Eigen::MatrixXd gram_;
    Eigen::MatrixXd gram_inverse_;
    Eigen::VectorXd coeffs_;
    CmVector closest_;
};

// Minimum-norm point of the subspace and the derived projector data. The
// Gram matrix is inverted through a symmetric eigendecomposition; a smallest
// eigenvalue at or below kGramSingularTol times the largest raises
// SingularGram.
ConditionedLaw closest_point(const AffineSubspace& sub);

// Orthogonal projection onto the constraint-parallel subspace L0 (the
// directions along which the law fluctuates):
//   P h = h - sum_{j,k} [G^{-1}]_{jk} <v_k, h> v_j.
// The result is orthogonal to every constraint vector.
CmVector project(const ConditionedLaw& law, const CmVector& h);

// Pinning constraints { h(T_k) = c_k } re-expressed with orthonormal
// constraint vectors built from increments of reproducing kernels, together
// with the transformed levels.
struct OrthonormalBridgeBasis {
    std::vector<CmVector> vectors;
    Eigen::VectorXd levels;
};
OrthonormalBridgeBasis orthonormal_bridge_basis(std::span<const double> times,
                                                std::span<const double> levels, Grid grid);

// Convenience constructors for the pinned-path subspaces used throughout:
// single pin { h(T) = c } and multiple pins { h(T_k) = c_k }.
ConditionedLaw bridge_law(double T, double c, Grid grid);
ConditionedLaw multi_bridge_law(std::span<const double> times,
                                std::span<const double> levels, Grid grid);

}  // namespace wrad
