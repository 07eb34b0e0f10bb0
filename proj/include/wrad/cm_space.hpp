#pragma once

#include <span>
#include <vector>

#include "wrad/errors.hpp"

namespace wrad {

// Uniform partition of [0,1] into n_steps cells; knots are t_i = i/n_steps.
class Grid {
public:
    explicit Grid(int n_steps);

    int n_steps() const { return n_steps_; }
    double dt() const { return 1.0 / n_steps_; }
    double knot(int i) const { return static_cast<double>(i) / n_steps_; }

    // Index of the knot at time t. Accepts t within 1e-9 cells of an exact
    // knot (decimal inputs are not binary-exact); anything further off
    // throws TimeNotOnGrid.
    int knot_index(double t) const;
    bool is_knot(double t) const;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    int n_steps_;
};

// Returns the finer of two grids when one refines the other.
Grid common_grid(const Grid& a, const Grid& b);

// An element h of the Cameron-Martin space, stored through its derivative:
// a step function taking deriv[i] on cell [t_i, t_{i+1}). The represented
// path h(t) = integral of the derivative is piecewise linear with h(0) = 0.
// Immutable value type; all operations are pure.
class CmVector {
public:
    CmVector(Grid grid, std::vector<double> deriv);

    static CmVector zero(Grid grid);

    const Grid& grid() const { return grid_; }
    std::span<const double> deriv() const { return deriv_; }

private:
    Grid grid_;
    std::vector<double> deriv_;
};

// The reproducing kernel element t -> min{s,t}; its derivative is the
// indicator of [0,s]. s must be a knot.
CmVector kernel_vector(double s, Grid grid);

// Integral of the product of derivatives over [0,1]; exact for step
// derivatives. Vectors on different grids are refined to the finer grid
// when one divides the other (and auto_refine is enabled); otherwise
// GridMismatch.
double inner_product(const CmVector& h, const CmVector& k, bool auto_refine = true);

double norm_squared(const CmVector& h);
double norm(const CmVector& h);

// Path value h(s) for any s in [0,1] by exact integration of the step
// derivative; s need not be a knot.
double evaluate(const CmVector& h, double s);

// Same function on a finer grid (target step count must be a multiple of
// the current one). Inner products are unchanged.
CmVector refine(const CmVector& h, Grid target);

// Arithmetic on the derivative representation. Mixed grids are refined to
// the common one.
CmVector operator+(const CmVector& a, const CmVector& b);
CmVector operator-(const CmVector& a, const CmVector& b);
CmVector operator*(double c, const CmVector& h);

// Modified Gram-Schmidt with a drop tolerance: vectors whose residual falls
// below drop_tol times their original norm are skipped.
std::vector<CmVector> orthonormalize(std::span<const CmVector> vectors,
                                     double drop_tol = 1e-10);

}  // namespace wrad
