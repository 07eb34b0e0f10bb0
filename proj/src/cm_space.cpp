#include "wrad/cm_space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wrad {

namespace {
constexpr double kKnotTol = 1e-9;  // in units of cells
}

Grid::Grid(int n_steps) : n_steps_(n_steps) {
    if (n_steps < 1) {
        throw DomainError("grid must have at least one step, got " + std::to_string(n_steps));
    }
}

int Grid::knot_index(double t) const {
    const double pos = t * n_steps_;
    const double rounded = std::round(pos);
    if (std::abs(pos - rounded) > kKnotTol || rounded < 0 || rounded > n_steps_) {
        throw TimeNotOnGrid("time " + std::to_string(t) + " is not a knot of the " +
                            std::to_string(n_steps_) + "-step grid");
    }
    return static_cast<int>(rounded);
}

bool Grid::is_knot(double t) const {
    const double pos = t * n_steps_;
    const double rounded = std::round(pos);
    return std::abs(pos - rounded) <= kKnotTol && rounded >= 0 && rounded <= n_steps_;
}

Grid common_grid(const Grid& a, const Grid& b) {
    if (a.n_steps() == b.n_steps()) return a;
    if (a.n_steps() % b.n_steps() == 0) return a;
    if (b.n_steps() % a.n_steps() == 0) return b;
    throw GridMismatch("grids with " + std::to_string(a.n_steps()) + " and " +
                       std::to_string(b.n_steps()) + " steps have no common refinement");
}

CmVector::CmVector(Grid grid, std::vector<double> deriv)
    : grid_(grid), deriv_(std::move(deriv)) {
    if (static_cast<int>(deriv_.size()) != grid_.n_steps()) {
        throw DomainError("derivative has " + std::to_string(deriv_.size()) +
                          " cells, grid has " + std::to_string(grid_.n_steps()));
    }
}

CmVector CmVector::zero(Grid grid) {
    return CmVector(grid, std::vector<double>(grid.n_steps(), 0.0));
}

CmVector kernel_vector(double s, Grid grid) {
    const int idx = grid.knot_index(s);
    std::vector<double> deriv(grid.n_steps(), 0.0);
    std::fill(deriv.begin(), deriv.begin() + idx, 1.0);
    return CmVector(grid, std::move(deriv));
}

double inner_product(const CmVector& h, const CmVector& k, bool auto_refine) {
    if (h.grid() != k.grid()) {
        if (!auto_refine) {
            throw GridMismatch("inner_product on different grids with auto-refinement disabled");
        }
        const Grid g = common_grid(h.grid(), k.grid());
        return inner_product(refine(h, g), refine(k, g), false);
    }
    const auto dh = h.deriv();
    const auto dk = k.deriv();
    double sum = 0.0;
    for (size_t i = 0; i < dh.size(); ++i) sum += dh[i] * dk[i];
    return sum * h.grid().dt();
}

double norm_squared(const CmVector& h) { return inner_product(h, h); }

double norm(const CmVector& h) { return std::sqrt(norm_squared(h)); }

double evaluate(const CmVector& h, double s) {
    if (s < -1e-12 || s > 1.0 + 1e-12) {
        throw DomainError("evaluation time " + std::to_string(s) + " outside [0,1]");
    }
    s = std::clamp(s, 0.0, 1.0);
    const Grid& g = h.grid();
    const auto d = h.deriv();
    const double pos = s * g.n_steps();
    const double rounded = std::round(pos);
    // On a knot, reproduce the exact cell-sum form of inner_product so that
    // evaluate(h, s) and inner_product(kernel_vector(s), h) are bit-identical.
    if (std::abs(pos - rounded) <= kKnotTol) {
        const int idx = static_cast<int>(rounded);
        double sum = 0.0;
        for (int i = 0; i < idx; ++i) sum += d[i];
        return sum * g.dt();
    }
    const int full = static_cast<int>(std::floor(pos));
    double sum = 0.0;
    for (int i = 0; i < full; ++i) sum += d[i];
    return sum * g.dt() + d[full] * (s - g.knot(full));
}

CmVector refine(const CmVector& h, Grid target) {
    if (target == h.grid()) return h;
    if (target.n_steps() % h.grid().n_steps() != 0) {
        throw NotARefinement(std::to_string(target.n_steps()) +
                             " steps do not refine " + std::to_string(h.grid().n_steps()));
    }
    const int factor = target.n_steps() / h.grid().n_steps();
    std::vector<double> deriv;
    deriv.reserve(target.n_steps());
    for (double v : h.deriv()) {
        deriv.insert(deriv.end(), factor, v);
    }
    return CmVector(target, std::move(deriv));
}

namespace {

template <typename Op>
CmVector combine(const CmVector& a, const CmVector& b, Op op) {
    const Grid g = common_grid(a.grid(), b.grid());
    const CmVector ra = refine(a, g);
    const CmVector rb = refine(b, g);
    std::vector<double> deriv(g.n_steps());
    for (int i = 0; i < g.n_steps(); ++i) deriv[i] = op(ra.deriv()[i], rb.deriv()[i]);
    return CmVector(g, std::move(deriv));
}

}  // namespace

CmVector operator+(const CmVector& a, const CmVector& b) {
    return combine(a, b, [](double x, double y) { return x + y; });
}

CmVector operator-(const CmVector& a, const CmVector& b) {
    return combine(a, b, [](double x, double y) { return x - y; });
}

CmVector operator*(double c, const CmVector& h) {
    std::vector<double> deriv(h.deriv().begin(), h.deriv().end());
    for (double& v : deriv) v *= c;
    return CmVector(h.grid(), std::move(deriv));
}

std::vector<CmVector> orthonormalize(std::span<const CmVector> vectors, double drop_tol) {
    std::vector<CmVector> basis;
    for (const CmVector& v : vectors) {
        const double original = norm(v);
        if (original == 0.0) continue;
        CmVector residual = v;
        // Two MGS sweeps keep the basis orthonormal to machine precision.
        for (int sweep = 0; sweep < 2; ++sweep) {
            for (const CmVector& b : basis) {
                residual = residual - inner_product(b, residual) * b;
            }
        }
        const double r = norm(residual);
        if (r > drop_tol * original) {
            basis.push_back((1.0 / r) * residual);
        }
    }
    return basis;
}

}  // namespace wrad
