#include <doctest.h>

#include <cmath>
#include <vector>

#include "wrad/grt.hpp"
#include "wrad/hermite.hpp"
#include "wrad/rng.hpp"

using namespace wrad;

namespace {

// Generating-function oracle: multiply the Taylor series of exp(t x) and
// exp(-u^2 t^2 / 2) and read off n! times the coefficient of t^n. Entirely
// independent of the recurrence.
double hermite_taylor_oracle(int n, double x, double u2) {
    std::vector<double> exp_tx(n + 1);  // x^k / k!
    exp_tx[0] = 1.0;
    for (int k = 1; k <= n; ++k) exp_tx[k] = exp_tx[k - 1] * x / k;
    std::vector<double> gauss(n + 1, 0.0);  // (-u^2/2)^j / j! at power 2j
    double term = 1.0;
    for (int j = 0; 2 * j <= n; ++j) {
        gauss[2 * j] = term;
        term *= -u2 / 2.0 / (j + 1);
    }
    double coeff = 0.0;
    for (int k = 0; k <= n; ++k) coeff += exp_tx[n - k] * gauss[k];
    double n_fact = 1.0;
    for (int k = 2; k <= n; ++k) n_fact *= k;
    return n_fact * coeff;
}

CmVector random_vector(Grid grid, uint64_t seed) {
    NormalStream s(seed, 0);
    std::vector<double> deriv(grid.n_steps());
    s.fill(deriv);
    return CmVector(grid, std::move(deriv));
}

}  // namespace

TEST_SUITE("hermite") {

TEST_CASE("low orders in closed form") {
    CHECK(hermite(0, 1.7, 2.0) == 1.0);
    CHECK(hermite(1, 1.7, 2.0) == 1.7);
    for (double x : {-2.0, 0.0, 1.3}) {
        for (double u2 : {0.0, 0.5, 2.0}) {
            CHECK(hermite(2, x, u2) == doctest::Approx(x * x - u2).epsilon(1e-15));
        }
    }
}

TEST_CASE("recurrence matches the generating-function Taylor oracle") {
    for (int n = 0; n <= 12; ++n) {
        for (double x : {-2.3, 0.7, 4.1}) {
            for (double u2 : {0.3, 1.0, 2.7}) {
                const double expected = hermite_taylor_oracle(n, x, u2);
                const double scale = std::max(1.0, std::abs(expected));
                CHECK(std::abs(hermite(n, x, u2) - expected) <= 1e-10 * scale);
            }
        }
    }
}

TEST_CASE("scaling relation") {
    for (double lambda : {-1.0, 0.5, 2.0, 10.0}) {
        for (int n = 0; n <= 10; ++n) {
            for (double x : {-1.1, 0.4, 2.2}) {
                const double u2 = 0.8;
                const double lhs = hermite(n, lambda * x, lambda * lambda * u2);
                double lambda_n = 1.0;
                for (int k = 0; k < n; ++k) lambda_n *= lambda;
                const double rhs = lambda_n * hermite(n, x, u2);
                const double scale = std::max(1.0, std::abs(rhs));
                CHECK(std::abs(lhs - rhs) <= 1e-10 * scale);
            }
        }
    }
}

TEST_CASE("degree guardrail and domain checks") {
    CHECK_THROWS_AS(hermite(61, 0.0, 1.0), DegreeTooLarge);
    CHECK_THROWS_AS(hermite(-1, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(hermite(3, 0.0, -0.5), DomainError);
    CHECK_NOTHROW(hermite(60, 0.1, 1.0));
}

TEST_CASE("gauss-hermite rule integrates polynomials exactly") {
    const GaussHermiteRule rule = gauss_hermite_rule(6);
    double mass = 0.0, second = 0.0, fourth = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        mass += rule.weights[i];
        second += rule.weights[i] * rule.nodes[i] * rule.nodes[i];
        fourth += rule.weights[i] * std::pow(rule.nodes[i], 4);
    }
    const double sqrt_pi = std::sqrt(M_PI);
    CHECK(mass == doctest::Approx(sqrt_pi).epsilon(1e-13));
    CHECK(second == doctest::Approx(0.5 * sqrt_pi).epsilon(1e-13));
    CHECK(fourth == doctest::Approx(0.75 * sqrt_pi).epsilon(1e-13));
}

TEST_CASE("shift of variance") {
    SUBCASE("degenerate X collapses both sides") {
        const ShiftOfVarianceCheck c = shift_of_variance_check(4, 0.3, 0.0, 1.5);
        CHECK(c.quadrature == doctest::Approx(c.shifted).epsilon(1e-12));
        CHECK(c.shifted == doctest::Approx(hermite(4, 0.3, 1.5)).epsilon(1e-15));
    }
    SUBCASE("full shift sends the variance parameter to zero") {
        const ShiftOfVarianceCheck c = shift_of_variance_check(2, 0.0, 1.3, 1.3);
        CHECK(c.shifted == 0.0);
        CHECK(std::abs(c.quadrature) < 1e-12);
    }
    SUBCASE("random parameters up to degree 10") {
        NormalStream s(2024, 0);
        for (int n = 0; n <= 10; ++n) {
            for (int trial = 0; trial < 5; ++trial) {
                const uint64_t base = static_cast<uint64_t>(10 * n + trial);
                const double mean = s.draw(3 * base);
                const double var_x = std::abs(s.draw(3 * base + 1));
                const double u2 = var_x + std::abs(s.draw(3 * base + 2));
                const ShiftOfVarianceCheck c = shift_of_variance_check(n, mean, var_x, u2);
                const double scale = std::max(1.0, std::abs(c.shifted));
                CHECK(std::abs(c.quadrature - c.shifted) <= 1e-10 * scale);
            }
        }
    }
    SUBCASE("variance order is enforced") {
        CHECK_THROWS_AS(shift_of_variance_check(3, 0.0, 2.0, 1.0), VarianceOrder);
    }
}

TEST_CASE("transform of power integrals at a pinned subspace") {
    const Grid g(8);
    SUBCASE("T = 1 with unit factor gives the classical Hermite value") {
        const CmVector ones = kernel_vector(1.0, g);
        for (int n = 0; n <= 6; ++n) {
            for (double c : {-1.0, 0.0, 0.8, 2.0}) {
                CHECK(grt_power_ito(ones, n, 1.0, c) == hermite(n, c, 1.0));
            }
        }
    }
    SUBCASE("degree zero gives 1") {
        CHECK(grt_power_ito(random_vector(g, 1), 0, 0.5, 3.0) == 1.0);
    }
    SUBCASE("degree one matches the linear transform") {
        const double T = 0.5;
        for (double c : {0.0, 1.5}) {
            const ConditionedLaw law = bridge_law(T, c, g);
            for (uint64_t seed : {31u, 32u, 33u}) {
                const CmVector f = random_vector(g, seed);
                CHECK(std::abs(grt_power_ito(f, 1, T, c) - grt_linear(law, f)) <= 1e-12);
            }
        }
    }
    SUBCASE("zero of the degree-2 Hermite factor kills the transform") {
        const double T = 0.25;
        const double c = T / std::sqrt(T);  // c/T = 1/sqrt(T)
        const CmVector f = random_vector(g, 5);
        CHECK(std::abs(grt_power_ito(f, 2, T, c)) < 1e-13);
    }
    SUBCASE("errors") {
        const CmVector f = random_vector(g, 6);
        CHECK_THROWS_AS(grt_power_ito(f, 2, 0.3, 1.0), TimeNotOnGrid);
        CHECK_THROWS_AS(grt_power_ito(f, 2, 0.0, 1.0), InvalidBridgeTime);
        CHECK_THROWS_AS(grt_power_ito(f, 61, 0.5, 1.0), DegreeTooLarge);
    }
}

TEST_CASE("transform of factorized product functionals") {
    const Grid g(8);
    SUBCASE("equal factors reduce to the power form") {
        const CmVector f = random_vector(g, 7);
        const ProductFunctional F({f, f, f});
        CHECK(grt_symmetric_ito(F, 0.5, 1.2) ==
              doctest::Approx(grt_power_ito(f, 3, 0.5, 1.2)).epsilon(1e-14));
    }
    SUBCASE("worked two-factor value") {
        // factors 1_[0,1/2] and 1_[0,1], T = 1/2: masses 1/2 and 1/2,
        // value (1/4) H_2(2c; 2).
        const ProductFunctional F({kernel_vector(0.5, g), kernel_vector(1.0, g)});
        for (double c : {0.0, 0.7, -1.3}) {
            const double expected = 0.25 * hermite(2, 2.0 * c, 2.0);
            CHECK(grt_symmetric_ito(F, 0.5, c) == doctest::Approx(expected).epsilon(1e-13));
        }
    }
    SUBCASE("linear combinations act linearly") {
        const ProductFunctional f1({kernel_vector(0.5, g), kernel_vector(1.0, g)});
        const ProductFunctional f2({kernel_vector(0.25, g), kernel_vector(0.75, g)});
        const std::pair<double, ProductFunctional> terms[] = {{2.0, f1}, {-0.5, f2}};
        const double expected =
            2.0 * grt_symmetric_ito(f1, 0.5, 1.0) - 0.5 * grt_symmetric_ito(f2, 0.5, 1.0);
        CHECK(grt_symmetric_ito(terms, 0.5, 1.0) == doctest::Approx(expected).epsilon(1e-14));
    }
    SUBCASE("mixed degrees in a combination are rejected") {
        const ProductFunctional f1({kernel_vector(0.5, g)});
        const ProductFunctional f2({kernel_vector(0.5, g), kernel_vector(1.0, g)});
        const std::pair<double, ProductFunctional> terms[] = {{1.0, f1}, {1.0, f2}};
        CHECK_THROWS_AS(grt_symmetric_ito(terms, 0.5, 1.0), DomainError);
    }
}

TEST_CASE("chaos series reproduces the exponential moment on pinned subspaces") {
    const Grid g(8);
    const double T = 0.5, c = 1.0;
    const ConditionedLaw law = bridge_law(T, c, g);

    SUBCASE("zero vector gives the vacuum series") {
        const std::vector<double> coeffs = chaos_expansion_coeffs(CmVector::zero(g), 5, T, c);
        CHECK(coeffs[0] == 1.0);
        for (int n = 1; n <= 5; ++n) CHECK(coeffs[n] == 0.0);
    }

    SUBCASE("kernel vector at the pin, partial sums vs closed form") {
        const CmVector h = kernel_vector(T, g);
        const std::vector<double> coeffs = chaos_expansion_coeffs(h, 40, T, c);
        // Closed form: exp(<h_L,h> + |P h|^2/2 - |h|^2/2) = exp(c - T/2).
        const double closed = std::exp(c - T / 2.0);
        double partial = 0.0, factorial = 1.0;
        for (int n = 0; n <= 40; ++n) {
            if (n > 0) factorial *= n;
            partial += coeffs[n] / factorial;
        }
        CHECK(std::abs(partial - closed) <= 1e-8 * std::max(1.0, std::abs(closed)));
    }

    SUBCASE("random vector, partial sums vs closed form") {
        const CmVector h = 0.6 * random_vector(g, 9);
        const GaussianLaw1D one_d = conditioned_law(law, h);
        const double closed =
            std::exp(one_d.mean + 0.5 * one_d.variance - 0.5 * norm_squared(h));
        const std::vector<double> coeffs = chaos_expansion_coeffs(h, 40, T, c);
        double partial = 0.0, factorial = 1.0;
        for (int n = 0; n <= 40; ++n) {
            if (n > 0) factorial *= n;
            partial += coeffs[n] / factorial;
        }
        CHECK(std::abs(partial - closed) <= 1e-8 * std::max(1.0, std::abs(closed)));
    }

    SUBCASE("truncation error shrinks once the factorial wins") {
        const CmVector h = kernel_vector(T, g);
        const double closed = std::exp(c - T / 2.0);
        const std::vector<double> coeffs = chaos_expansion_coeffs(h, 40, T, c);
        std::vector<double> errors;
        double partial = 0.0, factorial = 1.0;
        for (int n = 0; n <= 40; ++n) {
            if (n > 0) factorial *= n;
            partial += coeffs[n] / factorial;
            errors.push_back(std::abs(partial - closed));
        }
        // Consecutive partial sums straddle the limit, so the error is
        // compared two orders apart; along that stride it decreases
        // strictly beyond N ~ e |h|^2 until the rounding floor.
        const int start = static_cast<int>(std::ceil(std::exp(1.0) * norm_squared(h))) + 2;
        for (size_t n = start; n + 2 < errors.size(); ++n) {
            if (errors[n] < 1e-15) break;
            CHECK(errors[n + 2] <= errors[n] + 1e-15);
        }
        CHECK(errors[30] < 1e-14);
    }
}

}  // TEST_SUITE
