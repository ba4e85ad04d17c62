#include <doctest.h>

#include <cmath>
#include <random>

#include "blowuplab/grid.hpp"
#include "blowuplab/quadrature.hpp"

using namespace blowuplab;

namespace {
const double kPi = std::acos(-1.0);

ScalarField random_field(const Grid& g, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ScalarField f(g);
    for (long i = 0; i < f.size(); ++i) f.data()[i] = dist(rng);
    return f;
}
}  // namespace

TEST_CASE("integrate: constants are exact on bounded domains") {
    Grid g{bounded_domain(kPi, kPi), 16, 16};
    ScalarField one(g);
    one.fill(1.0);
    CHECK(integrate(one) == doctest::Approx(kPi * kPi * kPi).epsilon(1e-13));
    ScalarField zero(g);
    CHECK(integrate(zero) == 0.0);
}

TEST_CASE("integrate: exponential weight of the mixed semi-infinite family") {
    // int phi = 4 a^2 / (pi^2 alpha) for phi = e^{-alpha z} sin sin, a = pi
    const double alpha = 2.0 / 1.8;
    Grid g{semi_infinite_domain(kPi, 18.0), 32, 256};
    ScalarField phi = ScalarField::sample(g, [&](double x1, double x2, double z) {
        return std::exp(-alpha * z) * std::sin(x1) * std::sin(x2);
    });
    const double exact = 4.0 * kPi * kPi / (kPi * kPi * alpha);
    CHECK(integrate(phi) == doctest::Approx(exact).epsilon(2e-3));
    CHECK(std::sqrt(integrate(phi)) ==
          doctest::Approx(2.0 * kPi / (kPi * std::sqrt(alpha))).epsilon(1e-3));
}

TEST_CASE("integrate: linearity to round-off") {
    Grid g{bounded_domain(kPi, kPi), 12, 20};
    ScalarField f = random_field(g, 7), h = random_field(g, 8);
    const double a = 1.37, b = -2.25;
    ScalarField comb = linear_combination(a, f, b, h);
    CHECK(integrate(comb) ==
          doctest::Approx(a * integrate(f) + b * integrate(h)).epsilon(1e-12));
}

TEST_CASE("integrate: 2nd-order refinement on a smooth separable field") {
    auto err = [&](int nx, int nz) {
        Grid g{semi_infinite_domain(kPi, 16.0), nx, nz};
        ScalarField f = ScalarField::sample(g, [](double x1, double x2, double z) {
            return std::sin(x1) * std::sin(x2) * z * std::exp(-z);
        });
        const double exact =
            4.0 * integrate_adaptive([](double z) { return z * std::exp(-z); }, 0.0,
                                     16.0, 1e-14);
        return std::abs(integrate(f) - exact);
    };
    const double e1 = err(8, 64), e2 = err(16, 128);
    CHECK(e1 / e2 > 3.5);
    CHECK(e1 / e2 < 4.5);
}

TEST_CASE("weighted_integral: zero and separable closed form") {
    Grid g{semi_infinite_domain(kPi, 20.0), 24, 256};
    ScalarField z(g);
    ScalarField w = ScalarField::sample(g, [](double x1, double x2, double zz) {
        return std::sin(x1) * std::sin(x2) * std::exp(-zz);
    });
    CHECK(weighted_integral(z, w) == 0.0);
    // int (sin sin e^{-z})^2 = (pi/2)^2 * 1/2
    CHECK(weighted_integral(w, w) ==
          doctest::Approx(kPi * kPi / 8.0).epsilon(5e-3));
}

TEST_CASE("weighted_integral: matches a high-resolution separable oracle") {
    // u0-like field against the mixed weight; x-quadrature of sine products
    // is exact, so z refinement alone reaches the oracle
    const double alpha = 2.0 / 1.8;
    Grid g{semi_infinite_domain(kPi, 18.0), 16, 16384};
    ScalarField u0 = ScalarField::sample(g, [](double x1, double x2, double z) {
        return 20.0 * std::sin(x1) * std::sin(x2) * z * std::exp(-z);
    });
    ScalarField phi = ScalarField::sample(g, [&](double x1, double x2, double z) {
        return std::exp(-alpha * z) * std::sin(x1) * std::sin(x2);
    });
    const double zint = integrate_adaptive(
        [&](double z) { return z * std::exp(-(1.0 + alpha) * z); }, 0.0, 18.0, 1e-14);
    const double oracle = 20.0 * (kPi / 2.0) * (kPi / 2.0) * zint;
    CHECK(weighted_integral(u0, phi) == doctest::Approx(oracle).epsilon(1e-6));
}

TEST_CASE("weighted_integral equals integrate of the product") {
    Grid g{bounded_domain(kPi, kPi), 10, 14};
    ScalarField f = random_field(g, 3), w = random_field(g, 4);
    ScalarField prod(g);
    for (long i = 0; i < f.size(); ++i) prod.data()[i] = f.data()[i] * w.data()[i];
    CHECK(weighted_integral(f, w) == doctest::Approx(integrate(prod)).epsilon(1e-14));
}

TEST_CASE("sup_norm basics and scan oracle") {
    Grid g{bounded_domain(kPi, kPi), 8, 8};
    ScalarField z(g);
    CHECK(sup_norm(z) == 0.0);
    ScalarField c(g);
    c.fill(-4.0);
    CHECK(sup_norm(c) == 4.0);
    ScalarField f = random_field(g, 12);
    double m = 0.0;
    for (long i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f.data()[i]));
    CHECK(sup_norm(f) == m);
}

TEST_CASE("sobolev_norm: zero, analytic L2, monotonicity, range guard") {
    Grid g{bounded_domain(kPi, kPi), 32, 32};
    ScalarField z(g);
    CHECK(sobolev_norm(z, 2) == 0.0);
    ScalarField f = ScalarField::sample(g, [](double x1, double x2, double zz) {
        return std::sin(x1) * std::sin(x2) * std::sin(zz);
    });
    // trapezoid is exact for sin^2 over a full period
    CHECK(sobolev_norm(f, 0) ==
          doctest::Approx(std::pow(kPi / 2.0, 1.5)).epsilon(1e-12));
    ScalarField r = random_field(g, 5);
    const double h0 = sobolev_norm(r, 0), h1 = sobolev_norm(r, 1), h2 = sobolev_norm(r, 2);
    CHECK(h0 <= h1);
    CHECK(h1 <= h2);
    CHECK_THROWS_AS(sobolev_norm(r, 3), ParameterError);
}

TEST_CASE("shape mismatch is rejected") {
    Grid g1{bounded_domain(kPi, kPi), 8, 8};
    Grid g2{bounded_domain(kPi, kPi), 8, 10};
    ScalarField a(g1), b(g2);
    CHECK_THROWS_AS(weighted_integral(a, b), ShapeMismatch);
}

TEST_CASE("masked log integral ignores boundary and u <= 0 nodes") {
    Grid g{bounded_domain(kPi, kPi), 12, 12};
    ScalarField u(g);
    u.fill(std::exp(1.0));
    // boundary values deliberately poisoned; the mask must skip them
    for (int i = 0; i <= g.nx; ++i)
        for (int j = 0; j <= g.nz; ++j) {
            u(0, i, j) = 0.0;
            u(g.nx, i, j) = 0.0;
            u(i, 0, j) = 0.0;
            u(i, g.nx, j) = 0.0;
        }
    ScalarField phi(g);
    phi.fill(1.0);
    // log e = 1, so the integral equals the masked quadrature of phi
    double expected = 0.0;
    const double w = g.hx() * g.hx() * g.hz();
    expected = w * (g.nx - 1) * (g.nx - 1) * (g.nz - 1);
    CHECK(masked_log_integral(u, phi) == doctest::Approx(expected).epsilon(1e-13));
}
