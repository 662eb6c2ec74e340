#include "doctest.h"

#include "poisswell/norms.hpp"

#include "../support/oracles.hpp"

#include <random>

using namespace poisswell;

TEST_CASE("l2 norm of a cosine")
{
    Grid const g = Grid::cube(2, 16);
    auto const f = sample(g, [](double x, double y, double) { return std::cos(2 * x + y); });
    // int cos^2 over (2 pi)^2 is 2 pi^2.
    CHECK(l2_norm(g, f) == doctest::Approx(std::sqrt(2.0) * M_PI));
}

TEST_CASE("Fourier-weight Sobolev norm of a single mode")
{
    Grid const g = Grid::cube(1, 32);
    Spectral const sp(g);
    auto const f = sample(g, [](double x, double, double) { return std::sin(3 * x); });
    double const l2 = std::sqrt(M_PI);
    for (double s : {0.0, 0.5, 1.0, 2.5, 4.0}) {
        CHECK(sobolev_norm(sp, f, s) == doctest::Approx(std::pow(10.0, s / 2) * l2));
    }
}

TEST_CASE("derivative-sum Sobolev norm of a single mode")
{
    Grid const g = Grid::cube(1, 32);
    Spectral const sp(g);
    auto const f = sample(g, [](double x, double, double) { return std::sin(3 * x); });
    double const l2 = std::sqrt(M_PI);
    // ||f|| + ||f'|| + ||f''|| = (1 + 3 + 9) ||f||.
    CHECK(sobolev_norm(sp, f, SobolevIndex{2.0, SobolevIndex::Variant::derivative_sum}) == doctest::Approx(13 * l2));
}

TEST_CASE("property: Sobolev norm is monotone in s and scales linearly")
{
    std::mt19937_64 rng(8);
    Grid const g = Grid::cube(2, 16);
    Spectral const sp(g);
    for (int trial = 0; trial < 10; ++trial) {
        auto const f = oracle::mode_sum(g, oracle::random_modes(rng, 2, 4, 4));
        double prev = 0.0;
        for (double s = 0.0; s <= 4.0; s += 0.5) {
            double const n = sobolev_norm(sp, f, s);
            CHECK(n >= prev);
            prev = n;
        }
        ScalarField twice = f;
        for (auto& x : twice) x *= -2.0;
        CHECK(sobolev_norm(sp, twice, 3.0) == doctest::Approx(2.0 * sobolev_norm(sp, f, 3.0)));
    }
}

TEST_CASE("pointwise norms of sin x")
{
    Grid const g = Grid::cube(1, 64);
    Spectral const sp(g);
    auto const f = sample(g, [](double x, double, double) { return std::sin(x); });
    auto const n = pointwise_norms(sp, f);
    CHECK(n.linf == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(n.w1inf == doctest::Approx(2.0).epsilon(1e-3));
    // ||f||_L3 + ||f'||_L3 + ||f''||_L3 with ||sin||_L3^3 = int |sin|^3 = 8/3.
    double const l3 = std::cbrt(8.0 / 3.0);
    CHECK(n.w23 == doctest::Approx(3 * l3).epsilon(1e-4));
}

TEST_CASE("inner product is conjugate-linear in the first slot")
{
    Grid const g = Grid::cube(1, 16);
    SpinorField f = zero_spinor(g), h = zero_spinor(g);
    for (std::size_t p = 0; p < g.size(); ++p) {
        f[0][p] = Complex(0.0, 1.0);
        h[0][p] = 2.0;
    }
    auto const ip = inner_product(g, f, h);
    CHECK(ip.real() == doctest::Approx(0.0));
    CHECK(ip.imag() == doctest::Approx(-2.0 * two_pi));
}
