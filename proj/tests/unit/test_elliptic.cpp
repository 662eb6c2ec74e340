#include "doctest.h"

#include "poisswell/elliptic.hpp"
#include "poisswell/errors.hpp"

#include "../support/oracles.hpp"

#include <random>

using namespace poisswell;

TEST_CASE("poisson: manufactured mode sums")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 9; ++trial) {
        int const dim = 1 + trial % 3;
        Grid const g = Grid::cube(dim, dim == 3 ? 16 : 32, 3.0);
        Spectral const sp(g);
        auto const modes = oracle::random_modes(rng, dim, 1 + trial % 5, 5);
        auto rho = oracle::mode_sum_neg_laplacian(g, modes);
        for (auto& x : rho) x += 2.5;
        auto const V = solve_poisson_neutral(sp, rho);
        CHECK(oracle::relative_l2(V, oracle::mode_sum(g, modes)) < 1e-12);
        CHECK(std::abs(mean(V)) < 1e-14);
    }
}

TEST_CASE("poisson: constant density gives zero potential")
{
    Grid const g = Grid::cube(2, 8);
    Spectral const sp(g);
    CHECK(max_abs(solve_poisson_neutral(sp, ScalarField(g.size(), 4.0))) < 1e-15);
}

TEST_CASE("screened: constant coefficient closed form")
{
    Grid const g = Grid::cube(1, 32);
    Spectral const sp(g);
    VectorField rhs = zero_vector(g);
    rhs[0] = sample(g, [](double x, double, double) { return std::sin(2 * x); });
    rhs[2] = ScalarField(g.size(), 3.0);
    auto const A = solve_screened_vector(sp, rhs, ScalarField(g.size(), 0.5));
    for (std::size_t p = 0; p < g.size(); ++p) {
        CHECK(A[0][p] == doctest::Approx(std::sin(2 * g.coordinate(p, 0)) / 4.5));
        CHECK(A[1][p] == doctest::Approx(0.0));
        CHECK(A[2][p] == doctest::Approx(6.0));
    }
}

TEST_CASE("property: screened solve matches a dense direct solve")
{
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        double const L = 2.0 + 6.0 * u(rng);
        Grid const g = Grid::cube(1, 32, L);
        Spectral const sp(g);
        ScalarField rho(g.size());
        // Variable, strictly positive coefficients of increasing contrast.
        for (auto& r : rho) r = 0.05 + (trial + 1) * u(rng);
        VectorField rhs;
        for (auto& c : rhs) {
            c.resize(g.size());
            for (auto& x : c) x = u(rng) - 0.5;
        }
        ScreenedStats stats;
        auto const A = solve_screened_vector(sp, rhs, rho, {}, &stats);
        CHECK(stats.relative_residual <= 1e-12);
        auto const M = oracle::dense_screened_matrix(32, L, rho);
        for (int i = 0; i < 3; ++i) CHECK(oracle::relative_l2(A[i], oracle::gauss_solve(M, rhs[i])) < 1e-8);
    }
}

TEST_CASE("screened: apply_screened inverts the solve")
{
    Grid const g = Grid::cube(2, 16);
    Spectral const sp(g);
    std::mt19937_64 rng(2);
    auto const rho = [&] {
        auto r = oracle::mode_sum(g, oracle::random_modes(rng, 2, 3, 2));
        for (auto& x : r) x = 1.0 + 0.2 * x;
        return r;
    }();
    VectorField rhs;
    for (auto& c : rhs) c = oracle::mode_sum(g, oracle::random_modes(rng, 2, 3, 3));
    auto const A = solve_screened_vector(sp, rhs, rho);
    for (int i = 0; i < 3; ++i) CHECK(oracle::relative_l2(apply_screened(sp, A[i], rho), rhs[i]) < 1e-10);
}

TEST_CASE("screened: vanishing density pins the zero mode")
{
    Grid const g = Grid::cube(1, 16);
    Spectral const sp(g);
    VectorField rhs = zero_vector(g);
    rhs[1] = sample(g, [](double x, double, double) { return std::cos(x); });
    auto const A = solve_screened_vector(sp, rhs, zero_scalar(g));
    for (std::size_t p = 0; p < g.size(); ++p) CHECK(A[1][p] == doctest::Approx(std::cos(g.coordinate(p, 0))));
}

TEST_CASE("screened: iteration cap raises NonConvergence")
{
    Grid const g = Grid::cube(1, 32);
    Spectral const sp(g);
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ScalarField rho(g.size());
    for (auto& r : rho) r = 0.01 + 5.0 * u(rng);
    VectorField rhs;
    for (auto& c : rhs) {
        c.resize(g.size());
        for (auto& x : c) x = u(rng);
    }
    CHECK_THROWS_AS(solve_screened_vector(sp, rhs, rho, {1e-14, 1}), NonConvergence);
}
