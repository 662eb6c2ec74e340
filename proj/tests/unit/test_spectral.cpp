#include "doctest.h"

#include "poisswell/grid.hpp"
#include "poisswell/spectral.hpp"

#include "../support/oracles.hpp"

#include <random>

using namespace poisswell;

TEST_CASE("grid geometry")
{
    Grid const g(2, {8, 4, 1}, {2.0, 3.0, 1.0});
    CHECK(g.size() == 32);
    CHECK(g.spacing(0) == doctest::Approx(0.25));
    CHECK(g.volume() == doctest::Approx(6.0));
    CHECK(g.points(2) == 1);
    CHECK(g.mode(0, 3) == 3);
    CHECK(g.mode(0, 5) == -3);
    auto const idx = g.index(3, 2, 0);
    CHECK(g.unravel(idx) == std::array<int, 3>{3, 2, 0});
    CHECK(g.coordinate(idx, 0) == doctest::Approx(0.75));
    CHECK(g.coordinate(idx, 1) == doctest::Approx(1.5));
    CHECK(g.min_spacing() == doctest::Approx(0.25));
}

TEST_CASE("dealias mask keeps |m| <= N/3")
{
    Grid const g = Grid::cube(1, 16);
    auto const& mask = g.dealias_mask();
    for (int j = 0; j < 16; ++j) CHECK(static_cast<bool>(mask[j]) == (std::abs(g.mode(0, j)) <= 5));
}

TEST_CASE("forward/inverse round trip")
{
    Grid const g = Grid::cube(2, 16);
    Spectral const sp(g);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n;
    ComplexField f(g.size());
    for (auto& z : f) z = {n(rng), n(rng)};
    auto const back = sp.inverse(sp.forward(f));
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::abs(back[i] - f[i]) < 1e-13);
}

TEST_CASE("property: spectral derivatives of random mode sums match closed forms")
{
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 12; ++trial) {
        int const dim = 1 + trial % 3;
        Grid const g(dim, {32, dim >= 2 ? 16 : 1, dim >= 3 ? 8 : 1}, {two_pi, 4.0, 5.0});
        Spectral const sp(g);
        auto const modes = oracle::random_modes(rng, dim, 4, 3);
        auto const f = oracle::mode_sum(g, modes);
        for (int axis = 0; axis < dim; ++axis) {
            CHECK(oracle::relative_l2(sp.derivative(f, axis), oracle::mode_sum_derivative(g, modes, axis)) < 1e-12);
        }
        auto lap = sp.laplacian(f);
        for (auto& x : lap) x = -x;
        CHECK(oracle::relative_l2(lap, oracle::mode_sum_neg_laplacian(g, modes)) < 1e-12);
    }
}

TEST_CASE("divergence of a curl vanishes and curl of a gradient vanishes")
{
    Grid const g = Grid::cube(3, 16);
    Spectral const sp(g);
    std::mt19937_64 rng(5);
    VectorField v;
    for (auto& c : v) c = oracle::mode_sum(g, oracle::random_modes(rng, 3, 3, 3));
    CHECK(max_abs(sp.divergence(sp.curl(v))) < 1e-12);
    auto const grad = sp.gradient(v[0]);
    for (auto const& c : sp.curl(grad)) CHECK(max_abs(c) < 1e-12);
}

TEST_CASE("curl in 1D only sees x-derivatives")
{
    Grid const g = Grid::cube(1, 32);
    Spectral const sp(g);
    VectorField A = zero_vector(g);
    A[1] = sample(g, [](double x, double, double) { return std::sin(x); });
    auto const B = sp.curl(A);
    CHECK(max_abs(B[0]) < 1e-14);
    CHECK(max_abs(B[1]) < 1e-14);
    for (std::size_t p = 0; p < g.size(); ++p) CHECK(B[2][p] == doctest::Approx(std::cos(g.coordinate(p, 0))));
}

TEST_CASE("dealias removes high modes and keeps low ones")
{
    Grid const g = Grid::cube(1, 32);
    Spectral const sp(g);
    auto f = sample(g, [](double x, double, double) { return std::cos(3 * x) + std::cos(14 * x); });
    sp.dealias(f);
    for (std::size_t p = 0; p < g.size(); ++p) CHECK(f[p] == doctest::Approx(std::cos(3 * g.coordinate(p, 0))));
}

TEST_CASE("propagate_free applies exp(-i c k^2)")
{
    Grid const g = Grid::cube(1, 16);
    Spectral const sp(g);
    auto f = sample_complex(g, [](double x, double, double) { return std::exp(Complex(0.0, 2.0 * x)); });
    sp.propagate_free(f, 0.3);
    for (std::size_t p = 0; p < g.size(); ++p) {
        CHECK(std::abs(f[p] - std::exp(Complex(0.0, 2.0 * g.coordinate(p, 0) - 1.2))) < 1e-13);
    }
}

TEST_CASE("refine_periodic interpolates band-limited lines exactly")
{
    int const n = 16;
    ComplexField line(n);
    for (int j = 0; j < n; ++j) line[j] = std::exp(Complex(0.0, 3.0 * two_pi * j / n)) + std::cos(two_pi * j / n);
    auto const fine = refine_periodic(line, 2);
    REQUIRE(fine.size() == 2 * n);
    for (int j = 0; j < 2 * n; ++j) {
        double const x = two_pi * j / (2.0 * n);
        CHECK(std::abs(fine[j] - (std::exp(Complex(0.0, 3.0 * x)) + std::cos(x))) < 1e-13);
    }
}

TEST_CASE("tail fraction")
{
    Grid const g = Grid::cube(1, 64);
    Spectral const sp(g);
    auto const smooth = to_complex(sample(g, [](double x, double, double) { return std::cos(x); }));
    CHECK(sp.tail_fraction(smooth) < 1e-20);
    // Mode 18 sits in the top third of the retained band |m| <= 21.
    auto const rough = to_complex(sample(g, [](double x, double, double) { return std::cos(18 * x); }));
    CHECK(sp.tail_fraction(rough) == doctest::Approx(1.0));
}
