#include "doctest.h"

#include "poisswell/harness.hpp"
#include "poisswell/norms.hpp"

#include <random>

using namespace poisswell;

TEST_CASE("log-log fit recovers exact power laws")
{
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        double const p = u(rng), c = std::exp(u(rng));
        std::vector<double> x{0.4, 0.2, 0.1, 0.05}, y;
        for (double e : x) y.push_back(c * std::pow(e, p));
        auto const fit = fit_loglog(x, y);
        CHECK(fit.defined);
        CHECK(fit.points == 4);
        CHECK(fit.slope == doctest::Approx(p));
        CHECK(std::exp(fit.intercept) == doctest::Approx(c));
    }
}

TEST_CASE("log-log fit needs three positive points")
{
    CHECK_FALSE(fit_loglog({0.1, 0.2}, {1.0, 2.0}).defined);
    CHECK_FALSE(fit_loglog({0.1, 0.2, 0.4}, {1.0, 0.0, 2.0}).defined);
    CHECK(fit_loglog({0.1, 0.2, 0.4, 0.8}, {1.0, 0.0, 2.0, 4.0}).points == 3);
}

TEST_CASE("strictly decreasing")
{
    CHECK(strictly_decreasing({3.0, 2.0, 1.0}));
    CHECK_FALSE(strictly_decreasing({3.0, 3.0, 1.0}));
    CHECK_FALSE(strictly_decreasing({1.0, 2.0}));
}

TEST_CASE("property: phase-invariant distance ignores a global phase")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Grid const g = Grid::cube(1, 32);
        auto const f = random_smooth_spinor(g, seed);
        SpinorField h = f;
        Complex const ph = std::exp(Complex(0.0, 0.7 * seed));
        for (auto& c : h)
            for (auto& z : c) z *= ph;
        CHECK(phase_invariant_distance(g, f, h) < 1e-6);
        auto const other = random_smooth_spinor(g, seed + 100);
        double const d = phase_invariant_distance(g, f, other);
        CHECK(d > 0.0);
        CHECK(d <= l2_norm(g, SpinorField{f[0] - other[0], f[1] - other[1]}) + 1e-12);
    }
}

TEST_CASE("default Wigner base points")
{
    ExperimentSetup setup;
    setup.grid = Grid::cube(2, 16);
    auto const pts = wigner_base_points(setup);
    REQUIRE(pts.size() == 3);
    CHECK(pts[0] == setup.grid.index(2, 0, 0));
    CHECK(pts[1] == setup.grid.index(6, 0, 0));
    CHECK(pts[2] == setup.grid.index(10, 0, 0));
    setup.wigner_points = {5};
    CHECK(wigner_base_points(setup) == std::vector<std::size_t>{5});
}

TEST_CASE("small ladder produces one rung per epsilon")
{
    ExperimentSetup setup;
    setup.grid = Grid::cube(1, 64);
    setup.data.family = InitialFamily::gaussian_bump;
    setup.params.t_final = 0.05;
    setup.params.dt = 1e-3;
    setup.params.sample_every = 10;
    setup.epsilons = {0.2, 0.1, 0.05};
    setup.threads = 2;
    auto const ladder = epsilon_ladder(setup);
    REQUIRE(ladder.rungs.size() == 3);
    CHECK(ladder.preflight_ok);
    CHECK(ladder.error_monotone);
    CHECK(ladder.error_slope.defined);
    CHECK(ladder.error_slope.slope > 0.5);
    for (auto const& r : ladder.rungs) CHECK(r.status == RunStatus::completed);
    auto const dc = density_current_limit(ladder);
    CHECK(dc.eps_term_ratios.size() == 2);
}

TEST_CASE("uniform data gives a degenerate ladder")
{
    ExperimentSetup setup;
    setup.grid = Grid::cube(1, 32);
    setup.params.t_final = 0.02;
    setup.params.dt = 1e-2;
    setup.epsilons = {0.2, 0.1, 0.05};
    auto const ladder = epsilon_ladder(setup);
    CHECK(ladder.degenerate);
    CHECK_FALSE(ladder.error_slope.defined);
}
