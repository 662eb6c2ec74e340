#include "doctest.h"

#include "poisswell/diagnostics.hpp"
#include "poisswell/errors.hpp"
#include "poisswell/initial_data.hpp"

#include <cmath>
#include <limits>

using namespace poisswell;

namespace {

TimeSample travelling(Grid const& g, double t, double eps)
{
    // rho = 1 + 0.5 sin(x - t) with J = rho exactly solves d_t rho + d_x J = 0.
    TimeSample s;
    s.t = t;
    s.rho = sample(g, [t](double x, double, double) { return 1.0 + 0.5 * std::sin(x - t); });
    s.J = zero_vector(g);
    s.J[0] = s.rho;
    s.V = sample(g, [t](double x, double, double) { return t * std::sin(x); });
    s.A = zero_vector(g);
    s.A[0] = sample(g, [eps](double x, double, double) { return eps * std::cos(x); });
    return s;
}

} // namespace

TEST_CASE("charge is the L2 norm")
{
    Grid const g = Grid::cube(1, 16);
    SpinorField a = zero_spinor(g);
    for (auto& z : a[1]) z = Complex(0.0, 2.0);
    CHECK(charge(g, a) == doctest::Approx(2.0 * std::sqrt(two_pi)));
}

TEST_CASE("continuity residual is the centred-difference truncation error")
{
    Grid const g = Grid::cube(1, 32);
    Spectral const sp(g);
    for (double h : {0.1, 0.05}) {
        std::vector<TimeSample> w{travelling(g, 0.3 - h, 0.1), travelling(g, 0.3, 0.1), travelling(g, 0.3 + h, 0.1)};
        // (rho(t+h) - rho(t-h)) / 2h - d_t rho = -0.5 cos(x - t) (sin h / h - 1).
        double const expect = 0.5 * std::abs(std::sin(h) / h - 1.0) * std::sqrt(M_PI);
        CHECK(continuity_residual(sp, w) == doctest::Approx(expect).epsilon(1e-6));
    }
    std::vector<TimeSample> two{travelling(g, 0.0, 0.1), travelling(g, 0.1, 0.1)};
    CHECK_THROWS_AS(continuity_residual(sp, two), InsufficientHistory);
}

TEST_CASE("gauge residual vanishes for div A = -eps d_t V")
{
    Grid const g = Grid::cube(1, 32);
    Spectral const sp(g);
    std::vector<TimeSample> w{travelling(g, 0.0, 0.2), travelling(g, 0.1, 0.2), travelling(g, 0.2, 0.2)};
    CHECK(gauge_residual(sp, w, 0.2) < 1e-13);
    CHECK(gauge_residual(sp, w, 0.4) == doctest::Approx(0.2 * std::sqrt(M_PI)));
}

TEST_CASE("functionals of a constant spinor")
{
    Grid const g = Grid::cube(1, 32);
    Spectral const sp(g);
    SpinorField a = zero_spinor(g);
    for (auto& z : a[0]) z = 1.0;
    double const eps = 0.5;
    auto const f = functionals(sp, a, zero_vector(g), eps, 3.0, 2.0, 1.0, 1.0);
    double const l2 = std::sqrt(two_pi);
    CHECK(f.E_s == doctest::Approx(l2));
    CHECK(f.E_s_mu == doctest::Approx(l2 + 2.0 * eps * l2));
    CHECK(f.E_s_mu12 == doctest::Approx(l2 + eps * l2));
    // M = 1 + 0 + 1 + eps (||a||_H1 + ||a||_W1inf + ||a||_W23)
    CHECK(f.M == doctest::Approx(2.0 + eps * (l2 + 1.0 + std::cbrt(two_pi))));
}

TEST_CASE("Schrodinger-Poisson energy of a plane wave")
{
    Grid const g = Grid::cube(1, 32);
    Spectral const sp(g);
    SpinorField psi = zero_spinor(g);
    for (std::size_t p = 0; p < g.size(); ++p) psi[0][p] = std::exp(Complex(0.0, 2.0 * g.coordinate(p, 0)));
    auto const V = sample(g, [](double x, double, double) { return std::sin(x); });
    CHECK(pauli_energy(sp, psi, V, 0.1) == doctest::Approx(0.04 * two_pi + M_PI));
}

TEST_CASE("blow-up monitor states")
{
    DiagnosticsRecord r;
    r.monitor_sum = 50.0;
    CHECK(blowup_monitor(r, 1.0) == MonitorStatus::ok);
    r.monitor_sum = 101.0;
    CHECK(blowup_monitor(r, 1.0) == MonitorStatus::triggered);
    r.monitor_sum = 2.0;
    r.tail_fraction = 0.2;
    CHECK(blowup_monitor(r, 1.0) == MonitorStatus::warning);
    r.monitor_sum = std::numeric_limits<double>::quiet_NaN();
    CHECK(blowup_monitor(r, 1.0) == MonitorStatus::triggered);
    r.monitor_sum = 3.0;
    r.tail_fraction = 0.0;
    CHECK(blowup_monitor(r, 1.0, BlowupThresholds{2.0, 0.1}) == MonitorStatus::triggered);
}

TEST_CASE("running maximum")
{
    std::vector<DiagnosticsRecord> rs(4);
    double const M[] = {1.5, 3.0, 2.0, 4.0};
    for (int i = 0; i < 4; ++i) rs[i].M = M[i];
    accumulate_running_max(rs);
    CHECK(rs[0].N == 1.5);
    CHECK(rs[2].N == 3.0);
    CHECK(rs[3].N == 4.0);
}

TEST_CASE("envelope check")
{
    std::vector<DiagnosticsRecord> flat(5);
    for (int i = 0; i < 5; ++i) {
        flat[i].t = 0.1 * i;
        flat[i].E_s_mu = 2.0;
        flat[i].M = flat[i].N = 1.0;
    }
    auto const ok = envelope_check(flat, 4.0);
    CHECK(ok.pass);
    CHECK(ok.C <= 1.01);
    CHECK(envelope_violation(flat, 4.0, ok.C) <= 1.0);

    auto growing = flat;
    for (int i = 0; i < 5; ++i) growing[i].E_s_mu = 2.0 * std::exp(50.0 * i);
    auto const bad = envelope_check(growing, 4.0, 10.0);
    CHECK_FALSE(bad.pass);
    CHECK(bad.max_violation_ratio > 1.0);
}

TEST_CASE("blow-up norm lower bound formula")
{
    double const eps = 0.01, C = 2.0, T = 0.5, s = 4.0;
    double const expect = 0.5 * (std::pow(std::abs(std::log(std::sqrt(eps) / (C * T))), 1.0 / 11.0) - 1.0);
    CHECK(blowup_norm_lower_bound(eps, C, T, s) == doctest::Approx(expect));
}

TEST_CASE("status names")
{
    CHECK(to_string(MonitorStatus::triggered) == "triggered");
    CHECK(to_string(RunStatus::blowup_detected) == "blowup_detected");
}
