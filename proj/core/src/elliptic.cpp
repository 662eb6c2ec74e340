#include "poisswell/elliptic.hpp"

#include "poisswell/errors.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace poisswell {

namespace {

double dot(ScalarField const& a, ScalarField const& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

ScalarField apply_constant_inverse(Spectral const& spectral, ScalarField const& r, double shift)
{
    auto rh = spectral.forward(r);
    auto const& k2 = spectral.grid().k_squared();
    for (std::size_t p = 0; p < rh.size(); ++p) {
        double const denom = k2[p] + shift;
        rh[p] = denom > 0.0 ? rh[p] / denom : Complex{};
    }
    return spectral.inverse_real(rh);
}

ScalarField solve_component(Spectral const& spectral, ScalarField const& rhs, ScalarField const& rho,
                            double rho_mean, ScreenedOptions const& options, ScreenedStats& stats)
{
    ScalarField x(rhs.size(), 0.0);
    if (max_abs(rhs) == 0.0) return x;

    ScalarField r = rhs;
    ScalarField z = apply_constant_inverse(spectral, r, rho_mean);
    double const rhs_norm = std::sqrt(dot(r, z));
    ScalarField p = z;
    double rz = dot(r, z);
    double rel = 1.0;
    for (int it = 1; it <= options.max_iters; ++it) {
        auto const q = apply_screened(spectral, p, rho);
        double const pq = dot(p, q);
        if (!(pq > 0.0)) break;
        double const alpha = rz / pq;
        axpy(alpha, p, x);
        axpy(-alpha, q, r);
        z = apply_constant_inverse(spectral, r, rho_mean);
        double rz_new = dot(r, z);
        rel = std::sqrt(std::max(rz_new, 0.0)) / rhs_norm;
        stats.iterations = std::max(stats.iterations, it);
        if (rel <= options.tolerance) {
            // Recompute the true residual so accumulated recurrence drift cannot hide.
            r = rhs - apply_screened(spectral, x, rho);
            z = apply_constant_inverse(spectral, r, rho_mean);
            rz_new = dot(r, z);
            rel = std::sqrt(std::max(rz_new, 0.0)) / rhs_norm;
            if (rel <= 10.0 * options.tolerance) {
                stats.relative_residual = std::max(stats.relative_residual, rel);
                return x;
            }
        }
        double const beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = z[i] + beta * p[i];
    }
    char msg[96];
    std::snprintf(msg, sizeof msg, "screened vector solve did not converge (relative residual %.3g)", rel);
    throw NonConvergence(msg, options.max_iters, rel);
}

} // namespace

ScalarField solve_poisson_neutral(Spectral const& spectral, ScalarField const& rho)
{
    auto rh = spectral.forward(rho);
    auto const& k2 = spectral.grid().k_squared();
    for (std::size_t p = 0; p < rh.size(); ++p) {
        rh[p] = k2[p] > 0.0 ? rh[p] / k2[p] : Complex{};
    }
    return spectral.inverse_real(rh);
}

ScalarField apply_screened(Spectral const& spectral, ScalarField const& x, ScalarField const& rho)
{
    auto out = spectral.laplacian(x);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = -out[i] + rho[i] * x[i];
    return out;
}

VectorField solve_screened_vector(Spectral const& spectral, VectorField const& rhs, ScalarField const& rho,
                                  ScreenedOptions const& options, ScreenedStats* stats)
{
    ScreenedStats local;
    double const rho_mean = mean(rho);
    VectorField a;

    if (max_abs(rho) == 0.0) {
        for (int c = 0; c < 3; ++c) {
            double const m = mean(rhs[c]);
            if (std::abs(m) > 1e-10 * std::max(1.0, max_abs(rhs[c]))) {
                throw NonConvergence("screened vector solve: vacuum density with non-neutral source", 0,
                                     std::abs(m));
            }
            a[c] = solve_poisson_neutral(spectral, rhs[c]);
        }
        if (stats) *stats = local;
        return a;
    }

    for (int c = 0; c < 3; ++c) {
        a[c] = solve_component(spectral, rhs[c], rho, rho_mean, options, local);
    }
    if (stats) *stats = local;
    return a;
}

} // namespace poisswell
