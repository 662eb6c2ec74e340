#pragma once

#include "poisswell/fields.hpp"
#include "poisswell/spectral.hpp"

namespace poisswell {

/// Zero-mean V with -Laplacian V = rho - mean(rho) (neutralizing background).
ScalarField solve_poisson_neutral(Spectral const& spectral, ScalarField const& rho);

struct ScreenedOptions {
    /// Target for the preconditioned residual sqrt(r.Pr) / sqrt(rhs.P rhs), P = (-Lap + mean(rho))^{-1}.
    double tolerance = 1e-12;
    int max_iters = 200;

    bool operator==(ScreenedOptions const&) const = default;
};

struct ScreenedStats {
    int iterations = 0;
    double relative_residual = 0.0;
};

/// Solve (-Laplacian + rho) A = rhs componentwise for rho >= 0.
///
/// Conjugate gradients preconditioned with the constant-coefficient inverse
/// (-Laplacian + mean(rho))^{-1}. When rho vanishes identically the zero mode of
/// A is pinned to 0, which requires a zero-mean right-hand side.
/// Throws NonConvergence when the residual target is not met within max_iters.
VectorField solve_screened_vector(Spectral const& spectral, VectorField const& rhs, ScalarField const& rho,
                                  ScreenedOptions const& options = {}, ScreenedStats* stats = nullptr);

/// (-Laplacian + rho) applied to one component, no dealiasing.
ScalarField apply_screened(Spectral const& spectral, ScalarField const& x, ScalarField const& rho);

} // namespace poisswell
