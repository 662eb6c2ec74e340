#pragma once

#include "poisswell/elliptic.hpp"
#include "poisswell/fields.hpp"

#include <array>
#include <optional>

namespace poisswell {

/// WKB amplitude, velocity and phase at one instant.
///
/// The velocity is u = mean_velocity + grad S with S periodic. A nonzero
/// mean velocity represents the linear part of the phase (plane-wave data);
/// a periodic gradient alone always has zero mean.
struct HydroState {
    SpinorField a;
    VectorField u;
    ScalarField S;
    std::array<double, 3> mean_velocity{0.0, 0.0, 0.0};
    bool phase_tracked = true;
    double t = 0.0;
    double epsilon = 0.0;
};

/// Scalar potential V, vector potential A and B = curl A; E = -grad V - dA/dt when available.
struct Potentials {
    ScalarField V;
    VectorField A;
    VectorField B;
    std::optional<VectorField> E;
};

struct SourceTerms {
    ScalarField rho;
    VectorField w;
    VectorField v;
    VectorField J;
};

/// How often the self-consistent potentials are refreshed inside one spinor step.
enum class PotentialRefresh {
    /// Potentials from the start of the step, frozen for the whole step (first order in dt).
    lagged,
    /// Predictor step with frozen potentials, then a corrector whose second half uses
    /// potentials of the predicted state (second order in dt).
    predictor_corrector,
};

struct SimParams {
    /// Semiclassical parameter; 0 selects the Euler-Poisswell system.
    double epsilon = 0.1;
    double dt = 1e-3;
    double t_final = 0.5;
    /// Regularity index used by the diagnostics functionals.
    double s = 4.0;
    double mu = 1.0;
    double mu1 = 1.0;
    double mu2 = 1.0;
    ScreenedOptions screened{};
    /// Emit a sample every this many steps (the final time is always sampled).
    int sample_every = 10;
    /// Self-consistent scalar potential on/off.
    bool electric = true;
    /// Self-consistent vector potential (and Stern-Gerlach term) on/off.
    bool magnetic = true;
    PotentialRefresh refresh = PotentialRefresh::predictor_corrector;
    /// Keep full state snapshots at sample times in the run object.
    bool keep_snapshots = true;

    /// Throws ValidationError naming the offending field.
    void validate() const;

    bool operator==(SimParams const&) const = default;
};

} // namespace poisswell
