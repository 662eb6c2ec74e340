#pragma once

#include "poisswell/diagnostics.hpp"
#include "poisswell/pauli_solver.hpp"
#include "poisswell/spectral.hpp"
#include "poisswell/state.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace poisswell {

/// Time derivative of the WKB variables.
struct HydroRhs {
    SpinorField da;
    VectorField du;
    ScalarField dS;
};

/// V from the neutral Poisson problem with source |a|^2; A from
/// (-Lap + rho) A = -eps w - 2 eps v + rho u; B = curl A.
Potentials hydro_potentials(Spectral const& spectral, HydroState const& state, SimParams const& params);

/// d_t a = -(1/2)[(u-A) . grad a + div((u-A) a)] + (i eps/2) Lap a + (i/2)(sigma.B) a
/// d_t u = -(u-A) . grad u + (grad A)^T u - grad(|A|^2/2 + V)
/// d_t S = -(1/2)|u-A|^2 - V
/// Every binary product is dealiased. With u = grad S the u-equation is the gradient of the S-equation.
HydroRhs wkb_rhs(Spectral const& spectral, HydroState const& state, Potentials const& potentials);

/// wkb_rhs with the dispersive term removed (the eps = 0 system).
HydroRhs euler_rhs(Spectral const& spectral, HydroState const& state, Potentials const& potentials);

/// d_t rho + div(rho(u-A)) computed from an a-equation right-hand side.
ScalarField euler_density_residual(Spectral const& spectral, HydroState const& state, Potentials const& potentials,
                                   HydroRhs const& rhs);

/// dx / (||u - A||_inf + eps k_max / 2).
double hydro_stable_dt(Spectral const& spectral, HydroState const& state, Potentials const& potentials);

using RhsFunction = std::function<HydroRhs(HydroState const&)>;

/// Classical RK4. When the state tracks its phase, u is replaced by mean_velocity + grad S
/// after the step; the relative mismatch removed by that projection is written to `mismatch`.
/// `first` may supply rhs(state) when already computed.
HydroState step_rk4(Spectral const& spectral, HydroState const& state, double dt, RhsFunction const& rhs,
                    HydroRhs const* first = nullptr, double* mismatch = nullptr);

/// Self-consistent rhs for the state's epsilon (wkb_rhs, or euler_rhs when epsilon = 0).
RhsFunction self_consistent_rhs(Spectral const& spectral, SimParams const& params);

struct HydroRun {
    SimParams params;
    double dt = 0.0;
    std::size_t steps = 0;
    std::vector<double> times;
    std::vector<HydroState> snapshots;
    std::vector<Potentials> potentials;
    std::vector<DiagnosticsRecord> records;
    HydroState final_state;
    RunStatus status = RunStatus::completed;
    std::string message;
    /// Largest projection mismatch ||u - grad S|| / ||u|| over all steps.
    double max_gradient_mismatch = 0.0;
    /// Largest ||curl u|| / ||u|| over the samples.
    double max_curl_ratio = 0.0;
};

/// Integrate the WKB system (or the Euler system when params.epsilon = 0) to params.t_final.
/// The state's epsilon is overwritten by params.epsilon.
HydroRun run_hydro(Spectral const& spectral, HydroState const& init, SimParams const& params,
                   RunOptions const& options = {});

/// Throws BlowupDetected or StabilityViolation unless the run completed.
template <class Run>
void ensure_completed(Run const& run)
{
    if (run.status == RunStatus::completed) return;
    if (run.status == RunStatus::blowup_detected) {
        auto const& r = run.records.back();
        throw BlowupDetected(run.message, r.t, r.monitor_sum);
    }
    throw StabilityViolation(run.message, run.dt, 0.0);
}

/// Field-form variables: E = -grad V - d_t A, B = curl A and the velocity u - A.
struct FieldForm {
    VectorField E;
    VectorField B;
    VectorField velocity;
};

/// d_t A by a centred difference over the neighbouring samples of `index`.
/// Throws InsufficientHistory at the first and last sample.
FieldForm euler_fields_form(Spectral const& spectral, HydroRun const& run, std::size_t index);

/// (E, B, u-A) from explicit neighbours: potentials at t - h and t + h around (state, potentials) at t.
FieldForm euler_fields_form(Spectral const& spectral, HydroState const& state, Potentials const& potentials,
                            Potentials const& before, Potentials const& after, double span);

} // namespace poisswell
