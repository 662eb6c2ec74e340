#pragma once

#include "poisswell/diagnostics.hpp"
#include "poisswell/fields.hpp"
#include "poisswell/spectral.hpp"
#include "poisswell/state.hpp"

#include <string>
#include <vector>

namespace poisswell {

/// Options shared by the time-stepping drivers.
struct RunOptions {
    BlowupThresholds thresholds{};
    /// Stop the run with status blowup_detected when the monitor triggers.
    bool stop_on_blowup = true;
    /// Compute continuity and gauge residuals around each sample (costs extra source evaluations).
    bool residuals = true;

    bool operator==(RunOptions const&) const = default;
};

/// Trajectory of the spinor system sampled every `sample_every` steps and at the final time.
struct SpinorRun {
    SimParams params;
    /// Step actually used: t_final / steps, never larger than params.dt.
    double dt = 0.0;
    std::size_t steps = 0;
    std::vector<double> times;
    /// Present when params.keep_snapshots is set.
    std::vector<SpinorField> snapshots;
    std::vector<Potentials> potentials;
    std::vector<DiagnosticsRecord> records;
    SpinorField final_state;
    RunStatus status = RunStatus::completed;
    std::string message;
};

/// V from the neutral Poisson problem, A from (-Lap + rho) A = Im(conj(psi) eps grad psi) - eps curl(conj(psi) sigma psi),
/// B = curl A. Couplings switched off in `params` give zero fields.
Potentials pauli_potentials(Spectral const& spectral, SpinorField const& psi, SimParams const& params);

/// 0.5 min(dx / ||A||_inf, eps / ||V + |A|^2/2||_inf).
double pauli_stable_dt(Spectral const& spectral, Potentials const& potentials, double epsilon);

/// One step of size params.dt. `start` may pass the potentials of psi when already known.
/// Throws StabilityViolation when params.dt exceeds pauli_stable_dt.
SpinorField step_pauli(Spectral const& spectral, SpinorField const& psi, SimParams const& params,
                       Potentials const* start = nullptr);

/// Integrate from psi0 to params.t_final. Stops early (with the partial trajectory) on a
/// monitor trigger or a stability violation; other errors propagate.
SpinorRun run_pauli(Spectral const& spectral, SpinorField const& psi0, SimParams const& params,
                    RunOptions const& options = {});

/// Number of steps and the uniform step that land exactly on t_final.
std::pair<std::size_t, double> step_count(double t_final, double dt);

} // namespace poisswell
