#pragma once

#include "poisswell/diagnostics.hpp"
#include "poisswell/grid.hpp"
#include "poisswell/hydro.hpp"
#include "poisswell/initial_data.hpp"
#include "poisswell/pauli_solver.hpp"
#include "poisswell/state.hpp"
#include "poisswell/wigner.hpp"

#include <optional>
#include <string>
#include <vector>

namespace poisswell {

/// Everything an experiment needs besides its kind and output location.
struct ExperimentSetup {
    Grid grid = Grid::cube(1, 256);
    InitialDataSpec data{};
    /// params.epsilon is used by single-epsilon experiments; ladders use `epsilons`.
    SimParams params{};
    RunOptions options{};
    std::vector<double> epsilons{0.4, 0.2, 0.1, 0.05};
    /// The reference Euler run must not trigger the monitor before preflight_factor * t_final.
    double preflight_factor = 1.5;
    /// Also run the spinor solver on every rung (monokinetic study).
    bool spinor_rungs = false;
    /// Flat grid indices for Wigner slices; empty selects three evenly spaced points.
    std::vector<std::size_t> wigner_points;
    int wigner_half_width = 3;
    int threads = 1;
    double envelope_C_max = 1e3;
    /// Constant for the reported blow-up norm lower bound K(eps); unset skips it.
    std::optional<double> K_constant;

    bool operator==(ExperimentSetup const&) const = default;
};

struct SlopeFit {
    bool defined = false;
    double slope = 0.0;
    double intercept = 0.0;
    int points = 0;
};

/// Least-squares slope of log y against log x over the positive pairs; needs three of them.
SlopeFit fit_loglog(std::vector<double> const& x, std::vector<double> const& y);

/// y strictly decreasing along the list.
bool strictly_decreasing(std::vector<double> const& y);

struct RungResult {
    double epsilon = 0.0;
    RunStatus status = RunStatus::completed;
    std::string message;
    double stop_time = 0.0;
    /// sup over samples of ||a^eps - a||_{H^{s-3}} + ||u^eps - u||_{H^{s-2}}, and its final value.
    double error_sup = 0.0;
    double error_final = 0.0;
    std::vector<double> error_trajectory;
    /// sup over samples of ||rho^eps - rho||_{H^{s-3}} and ||J^eps - J||_{H^{s-3}}.
    double rho_error = 0.0;
    double current_error = 0.0;
    /// sup over samples of ||-eps w - 2 eps v||_{H^{s-3}}, the O(eps) part of the current.
    double eps_terms = 0.0;
    double charge_drift = 0.0;
    EnvelopeReport envelope{};
    std::optional<double> K_lower_bound;
    /// Spinor rung: monokinetic defect against the reference velocity at the final time.
    std::optional<double> defect;
    std::optional<double> spinor_charge_drift;
    double wall_seconds = 0.0;
};

struct LadderReport {
    std::vector<double> epsilons;
    std::vector<RungResult> rungs;
    double t_final = 0.0;
    double dt = 0.0;
    double s = 0.0;
    bool preflight_ok = false;
    double preflight_stop_time = 0.0;
    RunStatus reference_status = RunStatus::completed;
    EnvelopeReport reference_envelope{};
    /// True when every error vanishes (nothing to fit).
    bool degenerate = false;
    bool error_monotone = false;
    SlopeFit error_slope;
    SlopeFit rho_slope;
    SlopeFit current_slope;
    SlopeFit eps_terms_slope;
    SlopeFit defect_slope;
    double Q = 0.0;
};

/// Euler reference at eps = 0 plus one WKB run per epsilon, all from the same data, step and sample times.
LadderReport epsilon_ladder(ExperimentSetup const& setup);

struct DensityCurrentReport {
    std::vector<double> epsilons;
    std::vector<double> rho_errors;
    std::vector<double> current_errors;
    std::vector<double> eps_terms;
    /// eps_terms[i+1] / eps_terms[i] for consecutive rungs.
    std::vector<double> eps_term_ratios;
    SlopeFit rho_slope;
    SlopeFit current_slope;
    SlopeFit eps_terms_slope;
};

DensityCurrentReport density_current_limit(LadderReport const& ladder);

struct SpinorWkbReport {
    double epsilon = 0.0;
    std::vector<double> times;
    /// min over theta of ||psi_pauli - exp(i theta) a exp(iS/eps)||_2 at each sample.
    std::vector<double> distances;
    double max_distance = 0.0;
    RunStatus pauli_status = RunStatus::completed;
    RunStatus wkb_status = RunStatus::completed;
};

/// sqrt(||f||^2 + ||h||^2 - 2 |<f, h>|).
double phase_invariant_distance(Grid const& g, SpinorField const& f, SpinorField const& h);

SpinorWkbReport spinor_vs_wkb(ExperimentSetup const& setup);

struct MonokineticRung {
    double epsilon = 0.0;
    double defect = 0.0;
    double charge_drift = 0.0;
    RunStatus status = RunStatus::completed;
    std::vector<double> window_fractions;
    std::vector<double> slice_marginal_errors;
    double slice_max_imag_ratio = 0.0;
};

struct MonokineticReport {
    double t = 0.0;
    std::vector<MonokineticRung> rungs;
    /// defect[i+1] / defect[i].
    std::vector<double> defect_ratios;
    SlopeFit defect_slope;
    /// Slices of the smallest epsilon, centred at the reference velocity.
    std::optional<WignerSlice> slice;
    std::vector<double> slice_centres;
};

/// Spinor runs at each epsilon; defects against the eps = 0 velocity at t_final and Wigner
/// slices of the smallest epsilon at the configured base points.
MonokineticReport monokinetic_study(ExperimentSetup const& setup);

/// Three evenly spaced base points along axis 0 (other indices 0) unless configured.
std::vector<std::size_t> wigner_base_points(ExperimentSetup const& setup);

} // namespace poisswell
