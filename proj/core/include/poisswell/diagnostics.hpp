#pragma once

#include "poisswell/fields.hpp"
#include "poisswell/spectral.hpp"
#include "poisswell/state.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace poisswell {

enum class MonitorStatus { ok, warning, triggered };

std::string to_string(MonitorStatus status);

/// How a run ended.
enum class RunStatus { completed, blowup_detected, stability_violation };

std::string to_string(RunStatus status);

/// Functional values at one sample time.
///
/// For spinor runs the functionals are evaluated on the pair (psi, u = 0), so
/// they track the norms of psi itself rather than of a WKB amplitude.
struct DiagnosticsRecord {
    double t = 0.0;
    std::size_t step = 0;
    /// ||a||_{L2} (not squared).
    double charge = 0.0;
    /// ||eps grad psi||^2 + ||grad V||^2; only filled when magnetic coupling is off.
    std::optional<double> energy;
    double E_s = 0.0;
    double E_s_mu = 0.0;
    double E_s_mu12 = 0.0;
    double M = 1.0;
    double N = 1.0;
    std::optional<double> continuity_residual;
    std::optional<double> gauge_residual;
    double tail_fraction = 0.0;
    /// ||a||_{H1} + ||a||_{W1inf} + ||a||_{W23} + ||u||_{W1inf}.
    double monitor_sum = 0.0;
    MonitorStatus status = MonitorStatus::ok;
    /// Hydro runs: ||u - grad S|| / ||u|| measured before the projection of the last step.
    std::optional<double> gradient_mismatch;
};

struct Functionals {
    double E_s = 0.0;
    double E_s_mu = 0.0;
    double E_s_mu12 = 0.0;
    double M = 1.0;
};

/// ||a||_{L2}.
double charge(Grid const& g, SpinorField const& a);

/// E_s = ||a||_{H^{s-1}} + ||u||_{H^s}; E_s^mu adds mu eps ||a||_{H^s};
/// E_s^{mu1,mu2} = E_s^{mu1} + mu2 ||dt_u||_{H^{s-1}} (zero when dt_u is null).
/// M = 1 + ||u||_{W1inf} + ||a||_inf + eps(||a||_{H1} + ||a||_{W1inf} + ||a||_{W23}).
Functionals functionals(Spectral const& spectral, SpinorField const& a, VectorField const& u, double epsilon,
                        double s, double mu, double mu1, double mu2, VectorField const* dt_u = nullptr);

double monitor_sum(Spectral const& spectral, SpinorField const& a, VectorField const& u);

/// ||eps grad psi||^2 + ||grad V||^2.
double pauli_energy(Spectral const& spectral, SpinorField const& psi, ScalarField const& V, double epsilon);

/// Density, current and potentials at one instant; the raw material for the residuals.
struct TimeSample {
    double t = 0.0;
    ScalarField rho;
    VectorField J;
    ScalarField V;
    VectorField A;
};

/// ||d_t rho + div J||_2 at the middle sample of the window, centred difference in time.
/// Throws InsufficientHistory for fewer than three samples.
double continuity_residual(Spectral const& spectral, std::span<TimeSample const> window);

/// ||div A + eps d_t V||_2 at the middle sample of the window.
double gauge_residual(Spectral const& spectral, std::span<TimeSample const> window, double epsilon);

struct BlowupThresholds {
    /// Trigger when the monitored sum exceeds factor times its initial value.
    double factor = 100.0;
    /// Warn when the spectral tail fraction exceeds this.
    double tail = 0.1;

    bool operator==(BlowupThresholds const&) const = default;
};

MonitorStatus blowup_monitor(DiagnosticsRecord const& record, double initial_monitor_sum,
                             BlowupThresholds const& thresholds = {});

struct EnvelopeReport {
    double C = 0.0;
    double max_violation_ratio = 0.0;
    bool pass = false;
};

/// Smallest C (by bisection) with E_s^1(t) <= C N^{2s+3} E_s^1(0) exp(C N^{2s+3} t) at every record.
/// `E_s_mu` of the records must have been computed with mu = 1.
EnvelopeReport envelope_check(std::span<DiagnosticsRecord const> records, double s, double C_max = 1e3);

/// max_t ratio of E_s^1(t) to the envelope at the given C.
double envelope_violation(std::span<DiagnosticsRecord const> records, double s, double C);

/// Fills N as the running maximum of M.
void accumulate_running_max(std::vector<DiagnosticsRecord>& records);

/// Terms of the energy relation -2 eps int u . d_t w + eps^2 d/dt ||grad a||^2 = 0 (A = 0)
/// at the middle of a window of three hydro states, centred differences in time.
struct EnergyIdentityTerms {
    double transport = 0.0; ///< -2 eps int u . d_t w
    double dispersion = 0.0; ///< eps^2 d/dt ||grad a||^2
};

EnergyIdentityTerms energy_identity_terms(Spectral const& spectral, std::span<HydroState const> window);

/// K = (1/2)(|log(sqrt(eps) / (C T*))|^{1/(2s+3)} - 1); C is a free input.
double blowup_norm_lower_bound(double epsilon, double C, double T_star, double s);

} // namespace poisswell
