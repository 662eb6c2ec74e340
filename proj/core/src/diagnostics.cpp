#include "poisswell/diagnostics.hpp"

#include "poisswell/errors.hpp"
#include "poisswell/norms.hpp"
#include "poisswell/sources.hpp"

#include <cmath>
#include <limits>

namespace poisswell {

std::string to_string(MonitorStatus status)
{
    switch (status) {
    case MonitorStatus::ok: return "ok";
    case MonitorStatus::warning: return "warning";
    case MonitorStatus::triggered: return "triggered";
    }
    return "unknown";
}

std::string to_string(RunStatus status)
{
    switch (status) {
    case RunStatus::completed: return "completed";
    case RunStatus::blowup_detected: return "blowup_detected";
    case RunStatus::stability_violation: return "stability_violation";
    }
    return "unknown";
}

double charge(Grid const& g, SpinorField const& a)
{
    return l2_norm(g, a);
}

Functionals functionals(Spectral const& spectral, SpinorField const& a, VectorField const& u, double epsilon,
                        double s, double mu, double mu1, double mu2, VectorField const* dt_u)
{
    Functionals f;
    double const a_lower = sobolev_norm(spectral, a, std::max(s - 1.0, 0.0));
    double const u_s = sobolev_norm(spectral, u, s);
    f.E_s = a_lower + u_s;
    double const a_s = sobolev_norm(spectral, a, s);
    f.E_s_mu = f.E_s + mu * epsilon * a_s;
    double const E_s_mu1 = f.E_s + mu1 * epsilon * a_s;
    f.E_s_mu12 = E_s_mu1 + (dt_u ? mu2 * sobolev_norm(spectral, *dt_u, std::max(s - 1.0, 0.0)) : 0.0);

    auto const ua = pointwise_norms(spectral, u);
    auto const aa = pointwise_norms(spectral, a);
    f.M = 1.0 + ua.w1inf + aa.linf + epsilon * (sobolev_norm(spectral, a, 1.0) + aa.w1inf + aa.w23);
    return f;
}

double monitor_sum(Spectral const& spectral, SpinorField const& a, VectorField const& u)
{
    auto const aa = pointwise_norms(spectral, a);
    auto const ua = pointwise_norms(spectral, u);
    return sobolev_norm(spectral, a, 1.0) + aa.w1inf + aa.w23 + ua.w1inf;
}

double pauli_energy(Spectral const& spectral, SpinorField const& psi, ScalarField const& V, double epsilon)
{
    auto const& g = spectral.grid();
    double kinetic = 0.0;
    for (auto const& c : psi) {
        auto const grad = spectral.gradient(c);
        for (int i = 0; i < g.dim(); ++i)
            for (auto const& z : grad[i]) kinetic += std::norm(z);
    }
    double field = 0.0;
    auto const gv = spectral.gradient(V);
    for (int i = 0; i < g.dim(); ++i)
        for (double x : gv[i]) field += x * x;
    return (epsilon * epsilon * kinetic + field) * g.cell_volume();
}

namespace {

std::size_t window_middle(std::span<TimeSample const> window, char const* who)
{
    if (window.size() < 3) throw InsufficientHistory(std::string(who) + ": need at least three samples");
    std::size_t const k = window.size() / 2;
    if (!(window[k + 1].t > window[k - 1].t)) throw InsufficientHistory(std::string(who) + ": times not increasing");
    return k;
}

} // namespace

double continuity_residual(Spectral const& spectral, std::span<TimeSample const> window)
{
    std::size_t const k = window_middle(window, "continuity_residual");
    auto const& prev = window[k - 1];
    auto const& next = window[k + 1];
    double const h = next.t - prev.t;
    auto r = spectral.divergence(window[k].J);
    for (std::size_t p = 0; p < r.size(); ++p) r[p] += (next.rho[p] - prev.rho[p]) / h;
    return l2_norm(spectral.grid(), r);
}

double gauge_residual(Spectral const& spectral, std::span<TimeSample const> window, double epsilon)
{
    std::size_t const k = window_middle(window, "gauge_residual");
    auto const& prev = window[k - 1];
    auto const& next = window[k + 1];
    double const h = next.t - prev.t;
    auto r = spectral.divergence(window[k].A);
    for (std::size_t p = 0; p < r.size(); ++p) r[p] += epsilon * (next.V[p] - prev.V[p]) / h;
    return l2_norm(spectral.grid(), r);
}

MonitorStatus blowup_monitor(DiagnosticsRecord const& record, double initial_monitor_sum,
                             BlowupThresholds const& thresholds)
{
    if (!std::isfinite(record.monitor_sum) || !std::isfinite(record.M)) return MonitorStatus::triggered;
    if (record.monitor_sum > thresholds.factor * initial_monitor_sum) return MonitorStatus::triggered;
    if (record.tail_fraction > thresholds.tail) return MonitorStatus::warning;
    return MonitorStatus::ok;
}

void accumulate_running_max(std::vector<DiagnosticsRecord>& records)
{
    double running = 1.0;
    for (auto& r : records) {
        running = std::max(running, r.M);
        r.N = running;
    }
}

namespace {

// log of the envelope C N^p E0 exp(C N^p t); N^p may overflow, so stay in logs.
double log_envelope(double C, double log_N, double p, double log_E0, double t)
{
    double const log_Np = p * log_N;
    double const growth = log_Np > 700.0 ? std::numeric_limits<double>::infinity() : C * std::exp(log_Np) * t;
    return std::log(C) + log_Np + log_E0 + growth;
}

} // namespace

double envelope_violation(std::span<DiagnosticsRecord const> records, double s, double C)
{
    if (records.empty()) return 0.0;
    double const E0 = records.front().E_s_mu;
    double const p = 2.0 * s + 3.0;
    double worst = 0.0;
    for (auto const& r : records) {
        if (r.E_s_mu <= 0.0) continue;
        if (E0 <= 0.0 || C <= 0.0) return std::numeric_limits<double>::infinity();
        double const log_ratio = std::log(r.E_s_mu) - log_envelope(C, std::log(r.N), p, std::log(E0), r.t - records.front().t);
        worst = std::max(worst, std::exp(log_ratio));
    }
    return worst;
}

EnvelopeReport envelope_check(std::span<DiagnosticsRecord const> records, double s, double C_max)
{
    EnvelopeReport report;
    bool all_zero = true;
    for (auto const& r : records) all_zero = all_zero && r.E_s_mu <= 0.0;
    if (all_zero) {
        report.pass = true;
        return report;
    }
    if (envelope_violation(records, s, C_max) > 1.0) {
        report.C = C_max;
        report.max_violation_ratio = envelope_violation(records, s, C_max);
        return report;
    }
    // The envelope grows monotonically in C, so bisect on log C.
    double lo = std::log(1e-300);
    double hi = std::log(C_max);
    for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, std::abs(hi)); ++it) {
        double const mid = 0.5 * (lo + hi);
        if (envelope_violation(records, s, std::exp(mid)) <= 1.0) hi = mid;
        else lo = mid;
    }
    report.C = std::exp(hi);
    report.max_violation_ratio = envelope_violation(records, s, report.C);
    report.pass = report.C <= C_max && report.max_violation_ratio <= 1.0;
    return report;
}

EnergyIdentityTerms energy_identity_terms(Spectral const& spectral, std::span<HydroState const> window)
{
    if (window.size() < 3) throw InsufficientHistory("energy_identity_terms: need three states");
    std::size_t const k = window.size() / 2;
    auto const& prev = window[k - 1];
    auto const& mid = window[k];
    auto const& next = window[k + 1];
    double const h = next.t - prev.t;
    double const eps = mid.epsilon;
    auto const& g = spectral.grid();

    auto grad_sq = [&](SpinorField const& a) {
        double total = 0.0;
        for (auto const& c : a) {
            auto const grad = spectral.gradient(c);
            for (int i = 0; i < g.dim(); ++i)
                for (auto const& z : grad[i]) total += std::norm(z);
        }
        return total * g.cell_volume();
    };
    auto const w_prev = phase_current_w(spectral, prev.a);
    auto const w_next = phase_current_w(spectral, next.a);
    double transport = 0.0;
    for (int i = 0; i < 3; ++i)
        for (std::size_t p = 0; p < g.size(); ++p) transport += mid.u[i][p] * (w_next[i][p] - w_prev[i][p]) / h;

    EnergyIdentityTerms terms;
    terms.transport = -2.0 * eps * transport * g.cell_volume();
    terms.dispersion = eps * eps * (grad_sq(next.a) - grad_sq(prev.a)) / h;
    return terms;
}

double blowup_norm_lower_bound(double epsilon, double C, double T_star, double s)
{
    double const x = std::abs(std::log(std::sqrt(epsilon) / (C * T_star)));
    return 0.5 * (std::pow(x, 1.0 / (2.0 * s + 3.0)) - 1.0);
}

} // namespace poisswell
