#include "poisswell/harness.hpp"

#include "poisswell/errors.hpp"
#include "poisswell/norms.hpp"
#include "poisswell/sources.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <future>

namespace poisswell {

SlopeFit fit_loglog(std::vector<double> const& x, std::vector<double> const& y)
{
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
        if (x[i] > 0.0 && y[i] > 0.0 && std::isfinite(y[i])) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    }
    SlopeFit fit;
    fit.points = static_cast<int>(lx.size());
    if (lx.size() < 3) return fit;
    double const n = static_cast<double>(lx.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    if (sxx == 0.0) return fit;
    fit.defined = true;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    return fit;
}

bool strictly_decreasing(std::vector<double> const& y)
{
    for (std::size_t i = 1; i < y.size(); ++i)
        if (!(y[i] < y[i - 1])) return false;
    return !y.empty();
}

namespace {

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Run jobs with at most `threads` in flight; results land at their own index.
template <class Result>
std::vector<Result> run_jobs(std::vector<std::function<Result()>> const& jobs, int threads)
{
    std::vector<Result> results(jobs.size());
    if (threads <= 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i) results[i] = jobs[i]();
        return results;
    }
    for (std::size_t begin = 0; begin < jobs.size(); begin += static_cast<std::size_t>(threads)) {
        std::size_t const end = std::min(jobs.size(), begin + static_cast<std::size_t>(threads));
        std::vector<std::future<Result>> batch;
        for (std::size_t i = begin; i < end; ++i) batch.push_back(std::async(std::launch::async, jobs[i]));
        for (std::size_t i = begin; i < end; ++i) results[i] = batch[i - begin].get();
    }
    return results;
}

double relative_drift(std::vector<DiagnosticsRecord> const& records)
{
    if (records.empty() || records.front().charge == 0.0) return 0.0;
    double worst = 0.0;
    for (auto const& r : records) worst = std::max(worst, std::abs(r.charge - records.front().charge));
    return worst / records.front().charge;
}

SimParams with_epsilon(SimParams p, double epsilon)
{
    p.epsilon = epsilon;
    return p;
}

HydroRun reference_run(Spectral const& spectral, ExperimentSetup const& setup)
{
    auto params = with_epsilon(setup.params, 0.0);
    params.keep_snapshots = true;
    return run_hydro(spectral, make_initial_state(spectral, setup.data, 0.0), params, setup.options);
}

RungResult ladder_rung(Spectral const& spectral, ExperimentSetup const& setup, HydroRun const& ref, double epsilon)
{
    auto const start = std::chrono::steady_clock::now();
    RungResult rung;
    rung.epsilon = epsilon;
    double const s = setup.params.s;

    auto params = with_epsilon(setup.params, epsilon);
    params.keep_snapshots = true;
    auto const run = run_hydro(spectral, make_initial_state(spectral, setup.data, epsilon), params, setup.options);
    rung.status = run.status;
    rung.message = run.message;
    rung.stop_time = run.times.empty() ? 0.0 : run.times.back();
    rung.charge_drift = relative_drift(run.records);
    rung.envelope = envelope_check(run.records, s, setup.envelope_C_max);
    if (setup.K_constant) rung.K_lower_bound = blowup_norm_lower_bound(epsilon, *setup.K_constant, params.t_final, s);

    std::size_t const count = std::min(run.snapshots.size(), ref.snapshots.size());
    for (std::size_t i = 0; i < count; ++i) {
        auto const& w = run.snapshots[i];
        auto const& e = ref.snapshots[i];
        double const err = sobolev_norm(spectral, w.a - e.a, s - 3.0) + sobolev_norm(spectral, w.u - e.u, s - 2.0);
        rung.error_trajectory.push_back(err);
        rung.error_sup = std::max(rung.error_sup, err);

        auto const rho_w = density(w.a);
        auto const rho_e = density(e.a);
        rung.rho_error = std::max(rung.rho_error, sobolev_norm(spectral, rho_w - rho_e, s - 3.0));
        auto const J_w = wkb_current(spectral, w.a, w.u, run.potentials[i].A, epsilon);
        auto const J_e = wkb_current(spectral, e.a, e.u, ref.potentials[i].A, 0.0);
        rung.current_error = std::max(rung.current_error, sobolev_norm(spectral, J_w - J_e, s - 3.0));
        rung.eps_terms =
            std::max(rung.eps_terms, sobolev_norm(spectral, wkb_current_correction(spectral, w.a, epsilon), s - 3.0));
    }
    rung.error_final = rung.error_trajectory.empty() ? 0.0 : rung.error_trajectory.back();

    if (setup.spinor_rungs && epsilon > 0.0) {
        auto sp = params;
        sp.keep_snapshots = false;
        auto const spin = run_pauli(spectral, make_initial_spinor(spectral, setup.data, epsilon), sp, setup.options);
        rung.spinor_charge_drift = relative_drift(spin.records);
        if (spin.status == RunStatus::completed && ref.status == RunStatus::completed) {
            rung.defect = monokinetic_defect(spectral, spin.final_state, ref.final_state.u, epsilon);
        }
    }
    rung.wall_seconds = seconds_since(start);
    return rung;
}

} // namespace

LadderReport epsilon_ladder(ExperimentSetup const& setup)
{
    setup.params.validate();
    if (setup.epsilons.empty()) throw ValidationError("epsilons", "epsilon list must be nonempty");
    for (std::size_t i = 0; i < setup.epsilons.size(); ++i) {
        if (!(setup.epsilons[i] > 0.0)) throw ValidationError("epsilons", "ladder epsilons must be > 0");
        if (i > 0 && !(setup.epsilons[i] < setup.epsilons[i - 1])) {
            throw ValidationError("epsilons", "epsilon list must be decreasing");
        }
    }
    Spectral const spectral(setup.grid);

    LadderReport report;
    report.epsilons = setup.epsilons;
    report.t_final = setup.params.t_final;
    report.dt = step_count(setup.params.t_final, setup.params.dt).second;
    report.s = setup.params.s;
    report.Q = initial_bound(spectral, make_initial_state(spectral, setup.data, 0.0), setup.params.s);

    {
        auto pf = with_epsilon(setup.params, 0.0);
        pf.t_final = setup.params.t_final * setup.preflight_factor;
        // Same step as the ladder, so the preflight sees the same discrete dynamics.
        pf.dt = report.dt;
        pf.keep_snapshots = false;
        auto opts = setup.options;
        opts.residuals = false;
        auto const pre = run_hydro(spectral, make_initial_state(spectral, setup.data, 0.0), pf, opts);
        report.preflight_ok = pre.status == RunStatus::completed;
        report.preflight_stop_time = pre.times.empty() ? 0.0 : pre.times.back();
    }

    auto const ref = reference_run(spectral, setup);
    report.reference_status = ref.status;
    report.reference_envelope = envelope_check(ref.records, setup.params.s, setup.envelope_C_max);

    std::vector<std::function<RungResult()>> jobs;
    for (double eps : setup.epsilons) {
        jobs.emplace_back([&spectral, &setup, &ref, eps] { return ladder_rung(spectral, setup, ref, eps); });
    }
    report.rungs = run_jobs(jobs, setup.threads);

    std::vector<double> eps;
    std::vector<double> err;
    std::vector<double> rho;
    std::vector<double> cur;
    std::vector<double> terms;
    std::vector<double> defects;
    bool all_zero = true;
    for (auto const& r : report.rungs) {
        all_zero = all_zero && r.error_sup == 0.0 && r.rho_error == 0.0 && r.current_error == 0.0;
        if (r.status != RunStatus::completed) continue;
        eps.push_back(r.epsilon);
        err.push_back(r.error_sup);
        rho.push_back(r.rho_error);
        cur.push_back(r.current_error);
        terms.push_back(r.eps_terms);
        defects.push_back(r.defect.value_or(0.0));
    }
    report.degenerate = all_zero;
    report.error_monotone = !all_zero && err.size() == report.rungs.size() && strictly_decreasing(err);
    if (!all_zero) {
        report.error_slope = fit_loglog(eps, err);
        report.rho_slope = fit_loglog(eps, rho);
        report.current_slope = fit_loglog(eps, cur);
        report.eps_terms_slope = fit_loglog(eps, terms);
        report.defect_slope = fit_loglog(eps, defects);
    }
    return report;
}

DensityCurrentReport density_current_limit(LadderReport const& ladder)
{
    DensityCurrentReport out;
    for (auto const& r : ladder.rungs) {
        if (r.status != RunStatus::completed) continue;
        out.epsilons.push_back(r.epsilon);
        out.rho_errors.push_back(r.rho_error);
        out.current_errors.push_back(r.current_error);
        out.eps_terms.push_back(r.eps_terms);
    }
    for (std::size_t i = 1; i < out.eps_terms.size(); ++i) {
        out.eps_term_ratios.push_back(out.eps_terms[i - 1] > 0.0 ? out.eps_terms[i] / out.eps_terms[i - 1] : 0.0);
    }
    out.rho_slope = fit_loglog(out.epsilons, out.rho_errors);
    out.current_slope = fit_loglog(out.epsilons, out.current_errors);
    out.eps_terms_slope = fit_loglog(out.epsilons, out.eps_terms);
    return out;
}

double phase_invariant_distance(Grid const& g, SpinorField const& f, SpinorField const& h)
{
    double const nf = l2_norm(g, f);
    double const nh = l2_norm(g, h);
    double const overlap = std::abs(inner_product(g, h, f));
    return std::sqrt(std::max(0.0, nf * nf + nh * nh - 2.0 * overlap));
}

SpinorWkbReport spinor_vs_wkb(ExperimentSetup const& setup)
{
    double const eps = setup.params.epsilon;
    if (!(eps > 0.0)) throw ValidationError("epsilon", "spinor-vs-wkb needs epsilon > 0");
    Spectral const spectral(setup.grid);
    auto params = setup.params;
    params.keep_snapshots = true;

    auto const init = make_initial_state(spectral, setup.data, eps);
    auto const pauli = run_pauli(spectral, reconstruct_spinor(setup.grid, init), params, setup.options);
    auto const wkb = run_hydro(spectral, init, params, setup.options);

    SpinorWkbReport report;
    report.epsilon = eps;
    report.pauli_status = pauli.status;
    report.wkb_status = wkb.status;
    std::size_t const count = std::min(pauli.snapshots.size(), wkb.snapshots.size());
    for (std::size_t i = 0; i < count; ++i) {
        double const d =
            phase_invariant_distance(setup.grid, pauli.snapshots[i], reconstruct_spinor(setup.grid, wkb.snapshots[i]));
        report.times.push_back(pauli.times[i]);
        report.distances.push_back(d);
        report.max_distance = std::max(report.max_distance, d);
    }
    return report;
}

std::vector<std::size_t> wigner_base_points(ExperimentSetup const& setup)
{
    if (!setup.wigner_points.empty()) return setup.wigner_points;
    int const n = setup.grid.points(0);
    return {setup.grid.index(n / 8, 0, 0), setup.grid.index(3 * n / 8, 0, 0), setup.grid.index(5 * n / 8, 0, 0)};
}

MonokineticReport monokinetic_study(ExperimentSetup const& setup)
{
    setup.params.validate();
    Spectral const spectral(setup.grid);
    auto const ref = reference_run(spectral, setup);
    if (ref.status != RunStatus::completed) {
        throw BlowupDetected("monokinetic_study: reference run stopped early: " + ref.message,
                             ref.records.back().t, ref.records.back().monitor_sum);
    }
    auto const& u_ref = ref.final_state.u;
    auto const points = wigner_base_points(setup);

    std::vector<std::function<std::pair<MonokineticRung, SpinorField>()>> jobs;
    for (double eps : setup.epsilons) {
        jobs.emplace_back([&, eps] {
            auto params = with_epsilon(setup.params, eps);
            params.keep_snapshots = false;
            auto const run = run_pauli(spectral, make_initial_spinor(spectral, setup.data, eps), params, setup.options);
            MonokineticRung rung;
            rung.epsilon = eps;
            rung.status = run.status;
            rung.charge_drift = relative_drift(run.records);
            rung.defect = monokinetic_defect(spectral, run.final_state, u_ref, eps);
            return std::make_pair(rung, run.final_state);
        });
    }
    auto results = run_jobs(jobs, setup.threads);

    MonokineticReport report;
    report.t = setup.params.t_final;
    std::vector<double> eps;
    std::vector<double> defects;
    for (auto& [rung, psi] : results) {
        report.rungs.push_back(rung);
        eps.push_back(rung.epsilon);
        defects.push_back(rung.defect);
    }
    for (std::size_t i = 1; i < defects.size(); ++i) {
        report.defect_ratios.push_back(defects[i - 1] > 0.0 ? defects[i] / defects[i - 1] : 0.0);
    }
    report.defect_slope = fit_loglog(eps, defects);

    if (!results.empty()) {
        // Smallest epsilon is last in a decreasing ladder.
        std::size_t best = 0;
        for (std::size_t i = 1; i < results.size(); ++i)
            if (results[i].first.epsilon < results[best].first.epsilon) best = i;
        auto const& psi = results[best].second;
        double const e = results[best].first.epsilon;
        auto slice = wigner_slice(spectral, psi, e, points);
        auto const rho = density(psi);
        auto const marginals = slice_density(slice);
        double const rho_max = max_abs(rho);
        double fmax = 0.0;
        for (auto const& v : slice.values)
            for (double f : v) fmax = std::max(fmax, std::abs(f));
        auto& rung = report.rungs[best];
        rung.slice_max_imag_ratio = fmax > 0.0 ? slice.max_imag / fmax : 0.0;
        for (std::size_t b = 0; b < points.size(); ++b) {
            double const centre = u_ref[0][points[b]];
            report.slice_centres.push_back(centre);
            rung.window_fractions.push_back(window_mass_fraction(slice, b, centre, setup.wigner_half_width));
            rung.slice_marginal_errors.push_back(rho_max > 0.0 ? std::abs(marginals[b] - rho[points[b]]) / rho_max
                                                               : std::abs(marginals[b]));
        }
        report.slice = std::move(slice);
    }
    return report;
}

} // namespace poisswell
