#include "poisswell/pauli_solver.hpp"

#include "poisswell/elliptic.hpp"
#include "poisswell/errors.hpp"
#include "poisswell/norms.hpp"
#include "poisswell/pauli_algebra.hpp"
#include "poisswell/sources.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <map>

namespace poisswell {

Potentials pauli_potentials(Spectral const& spectral, SpinorField const& psi, SimParams const& params)
{
    auto const& g = spectral.grid();
    Potentials pot{zero_scalar(g), zero_vector(g), zero_vector(g), std::nullopt};
    auto const rho = density(psi);
    if (params.electric) pot.V = solve_poisson_neutral(spectral, rho);
    if (params.magnetic) {
        auto rhs = kinetic_current(spectral, psi, params.epsilon);
        auto const spin_curl = spectral.curl(spin_density(psi));
        for (int i = 0; i < 3; ++i) axpy(-params.epsilon, spin_curl[i], rhs[i]);
        spectral.dealias(rhs);
        pot.A = solve_screened_vector(spectral, rhs, rho, params.screened);
        pot.B = spectral.curl(pot.A);
    }
    return pot;
}

double pauli_stable_dt(Spectral const& spectral, Potentials const& potentials, double epsilon)
{
    auto const& g = spectral.grid();
    double const a_max = max_norm(potentials.A);
    double phase_max = 0.0;
    for (std::size_t p = 0; p < g.size(); ++p) {
        double a2 = 0.0;
        for (int i = 0; i < 3; ++i) a2 += potentials.A[i][p] * potentials.A[i][p];
        phase_max = std::max(phase_max, std::abs(potentials.V[p] + 0.5 * a2));
    }
    double bound = std::numeric_limits<double>::infinity();
    if (a_max > 0.0) bound = std::min(bound, g.min_spacing() / a_max);
    if (phase_max > 0.0) bound = std::min(bound, epsilon / phase_max);
    return 0.5 * bound;
}

namespace {

// psi <- exp(-i tau/eps (V + |A|^2/2)) exp(i tau/2 sigma.B) psi
void phase_substep(SpinorField& psi, Potentials const& pot, double tau, double epsilon, bool magnetic)
{
    for (std::size_t p = 0; p < psi[0].size(); ++p) {
        double a2 = 0.0;
        for (int i = 0; i < 3; ++i) a2 += pot.A[i][p] * pot.A[i][p];
        Complex const scalar = std::polar(1.0, -tau / epsilon * (pot.V[p] + 0.5 * a2));
        Complex up = psi[0][p];
        Complex dn = psi[1][p];
        if (magnetic) {
            Vec3 const rot{0.5 * tau * pot.B[0][p], 0.5 * tau * pot.B[1][p], 0.5 * tau * pot.B[2][p]};
            Mat2 const m = pauli::exp_i(rot);
            Complex const u2 = m[0][0] * up + m[0][1] * dn;
            Complex const d2 = m[1][0] * up + m[1][1] * dn;
            up = u2;
            dn = d2;
        }
        psi[0][p] = scalar * up;
        psi[1][p] = scalar * dn;
    }
}

// (1/2)(A . grad f + div(A f)), which equals A . grad f + (1/2) div(A) f.
ComplexField advect(Spectral const& spectral, ComplexField const& f, VectorField const& A)
{
    auto const& g = spectral.grid();
    auto const grad = spectral.gradient(f);
    ComplexVectorField flux;
    for (int i = 0; i < 3; ++i) {
        flux[i].resize(g.size());
        for (std::size_t p = 0; p < g.size(); ++p) flux[i][p] = A[i][p] * f[p];
    }
    auto out = spectral.divergence(flux);
    for (std::size_t p = 0; p < g.size(); ++p) {
        Complex dot{};
        for (int i = 0; i < g.dim(); ++i) dot += A[i][p] * grad[i][p];
        out[p] = 0.5 * (out[p] + dot);
    }
    return out;
}

// Implicit midpoint for d_t psi = A . grad psi + (1/2) div(A) psi. The operator is skew-adjoint,
// so the Cayley map is unitary; the fixed point converges because dt is capped at dx / (2 ||A||_inf).
void advection_substep(Spectral const& spectral, SpinorField& psi, VectorField const& A, double tau)
{
    for (auto& c : psi) {
        double const scale = std::max(max_abs(c), 1e-300);
        ComplexField x = c;
        ComplexField mid(c.size());
        double last = std::numeric_limits<double>::infinity();
        for (int it = 0; it < 100; ++it) {
            for (std::size_t p = 0; p < c.size(); ++p) mid[p] = 0.5 * (c[p] + x[p]);
            ComplexField next = c;
            axpy(tau, advect(spectral, mid, A), next);
            double diff = 0.0;
            for (std::size_t p = 0; p < c.size(); ++p) diff = std::max(diff, std::abs(next[p] - x[p]));
            x = std::move(next);
            if (diff <= 1e-15 * scale || diff >= last) break;
            last = diff;
        }
        c = std::move(x);
    }
}

SpinorField strang(Spectral const& spectral, SpinorField psi, Potentials const& first, Potentials const& second,
                   SimParams const& params)
{
    double const h = params.dt;
    double const eps = params.epsilon;
    bool const coupled = params.electric || params.magnetic;
    if (coupled) phase_substep(psi, first, 0.5 * h, eps, params.magnetic);
    if (params.magnetic) advection_substep(spectral, psi, first.A, 0.5 * h);
    for (auto& c : psi) spectral.propagate_free(c, 0.5 * eps * h);
    if (params.magnetic) advection_substep(spectral, psi, second.A, 0.5 * h);
    if (coupled) phase_substep(psi, second, 0.5 * h, eps, params.magnetic);
    return psi;
}

} // namespace

SpinorField step_pauli(Spectral const& spectral, SpinorField const& psi, SimParams const& params,
                       Potentials const* start)
{
    if (!(params.epsilon > 0.0)) throw ValidationError("epsilon", "the spinor solver needs epsilon > 0");
    if (params.dt == 0.0) return psi;
    Potentials computed;
    if (!start) {
        computed = pauli_potentials(spectral, psi, params);
        start = &computed;
    }
    double const bound = pauli_stable_dt(spectral, *start, params.epsilon);
    if (params.dt > bound) throw StabilityViolation("step_pauli: dt exceeds the stability bound", params.dt, bound);

    if (params.refresh == PotentialRefresh::lagged) return strang(spectral, psi, *start, *start, params);
    auto const predicted = strang(spectral, psi, *start, *start, params);
    auto const corrected = pauli_potentials(spectral, predicted, params);
    return strang(spectral, psi, *start, corrected, params);
}

std::pair<std::size_t, double> step_count(double t_final, double dt)
{
    if (t_final <= 0.0) return {0, dt};
    auto const n = static_cast<std::size_t>(std::ceil(t_final / dt - 1e-9));
    std::size_t const steps = std::max<std::size_t>(n, 1);
    return {steps, t_final / static_cast<double>(steps)};
}

SpinorRun run_pauli(Spectral const& spectral, SpinorField const& psi0, SimParams const& params,
                    RunOptions const& options)
{
    params.validate();
    if (!(params.epsilon > 0.0)) throw ValidationError("epsilon", "the spinor solver needs epsilon > 0");
    auto const& g = spectral.grid();

    SpinorRun run;
    run.params = params;
    auto const [steps, dt] = step_count(params.t_final, params.dt);
    run.steps = steps;
    run.dt = dt;
    SimParams step_params = params;
    step_params.dt = dt;

    std::size_t const every = static_cast<std::size_t>(params.sample_every);
    auto is_sample = [&](std::size_t n) { return n % every == 0 || n == steps; };
    auto near_sample = [&](std::size_t n) {
        return is_sample(n) || (n > 0 && is_sample(n - 1)) || (n < steps && is_sample(n + 1));
    };

    std::deque<std::pair<std::size_t, TimeSample>> window;
    std::map<std::size_t, std::size_t> record_of_step;
    double initial_monitor = 0.0;
    VectorField const zero_u = zero_vector(g);

    SpinorField psi = psi0;
    for (std::size_t n = 0;; ++n) {
        double const t = static_cast<double>(n) * dt;
        auto pot = pauli_potentials(spectral, psi, step_params);

        if (options.residuals && near_sample(n)) {
            TimeSample sample{t, density(psi), pauli_current(spectral, psi, pot.A, params.epsilon), pot.V, pot.A};
            window.emplace_back(n, std::move(sample));
            while (window.size() > 3) window.pop_front();
            if (window.size() == 3 && window[0].first + 2 == n && window[1].first + 1 == n) {
                auto it = record_of_step.find(n - 1);
                if (it != record_of_step.end()) {
                    std::vector<TimeSample> w{window[0].second, window[1].second, window[2].second};
                    auto& rec = run.records[it->second];
                    rec.continuity_residual = continuity_residual(spectral, w);
                    rec.gauge_residual = gauge_residual(spectral, w, params.epsilon);
                }
            }
        }

        if (is_sample(n)) {
            DiagnosticsRecord rec;
            rec.t = t;
            rec.step = n;
            rec.charge = charge(g, psi);
            if (!params.magnetic) rec.energy = pauli_energy(spectral, psi, pot.V, params.epsilon);
            auto const f = functionals(spectral, psi, zero_u, params.epsilon, params.s, params.mu, params.mu1,
                                       params.mu2);
            rec.E_s = f.E_s;
            rec.E_s_mu = f.E_s_mu;
            rec.E_s_mu12 = f.E_s_mu12;
            rec.M = f.M;
            rec.N = run.records.empty() ? f.M : std::max(run.records.back().N, f.M);
            rec.tail_fraction = std::max(spectral.tail_fraction(psi[0]), spectral.tail_fraction(psi[1]));
            rec.monitor_sum = monitor_sum(spectral, psi, zero_u);
            if (n == 0) initial_monitor = rec.monitor_sum;
            rec.status = blowup_monitor(rec, initial_monitor, options.thresholds);

            record_of_step[n] = run.records.size();
            run.records.push_back(rec);
            run.times.push_back(t);
            if (params.keep_snapshots) run.snapshots.push_back(psi);
            run.potentials.push_back(pot);

            if (rec.status == MonitorStatus::triggered && options.stop_on_blowup) {
                run.status = RunStatus::blowup_detected;
                run.message = "blow-up monitor triggered at t = " + std::to_string(t);
                break;
            }
        }
        if (n == steps) break;

        try {
            psi = step_pauli(spectral, psi, step_params, &pot);
        } catch (StabilityViolation const& e) {
            run.status = RunStatus::stability_violation;
            run.message = e.what();
            break;
        }
    }
    run.final_state = std::move(psi);
    return run;
}

} // namespace poisswell
