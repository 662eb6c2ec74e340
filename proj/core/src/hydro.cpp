#include "poisswell/hydro.hpp"

#include "poisswell/elliptic.hpp"
#include "poisswell/errors.hpp"
#include "poisswell/norms.hpp"
#include "poisswell/pauli_algebra.hpp"
#include "poisswell/sources.hpp"

#include <cmath>
#include <deque>
#include <map>

namespace poisswell {

namespace {

constexpr Complex I{0.0, 1.0};

bool all_zero(VectorField const& v)
{
    for (auto const& c : v)
        for (double x : c)
            if (x != 0.0) return false;
    return true;
}

HydroRhs rhs_impl(Spectral const& spectral, HydroState const& state, Potentials const& pot, double eps)
{
    auto const& g = spectral.grid();
    std::size_t const n = g.size();
    int const d = g.dim();

    // Band-limited copies of the potentials keep every product below free of aliasing.
    VectorField A = pot.A;
    ScalarField V = pot.V;
    spectral.dealias(A);
    spectral.dealias(V);
    bool const magnetic = !all_zero(A);
    VectorField const B = magnetic ? spectral.curl(A) : zero_vector(g);

    VectorField b;
    for (int i = 0; i < 3; ++i) b[i] = state.u[i] - A[i];

    HydroRhs out;
    for (int c = 0; c < 2; ++c) {
        auto const& ac = state.a[c];
        auto const grad = spectral.gradient(ac);
        ComplexField transport(n);
        ComplexVectorField flux;
        for (int i = 0; i < 3; ++i) flux[i].assign(n, Complex{});
        for (std::size_t p = 0; p < n; ++p) {
            Complex t{};
            for (int i = 0; i < d; ++i) {
                t += b[i][p] * grad[i][p];
                flux[i][p] = b[i][p] * ac[p];
            }
            transport[p] = t;
        }
        auto const div_flux = spectral.divergence(flux);
        ComplexField da(n);
        if (eps != 0.0) {
            auto const lap = spectral.laplacian(ac);
            for (std::size_t p = 0; p < n; ++p) da[p] = -0.5 * (transport[p] + div_flux[p]) + (0.5 * eps) * I * lap[p];
        } else {
            for (std::size_t p = 0; p < n; ++p) da[p] = -0.5 * (transport[p] + div_flux[p]);
        }
        out.da[c] = std::move(da);
    }
    if (magnetic) {
        auto const sb = apply_pointwise(sigma_dot(B), state.a);
        for (int c = 0; c < 2; ++c)
            for (std::size_t p = 0; p < n; ++p) out.da[c][p] += 0.5 * I * sb[c][p];
    }
    spectral.dealias(out.da);

    // q = |A|^2/2 + V
    ScalarField q = V;
    ScalarField b2(n);
    for (std::size_t p = 0; p < n; ++p) {
        double a2 = 0.0;
        double bb = 0.0;
        for (int i = 0; i < 3; ++i) {
            a2 += A[i][p] * A[i][p];
            bb += b[i][p] * b[i][p];
        }
        q[p] += 0.5 * a2;
        b2[p] = bb;
    }
    auto const grad_q = spectral.gradient(q);

    std::array<VectorField, 3> grad_A;
    if (magnetic)
        for (int j = 0; j < 3; ++j) grad_A[j] = spectral.gradient(A[j]);

    for (int i = 0; i < 3; ++i) {
        ScalarField du(n, 0.0);
        bool const moving = !std::all_of(state.u[i].begin(), state.u[i].end(), [](double x) { return x == 0.0; });
        if (moving) {
            auto const grad_u = spectral.gradient(state.u[i]);
            for (std::size_t p = 0; p < n; ++p) {
                double t = 0.0;
                for (int j = 0; j < d; ++j) t += b[j][p] * grad_u[j][p];
                du[p] -= t;
            }
        }
        if (magnetic && i < d) {
            for (std::size_t p = 0; p < n; ++p) {
                double t = 0.0;
                for (int j = 0; j < 3; ++j) t += state.u[j][p] * grad_A[j][i][p];
                du[p] += t;
            }
        }
        for (std::size_t p = 0; p < n; ++p) du[p] -= grad_q[i][p];
        out.du[i] = std::move(du);
    }
    spectral.dealias(out.du);

    out.dS.resize(n);
    for (std::size_t p = 0; p < n; ++p) out.dS[p] = -0.5 * b2[p] - V[p];
    spectral.dealias(out.dS);
    return out;
}

HydroState advance(HydroState const& y, HydroRhs const& k, double h)
{
    HydroState out = y;
    axpy(h, k.da, out.a);
    axpy(h, k.du, out.u);
    if (!out.S.empty() && !k.dS.empty()) axpy(h, k.dS, out.S);
    out.t += h;
    return out;
}

} // namespace

Potentials hydro_potentials(Spectral const& spectral, HydroState const& state, SimParams const& params)
{
    auto const& g = spectral.grid();
    Potentials pot{zero_scalar(g), zero_vector(g), zero_vector(g), std::nullopt};
    auto const rho = density(state.a);
    if (params.electric) pot.V = solve_poisson_neutral(spectral, rho);
    if (params.magnetic) {
        auto rhs = wkb_current_correction(spectral, state.a, state.epsilon);
        for (int i = 0; i < 3; ++i)
            for (std::size_t p = 0; p < g.size(); ++p) rhs[i][p] += rho[p] * state.u[i][p];
        spectral.dealias(rhs);
        pot.A = solve_screened_vector(spectral, rhs, rho, params.screened);
        pot.B = spectral.curl(pot.A);
    }
    return pot;
}

HydroRhs wkb_rhs(Spectral const& spectral, HydroState const& state, Potentials const& potentials)
{
    return rhs_impl(spectral, state, potentials, state.epsilon);
}

HydroRhs euler_rhs(Spectral const& spectral, HydroState const& state, Potentials const& potentials)
{
    return rhs_impl(spectral, state, potentials, 0.0);
}

ScalarField euler_density_residual(Spectral const& spectral, HydroState const& state, Potentials const& potentials,
                                   HydroRhs const& rhs)
{
    auto const& g = spectral.grid();
    auto const rho = density(state.a);
    VectorField flux;
    for (int i = 0; i < 3; ++i) {
        flux[i].resize(g.size());
        for (std::size_t p = 0; p < g.size(); ++p) flux[i][p] = rho[p] * (state.u[i][p] - potentials.A[i][p]);
    }
    auto r = spectral.divergence(flux);
    for (std::size_t p = 0; p < g.size(); ++p) {
        r[p] += 2.0 * std::real(std::conj(state.a[0][p]) * rhs.da[0][p] + std::conj(state.a[1][p]) * rhs.da[1][p]);
    }
    return r;
}

double hydro_stable_dt(Spectral const& spectral, HydroState const& state, Potentials const& potentials)
{
    auto const& g = spectral.grid();
    double const speed = max_norm(state.u - potentials.A);
    double const denom = speed + 0.5 * state.epsilon * g.max_wavenumber();
    return denom > 0.0 ? g.min_spacing() / denom : std::numeric_limits<double>::infinity();
}

HydroState step_rk4(Spectral const& spectral, HydroState const& state, double dt, RhsFunction const& rhs,
                    HydroRhs const* first, double* mismatch)
{
    if (dt == 0.0) {
        if (mismatch) *mismatch = 0.0;
        return state;
    }
    HydroRhs const k1 = first ? *first : rhs(state);
    HydroRhs const k2 = rhs(advance(state, k1, 0.5 * dt));
    HydroRhs const k3 = rhs(advance(state, k2, 0.5 * dt));
    HydroRhs const k4 = rhs(advance(state, k3, dt));

    HydroState out = state;
    axpy(dt / 6.0, k1.da, out.a);
    axpy(dt / 3.0, k2.da, out.a);
    axpy(dt / 3.0, k3.da, out.a);
    axpy(dt / 6.0, k4.da, out.a);
    axpy(dt / 6.0, k1.du, out.u);
    axpy(dt / 3.0, k2.du, out.u);
    axpy(dt / 3.0, k3.du, out.u);
    axpy(dt / 6.0, k4.du, out.u);
    bool const tracked = out.phase_tracked && out.S.size() == out.a[0].size() && k1.dS.size() == out.S.size();
    if (tracked) {
        axpy(dt / 6.0, k1.dS, out.S);
        axpy(dt / 3.0, k2.dS, out.S);
        axpy(dt / 3.0, k3.dS, out.S);
        axpy(dt / 6.0, k4.dS, out.S);
    }
    out.t = state.t + dt;

    double removed = 0.0;
    if (tracked) {
        auto const& g = spectral.grid();
        auto const grad = spectral.gradient(out.S);
        VectorField target;
        for (int i = 0; i < 3; ++i) {
            target[i].assign(g.size(), out.mean_velocity[i]);
            if (i < g.dim())
                for (std::size_t p = 0; p < g.size(); ++p) target[i][p] += grad[i][p];
        }
        double const unorm = l2_norm(g, out.u);
        double const diff = l2_norm(g, out.u - target);
        removed = unorm > 0.0 ? diff / unorm : diff;
        out.u = std::move(target);
    }
    if (mismatch) *mismatch = removed;
    return out;
}

RhsFunction self_consistent_rhs(Spectral const& spectral, SimParams const& params)
{
    return [&spectral, params](HydroState const& s) {
        auto const pot = hydro_potentials(spectral, s, params);
        return rhs_impl(spectral, s, pot, s.epsilon);
    };
}

HydroRun run_hydro(Spectral const& spectral, HydroState const& init, SimParams const& params,
                   RunOptions const& options)
{
    params.validate();
    auto const& g = spectral.grid();

    HydroRun run;
    run.params = params;
    auto const [steps, dt] = step_count(params.t_final, params.dt);
    run.steps = steps;
    run.dt = dt;

    std::size_t const every = static_cast<std::size_t>(params.sample_every);
    auto is_sample = [&](std::size_t n) { return n % every == 0 || n == steps; };
    auto near_sample = [&](std::size_t n) {
        return is_sample(n) || (n > 0 && is_sample(n - 1)) || (n < steps && is_sample(n + 1));
    };

    std::deque<std::pair<std::size_t, TimeSample>> window;
    std::map<std::size_t, std::size_t> record_of_step;
    double initial_monitor = 0.0;
    double last_mismatch = 0.0;
    auto const rhs = self_consistent_rhs(spectral, params);

    HydroState state = init;
    state.epsilon = params.epsilon;
    for (std::size_t n = 0;; ++n) {
        double const t = static_cast<double>(n) * dt;
        state.t = t;
        auto const pot = hydro_potentials(spectral, state, params);
        auto const k1 = rhs_impl(spectral, state, pot, state.epsilon);

        if (options.residuals && near_sample(n)) {
            TimeSample sample{t, density(state.a), wkb_current(spectral, state.a, state.u, pot.A, state.epsilon),
                              pot.V, pot.A};
            window.emplace_back(n, std::move(sample));
            while (window.size() > 3) window.pop_front();
            if (window.size() == 3 && window[0].first + 2 == n && window[1].first + 1 == n) {
                auto it = record_of_step.find(n - 1);
                if (it != record_of_step.end()) {
                    std::vector<TimeSample> w{window[0].second, window[1].second, window[2].second};
                    auto& rec = run.records[it->second];
                    rec.continuity_residual = continuity_residual(spectral, w);
                    rec.gauge_residual = gauge_residual(spectral, w, state.epsilon);
                }
            }
        }

        if (is_sample(n)) {
            DiagnosticsRecord rec;
            rec.t = t;
            rec.step = n;
            rec.charge = charge(g, state.a);
            if (!params.magnetic) {
                // |eps grad psi|^2 = |eps grad a + i u a|^2 for psi = a exp(iS/eps)
                double kinetic = 0.0;
                for (auto const& c : state.a) {
                    auto const grad = spectral.gradient(c);
                    for (int i = 0; i < 3; ++i) {
                        for (std::size_t p = 0; p < g.size(); ++p) {
                            Complex const gi = i < g.dim() ? grad[i][p] : Complex{};
                            kinetic += std::norm(state.epsilon * gi + I * state.u[i][p] * c[p]);
                        }
                    }
                }
                double field = 0.0;
                auto const gv = spectral.gradient(pot.V);
                for (int i = 0; i < g.dim(); ++i)
                    for (double x : gv[i]) field += x * x;
                rec.energy = (kinetic + field) * g.cell_volume();
            }
            auto const f = functionals(spectral, state.a, state.u, state.epsilon, params.s, params.mu, params.mu1,
                                       params.mu2, &k1.du);
            rec.E_s = f.E_s;
            rec.E_s_mu = f.E_s_mu;
            rec.E_s_mu12 = f.E_s_mu12;
            rec.M = f.M;
            rec.N = run.records.empty() ? f.M : std::max(run.records.back().N, f.M);
            double tail = 0.0;
            for (auto const& c : state.a) tail = std::max(tail, spectral.tail_fraction(c));
            for (int i = 0; i < 3; ++i) tail = std::max(tail, spectral.tail_fraction(to_complex(state.u[i])));
            rec.tail_fraction = tail;
            rec.monitor_sum = monitor_sum(spectral, state.a, state.u);
            if (n > 0) rec.gradient_mismatch = last_mismatch;
            if (n == 0) initial_monitor = rec.monitor_sum;
            rec.status = blowup_monitor(rec, initial_monitor, options.thresholds);

            double const unorm = l2_norm(g, state.u);
            if (unorm > 0.0) run.max_curl_ratio = std::max(run.max_curl_ratio, l2_norm(g, spectral.curl(state.u)) / unorm);

            record_of_step[n] = run.records.size();
            run.records.push_back(rec);
            run.times.push_back(t);
            if (params.keep_snapshots) run.snapshots.push_back(state);
            run.potentials.push_back(pot);

            if (rec.status == MonitorStatus::triggered && options.stop_on_blowup) {
                run.status = RunStatus::blowup_detected;
                run.message = "blow-up monitor triggered at t = " + std::to_string(t);
                break;
            }
        }
        if (n == steps) break;

        double const bound = hydro_stable_dt(spectral, state, pot);
        if (dt > bound) {
            run.status = RunStatus::stability_violation;
            run.message = "dt = " + std::to_string(dt) + " exceeds the CFL bound " + std::to_string(bound) +
                          " at t = " + std::to_string(t);
            break;
        }
        state = step_rk4(spectral, state, dt, rhs, &k1, &last_mismatch);
        run.max_gradient_mismatch = std::max(run.max_gradient_mismatch, last_mismatch);
    }
    run.final_state = std::move(state);
    return run;
}

FieldForm euler_fields_form(Spectral const& spectral, HydroState const& state, Potentials const& potentials,
                            Potentials const& before, Potentials const& after, double span)
{
    auto const& g = spectral.grid();
    FieldForm out;
    auto const grad_V = spectral.gradient(potentials.V);
    for (int i = 0; i < 3; ++i) {
        out.E[i].resize(g.size());
        for (std::size_t p = 0; p < g.size(); ++p) {
            out.E[i][p] = -grad_V[i][p] - (after.A[i][p] - before.A[i][p]) / span;
        }
    }
    out.B = spectral.curl(potentials.A);
    out.velocity = state.u - potentials.A;
    return out;
}

FieldForm euler_fields_form(Spectral const& spectral, HydroRun const& run, std::size_t index)
{
    if (index == 0 || index + 1 >= run.times.size()) {
        throw InsufficientHistory("euler_fields_form: d_t A needs a sample on each side");
    }
    if (run.snapshots.size() != run.times.size()) {
        throw InsufficientHistory("euler_fields_form: run did not keep snapshots");
    }
    return euler_fields_form(spectral, run.snapshots[index], run.potentials[index], run.potentials[index - 1],
                             run.potentials[index + 1], run.times[index + 1] - run.times[index - 1]);
}

} // namespace poisswell
