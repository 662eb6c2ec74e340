// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include "poisswell/config.hpp"
#include "poisswell/diagnostics.hpp"
#include "poisswell/elliptic.hpp"
#include "poisswell/harness.hpp"
#include "poisswell/hydro.hpp"
#include "poisswell/initial_data.hpp"
#include "poisswell/pauli_solver.hpp"
#include "poisswell/report.hpp"
#include "poisswell/run.hpp"
#include "poisswell/sources.hpp"
#include "poisswell/wigner.hpp"

#include "../support/oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace poisswell;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::map<int, Outcome> outcomes;
std::vector<std::pair<std::string, EnvelopeReport>> envelopes;

std::string fmt(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

void record(int id, std::function<Outcome()> const& body)
{
    auto const start = std::chrono::steady_clock::now();
    Outcome out;
    try {
        out = body();
    } catch (std::exception const& e) {
        out = {false, std::string("exception: ") + e.what()};
    }
    double const secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.detail += " [" + fmt(secs) + " s]";
    std::cerr << "criterion " << id << " done in " << fmt(secs) << " s\n";
    outcomes[id] = out;
}

double relative_drift(std::vector<DiagnosticsRecord> const& records)
{
    double worst = 0.0;
    for (auto const& r : records) {
        worst = std::max(worst, std::abs(r.charge - records.front().charge) / records.front().charge);
    }
    return worst;
}

double max_continuity(std::vector<DiagnosticsRecord> const& records)
{
    double worst = 0.0;
    for (auto const& r : records) {
        if (r.continuity_residual) worst = std::max(worst, *r.continuity_residual);
    }
    return worst;
}

InitialDataSpec bump()
{
    InitialDataSpec d;
    d.family = InitialFamily::gaussian_bump;
    return d;
}

// 1. Elliptic oracles.
Outcome elliptic()
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::uniform_int_distribution<int> mode(1, 6);
    double worst_poisson = 0.0;
    for (int dim = 1; dim <= 3; ++dim) {
        Grid const g = Grid::cube(dim, dim == 3 ? 16 : 32);
        Spectral const spectral(g);
        for (int trial = 0; trial < 5; ++trial) {
            auto const modes = oracle::random_modes(rng, dim, 5, 6);
            auto const V = oracle::mode_sum(g, modes);
            auto const rho = oracle::mode_sum_neg_laplacian(g, modes);
            ScalarField shifted = rho;
            for (auto& x : shifted) x += 1.0; // background must not matter
            auto const got = solve_poisson_neutral(spectral, shifted);
            worst_poisson = std::max(worst_poisson, oracle::relative_l2(got, V));
        }
    }

    Grid const g = Grid::cube(1, 32);
    Spectral const spectral(g);
    double worst_screened = 0.0;
    for (int trial = 0; trial < 3; ++trial) {
        ScalarField rho(g.size());
        for (auto& r : rho) r = 1.0 + 0.5 * coef(rng);
        VectorField rhs;
        for (auto& c : rhs) {
            c.resize(g.size());
            for (auto& x : c) x = coef(rng);
        }
        auto const A = solve_screened_vector(spectral, rhs, rho);
        auto const M = oracle::dense_screened_matrix(32, g.length(0), rho);
        for (int i = 0; i < 3; ++i) {
            auto const ref = oracle::gauss_solve(M, rhs[i]);
            worst_screened = std::max(worst_screened, oracle::relative_l2(A[i], ref));
        }
    }
    bool const pass = worst_poisson <= 1e-12 && worst_screened <= 1e-8;
    return {pass, "poisson rel err " + fmt(worst_poisson) + ", screened vs dense " + fmt(worst_screened)};
}

// 2. Charge conservation.
Outcome charge_conservation()
{
    Grid const g = Grid::cube(1, 128);
    Spectral const spectral(g);
    SimParams p;
    p.epsilon = 0.1;
    p.t_final = 0.5;
    p.dt = 1e-3;
    p.sample_every = 25;
    auto const wkb = run_hydro(spectral, make_initial_state(spectral, bump(), p.epsilon), p);
    envelopes.emplace_back("charge/wkb", envelope_check(wkb.records, p.s));
    auto const spin = run_pauli(spectral, make_initial_spinor(spectral, bump(), p.epsilon), p);
    envelopes.emplace_back("charge/spinor", envelope_check(spin.records, p.s));
    double const dw = relative_drift(wkb.records);
    double const ds = relative_drift(spin.records);
    bool const pass = wkb.status == RunStatus::completed && spin.status == RunStatus::completed && dw <= 1e-6 &&
                      ds <= 1e-6;
    return {pass, "wkb drift " + fmt(dw) + ", spinor drift " + fmt(ds)};
}

// 3. Continuity residual order under dt halving.
Outcome continuity()
{
    Grid const g = Grid::cube(1, 128);
    Spectral const spectral(g);
    std::vector<double> wkb_res, spin_res;
    for (int level = 0; level < 2; ++level) {
        SimParams p;
        p.epsilon = 0.1;
        p.t_final = 0.2;
        p.dt = 4e-3 / (1 << level);
        p.sample_every = 10 << level;
        auto const wkb = run_hydro(spectral, make_initial_state(spectral, bump(), p.epsilon), p);
        auto const spin = run_pauli(spectral, make_initial_spinor(spectral, bump(), p.epsilon), p);
        envelopes.emplace_back("continuity/wkb", envelope_check(wkb.records, p.s));
        envelopes.emplace_back("continuity/spinor", envelope_check(spin.records, p.s));
        wkb_res.push_back(max_continuity(wkb.records));
        spin_res.push_back(max_continuity(spin.records));
    }
    double const rw = wkb_res[0] / wkb_res[1];
    double const rs = spin_res[0] / spin_res[1];
    auto const ratio = [](double r) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6f (order %.4f)", r, std::log2(r));
        return std::string(buf);
    };
    return {rw >= 4.0 && rs >= 4.0, "wkb ratio " + ratio(rw) + ", spinor ratio " + ratio(rs) + "; residuals " +
                                         fmt(wkb_res[0]) + " -> " + fmt(wkb_res[1]) + " and " + fmt(spin_res[0]) +
                                         " -> " + fmt(spin_res[1])};
}

// 4. Stern-Gerlach reality.
Outcome stern_gerlach()
{
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Grid const g = Grid::cube(1 + seed % 3, seed % 3 == 2 ? 8 : 32);
        auto const a = random_smooth_spinor(g, seed);
        VectorField B;
        for (int i = 0; i < 3; ++i) B[i] = random_smooth_scalar(g, 100 + 3 * seed + i);
        worst = std::max(worst, max_abs(stern_gerlach_real_part(a, B)));
    }
    return {worst <= 1e-12, "max |Re(i conj(a) (sigma.B) a)| = " + fmt(worst)};
}

// 5. Current identity on reconstructed spinors.
Outcome current_identity()
{
    double worst = 0.0;
    for (double eps : {0.5, 0.1}) {
        for (std::uint64_t seed = 1; seed <= 6; ++seed) {
            int const dim = seed <= 3 ? 1 : 2;
            Grid const g = Grid::cube(dim, dim == 1 ? 256 : 128);
            Spectral const spectral(g);
            HydroState st;
            st.epsilon = eps;
            st.a = random_smooth_spinor(g, seed, 3, 0.5);
            for (auto& c : st.a)
                for (auto& z : c) z += 1.0;
            st.S = random_smooth_scalar(g, 50 + seed, 3, 0.1);
            st.u = spectral.gradient(st.S);
            VectorField A;
            for (int i = 0; i < 3; ++i) A[i] = random_smooth_scalar(g, 90 + 7 * seed + i, 3, 0.5);
            auto const psi = reconstruct_spinor(g, st);
            auto const J1 = pauli_current(spectral, psi, A, eps);
            auto const J2 = wkb_current(spectral, st.a, st.u, A, eps);
            double num = 0.0, den = 0.0;
            for (int i = 0; i < 3; ++i) {
                for (std::size_t p = 0; p < g.size(); ++p) {
                    num += (J1[i][p] - J2[i][p]) * (J1[i][p] - J2[i][p]);
                    den += J2[i][p] * J2[i][p];
                }
            }
            worst = std::max(worst, std::sqrt(num / den));
        }
    }
    return {worst <= 1e-10, "max relative mismatch " + fmt(worst)};
}

// 6. Free plane wave.
Outcome free_particle()
{
    Grid const g = Grid::cube(1, 64);
    Spectral const spectral(g);
    double worst = 0.0;
    for (double eps : {0.5, 0.1}) {
        SimParams p;
        p.epsilon = eps;
        p.electric = false;
        p.magnetic = false;
        p.t_final = 1.0;
        p.dt = 0.01;
        p.sample_every = 100;
        InitialDataSpec d;
        d.family = InitialFamily::plane_wave;
        d.k = {3.0, 0.0, 0.0};
        auto const run = run_pauli(spectral, make_initial_spinor(spectral, d, eps), p, RunOptions{{}, true, false});
        double const k = 3.0;
        for (std::size_t q = 0; q < g.size(); ++q) {
            double const x = g.coordinate(q, 0);
            Complex const exact = std::exp(Complex(0.0, k * x - eps * k * k * p.t_final / 2.0));
            worst = std::max(worst, std::abs(run.final_state[0][q] - exact));
            worst = std::max(worst, std::abs(run.final_state[1][q]));
        }
    }
    return {worst <= 1e-12, "max pointwise error " + fmt(worst)};
}

// 7. Energy in the A = 0 mode.
Outcome energy_drift()
{
    Grid const g = Grid::cube(1, 256);
    Spectral const spectral(g);
    SimParams p;
    p.epsilon = 0.1;
    p.magnetic = false;
    p.t_final = 0.5;
    p.dt = 1e-3;
    p.sample_every = 25;
    auto const run = run_pauli(spectral, make_initial_spinor(spectral, bump(), p.epsilon), p);
    envelopes.emplace_back("energy/spinor", envelope_check(run.records, p.s));
    double const e0 = *run.records.front().energy;
    double worst = 0.0;
    for (auto const& r : run.records) worst = std::max(worst, std::abs(*r.energy - e0) / e0);
    return {run.status == RunStatus::completed && worst <= 1e-4, "relative energy drift " + fmt(worst)};
}

ExperimentSetup ladder_setup()
{
    ExperimentSetup setup;
    setup.grid = Grid::cube(1, 256);
    setup.data = bump();
    setup.params.s = 4.0;
    setup.params.t_final = 0.3;
    setup.params.dt = 5e-4;
    setup.params.sample_every = 20;
    setup.epsilons = {0.4, 0.2, 0.1, 0.05};
    return setup;
}

LadderReport const& ladder()
{
    static LadderReport const report = [] {
        auto const r = epsilon_ladder(ladder_setup());
        envelopes.emplace_back("ladder/reference", r.reference_envelope);
        for (auto const& rung : r.rungs) envelopes.emplace_back("ladder/eps=" + fmt(rung.epsilon), rung.envelope);
        return r;
    }();
    return report;
}

// 8. Semiclassical limit rate.
Outcome semiclassical()
{
    auto const& r = ladder();
    std::string errs;
    for (auto const& rung : r.rungs) errs += (errs.empty() ? "" : ", ") + fmt(rung.error_sup);
    bool const pass = r.preflight_ok && r.error_monotone && r.error_slope.defined && r.error_slope.slope >= 0.8;
    return {pass, "errors [" + errs + "], slope " + fmt(r.error_slope.slope) +
                      (r.error_monotone ? ", monotone" : ", not monotone")};
}

// 9. Density and current limit.
Outcome density_current()
{
    auto const dc = density_current_limit(ladder());
    bool ratios_ok = !dc.eps_term_ratios.empty();
    std::string ratios;
    for (double q : dc.eps_term_ratios) {
        ratios += (ratios.empty() ? "" : ", ") + fmt(q);
        ratios_ok = ratios_ok && q >= 0.4 && q <= 0.6;
    }
    bool const pass = dc.rho_slope.defined && dc.rho_slope.slope >= 0.8 && dc.current_slope.defined &&
                      dc.current_slope.slope >= 0.8 && ratios_ok;
    return {pass, "rho slope " + fmt(dc.rho_slope.slope) + ", current slope " + fmt(dc.current_slope.slope) +
                      ", eps-term ratios [" + ratios + "]"};
}

// 10. Monokinetic concentration.
Outcome monokinetic()
{
    auto setup = ladder_setup();
    auto const report = monokinetic_study(setup);
    bool pass = report.rungs.size() == setup.epsilons.size();
    std::string ratios;
    for (double q : report.defect_ratios) {
        ratios += (ratios.empty() ? "" : ", ") + fmt(q);
        pass = pass && q <= 0.3;
    }
    std::string windows;
    auto const& last = report.rungs.back();
    for (double w : last.window_fractions) {
        windows += (windows.empty() ? "" : ", ") + fmt(w);
        pass = pass && w >= 0.9;
    }
    pass = pass && last.window_fractions.size() == 3;
    return {pass, "defect ratios [" + ratios + "], window mass at eps=" + fmt(last.epsilon) + " [" + windows + "]"};
}

// 12. Blow-up monitor.
Outcome blowup()
{
    Grid const g = Grid::cube(1, 256);
    Spectral const spectral(g);
    SimParams p;
    p.epsilon = 0.0;
    p.t_final = 2.0;
    p.dt = 2e-4;
    p.sample_every = 1;
    InitialDataSpec d;
    d.family = InitialFamily::compressive;
    d.beta = 3.0;
    RunOptions opts;
    opts.residuals = false;
    auto const run = run_hydro(spectral, make_initial_state(spectral, d, 0.0), p, opts);
    bool const triggered = run.status == RunStatus::blowup_detected && run.records.back().t < 2.0;
    bool monotone = run.records.size() >= 21;
    for (std::size_t i = run.records.size() - std::min<std::size_t>(20, run.records.size()); monotone && i + 1 < run.records.size(); ++i) {
        monotone = run.records[i + 1].M > run.records[i].M;
    }

    Grid const g2 = Grid::cube(1, 64);
    Spectral const spectral2(g2);
    SimParams q;
    q.epsilon = 0.0;
    q.t_final = 10.0;
    q.dt = 0.01;
    q.sample_every = 10;
    auto const calm = run_hydro(spectral2, make_initial_state(spectral2, InitialDataSpec{}, 0.0), q);
    envelopes.emplace_back("blowup/uniform", envelope_check(calm.records, q.s));
    bool const quiet = calm.status == RunStatus::completed;
    return {triggered && monotone && quiet,
            std::string("compressive ") + (triggered ? "triggered at t = " + fmt(run.records.back().t) : "did not trigger") +
                (monotone ? ", M monotone over last 20 samples" : ", M not monotone") +
                (quiet ? "; uniform quiet to T = 10" : "; uniform run triggered")};
}

// 11. A priori envelope over the pre-caustic runs above.
Outcome envelope()
{
    bool pass = !envelopes.empty();
    double worst = 0.0;
    std::string failing;
    for (auto const& [name, e] : envelopes) {
        worst = std::max(worst, e.C);
        if (!e.pass) {
            pass = false;
            failing += " " + name;
        }
    }
    return {pass, std::to_string(envelopes.size()) + " runs, largest C " + fmt(worst) +
                      (failing.empty() ? "" : ", failing:" + failing)};
}

// 13. Determinism.
Outcome determinism()
{
    RunConfig config;
    config.kind = ExperimentKind::wkb;
    config.setup.grid = Grid::cube(1, 64);
    config.setup.data = bump();
    config.setup.params.t_final = 0.1;
    config.setup.params.dt = 1e-3;
    config.write_snapshots = false;
    auto const base = std::filesystem::temp_directory_path() / "poisswell-acceptance-determinism";
    std::filesystem::remove_all(base);
    std::ostringstream sink;
    std::string reports[2];
    for (int i = 0; i < 2; ++i) {
        RunContext ctx;
        ctx.out = (base / std::to_string(i)).string();
        ctx.log = &sink;
        if (run_experiment(config, ctx) != 0) return {false, "run failed: " + sink.str()};
        reports[i] = read_text(base / std::to_string(i) / "report.json");
    }
    std::filesystem::remove_all(base);
    bool const same = reports[0] == reports[1] && !reports[0].empty();
    return {same, same ? "reports identical (" + std::to_string(reports[0].size()) + " bytes)" : "reports differ"};
}

// 14. 3D smoke test.
Outcome smoke_3d()
{
    Grid const g = Grid::cube(3, 32);
    Spectral const spectral(g);
    SimParams p;
    p.epsilon = 0.2;
    p.t_final = 0.05;
    p.dt = 5e-3;
    p.sample_every = 5;
    auto const run = run_hydro(spectral, make_initial_state(spectral, bump(), p.epsilon), p);
    double const drift = relative_drift(run.records);
    return {run.status == RunStatus::completed && drift <= 1e-5, "charge drift " + fmt(drift)};
}

} // namespace

int main()
{
    record(1, elliptic);
    record(2, charge_conservation);
    record(3, continuity);
    record(4, stern_gerlach);
    record(5, current_identity);
    record(6, free_particle);
    record(7, energy_drift);
    record(8, semiclassical);
    record(9, density_current);
    record(10, monokinetic);
    record(12, blowup);
    record(11, envelope);
    record(13, determinism);
    record(14, smoke_3d);

    int failures = 0;
    for (auto const& [id, out] : outcomes) {
        std::cout << "criterion " << id << ": " << (out.pass ? "PASS" : "FAIL") << " - " << out.detail << "\n";
        if (!out.pass) ++failures;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
    return failures == 0 ? 0 : 1;
}
