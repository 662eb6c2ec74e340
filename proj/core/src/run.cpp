#include "poisswell/run.hpp"

#include "poisswell/errors.hpp"
#include "poisswell/harness.hpp"
#include "poisswell/hydro.hpp"
#include "poisswell/initial_data.hpp"
#include "poisswell/pauli_solver.hpp"
#include "poisswell/plots.hpp"
#include "poisswell/report.hpp"
#include "poisswell/snapshot_io.hpp"
#include "poisswell/wigner.hpp"

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>

namespace poisswell {

namespace {

std::ostream& log_of(RunContext const& context)
{
    return context.log ? *context.log : std::cerr;
}

std::string numbered(std::string const& stem, std::size_t i)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%05zu", i);
    return stem + "_" + buf + ".pwf";
}

int exit_code(RunStatus status)
{
    switch (status) {
    case RunStatus::completed: return 0;
    case RunStatus::blowup_detected: return 2;
    case RunStatus::stability_violation: return 1;
    }
    return 1;
}

void finish(Manifest& manifest, std::string const& report_text)
{
    write_text(manifest.add("report.json"), report_text);
    emit_plots(report_text, manifest.root(), &manifest);
    manifest.write();
}

int run_single_hydro(RunConfig const& config, Manifest& manifest, std::ostream& log)
{
    auto const& setup = config.setup;
    Spectral const spectral(setup.grid);
    auto params = setup.params;
    if (config.kind == ExperimentKind::euler) params.epsilon = 0.0;
    params.keep_snapshots = params.keep_snapshots || config.write_snapshots;
    auto const init = make_initial_state(spectral, setup.data, params.epsilon);
    double const Q = initial_bound(spectral, init, params.s);
    log << "running " << to_string(config.kind) << " (eps = " << params.epsilon << ", T = " << params.t_final
        << ")\n";
    auto const run = run_hydro(spectral, init, params, setup.options);
    auto const envelope = envelope_check(run.records, params.s, setup.envelope_C_max);

    if (config.write_snapshots) {
        for (std::size_t i = 0; i < run.snapshots.size(); ++i) {
            auto const a_path = manifest.add("snapshots/" + numbered("a", i));
            std::filesystem::create_directories(a_path.parent_path());
            write_snapshot(a_path, make_snapshot(setup.grid, run.snapshots[i].a));
            write_snapshot(manifest.add("snapshots/" + numbered("u", i)), make_snapshot(setup.grid, run.snapshots[i].u));
            write_snapshot(manifest.add("snapshots/" + numbered("S", i)), make_snapshot(setup.grid, run.snapshots[i].S));
        }
    }
    write_diagnostics_jsonl(manifest.add("diagnostics.jsonl"), run.records);
    write_diagnostics_csv(manifest.add("diagnostics.csv"), run.records);
    finish(manifest, hydro_run_report(config, run, Q, envelope));
    log << "status: " << to_string(run.status) << (run.message.empty() ? "" : " (" + run.message + ")") << "\n";
    return exit_code(run.status);
}

int run_single_pauli(RunConfig const& config, Manifest& manifest, std::ostream& log)
{
    auto const& setup = config.setup;
    Spectral const spectral(setup.grid);
    auto params = setup.params;
    params.keep_snapshots = params.keep_snapshots || config.write_snapshots;
    auto const psi0 = make_initial_spinor(spectral, setup.data, params.epsilon);
    log << "running pauli (eps = " << params.epsilon << ", T = " << params.t_final << ")\n";
    auto const run = run_pauli(spectral, psi0, params, setup.options);
    auto const envelope = envelope_check(run.records, params.s, setup.envelope_C_max);

    if (config.write_snapshots) {
        for (std::size_t i = 0; i < run.snapshots.size(); ++i) {
            auto const path = manifest.add("snapshots/" + numbered("psi", i));
            std::filesystem::create_directories(path.parent_path());
            write_snapshot(path, make_snapshot(setup.grid, run.snapshots[i]));
        }
    }
    write_diagnostics_jsonl(manifest.add("diagnostics.jsonl"), run.records);
    write_diagnostics_csv(manifest.add("diagnostics.csv"), run.records);
    finish(manifest, spinor_run_report(config, run, envelope));
    log << "status: " << to_string(run.status) << (run.message.empty() ? "" : " (" + run.message + ")") << "\n";
    return exit_code(run.status);
}

int run_ladder(RunConfig const& config, Manifest& manifest, std::ostream& log)
{
    log << "running epsilon ladder over " << config.setup.epsilons.size() << " rungs\n";
    auto const ladder = epsilon_ladder(config.setup);
    auto const dc = density_current_limit(ladder);
    write_ladder_csv(manifest.add("ladder.csv"), ladder);
    write_text(manifest.add("timings.json"), ladder_timings(ladder));
    finish(manifest, ladder_report(config, ladder, dc));
    if (ladder.error_slope.defined) log << "error slope: " << ladder.error_slope.slope << "\n";
    else log << "error slope: undefined" << (ladder.degenerate ? " (degenerate ladder)" : "") << "\n";
    return ladder.reference_status == RunStatus::blowup_detected ? 2 : exit_code(ladder.reference_status);
}

int run_spinor_vs_wkb(RunConfig const& config, Manifest& manifest, std::ostream& log)
{
    log << "running spinor-vs-wkb (eps = " << config.setup.params.epsilon << ")\n";
    auto const report = spinor_vs_wkb(config.setup);
    finish(manifest, spinor_wkb_report(config, report));
    log << "max phase-invariant distance: " << report.max_distance << "\n";
    if (report.pauli_status == RunStatus::blowup_detected || report.wkb_status == RunStatus::blowup_detected) return 2;
    return std::max(exit_code(report.pauli_status), exit_code(report.wkb_status));
}

int run_monokinetic(RunConfig const& config, Manifest& manifest, std::ostream& log)
{
    log << "running monokinetic study over " << config.setup.epsilons.size() << " rungs\n";
    auto const report = monokinetic_study(config.setup);
    if (report.slice) write_wigner_csv(manifest.add("wigner_slice.csv"), *report.slice);
    finish(manifest, monokinetic_report(config, report));
    for (auto const& r : report.rungs) {
        if (r.status == RunStatus::blowup_detected) return 2;
    }
    return 0;
}

} // namespace

std::filesystem::path resolve_output_dir(RunConfig const& config, RunContext const& context)
{
    if (context.out) return *context.out;
    if (char const* env = std::getenv("POISSWELL_OUT"); env && *env) return env;
    return config.output_dir;
}

int run_experiment(RunConfig config, RunContext const& context)
{
    auto& log = log_of(context);
    try {
        if (context.threads) config.setup.threads = *context.threads;
        if (context.sample_every) config.setup.params.sample_every = *context.sample_every;
        validate_config(config);

        auto const root = resolve_output_dir(config, context);
        std::error_code ec;
        std::filesystem::create_directories(root, ec);
        if (ec || !std::filesystem::is_directory(root)) {
            throw IoError("cannot create output directory " + root.string() + (ec ? ": " + ec.message() : ""));
        }
        Manifest manifest(root);
        write_text(manifest.add("config.txt"), serialize_config(config));

        switch (config.kind) {
        case ExperimentKind::wkb:
        case ExperimentKind::euler: return run_single_hydro(config, manifest, log);
        case ExperimentKind::pauli: return run_single_pauli(config, manifest, log);
        case ExperimentKind::ladder: return run_ladder(config, manifest, log);
        case ExperimentKind::spinor_vs_wkb: return run_spinor_vs_wkb(config, manifest, log);
        case ExperimentKind::monokinetic: return run_monokinetic(config, manifest, log);
        }
        return 1;
    } catch (BlowupDetected const& e) {
        log << "blow-up: " << e.what() << "\n";
        return 2;
    } catch (std::exception const& e) {
        log << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_config_file(std::string const& path, RunContext const& context, bool ladder_only)
{
    try {
        auto config = load_config(path);
        if (ladder_only && config.kind != ExperimentKind::ladder) {
            throw ValidationError("kind", "the ladder command needs kind = \"ladder\"");
        }
        return run_experiment(std::move(config), context);
    } catch (std::exception const& e) {
        log_of(context) << "error: " << e.what() << "\n";
        return 1;
    }
}

int plot_report(std::string const& report_path, RunContext const& context)
{
    try {
        std::filesystem::path const report(report_path);
        auto const text = read_text(report);
        std::filesystem::path const dir = context.out ? std::filesystem::path(*context.out)
                                                      : (report.has_parent_path() ? report.parent_path() : ".");
        for (auto const& p : emit_plots(text, dir)) log_of(context) << "wrote " << p.string() << "\n";
        return 0;
    } catch (std::exception const& e) {
        log_of(context) << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace poisswell
