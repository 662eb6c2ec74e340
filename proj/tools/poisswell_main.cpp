#include "poisswell/run.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"poisswell: spectral Pauli-Poisswell / WKB / Euler-Poisswell laboratory"};
    app.require_subcommand(1);

    poisswell::RunContext context;
    context.log = &std::cerr;
    std::string out;
    int threads = 0;
    int sample_every = 0;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out, "output directory (overrides POISSWELL_OUT and the config)");
        cmd->add_option("--threads", threads, "worker threads for independent jobs")->check(CLI::PositiveNumber);
        cmd->add_option("--sample-every", sample_every, "record diagnostics every K steps")->check(CLI::PositiveNumber);
    };

    std::string config_path;
    auto* run = app.add_subcommand("run", "run the experiment described by a config file");
    run->add_option("config", config_path, "config file")->required();
    add_common(run);

    auto* ladder = app.add_subcommand("ladder", "run an epsilon ladder config");
    ladder->add_option("config", config_path, "config file")->required();
    add_common(ladder);

    std::string report_path;
    auto* plot = app.add_subcommand("plot", "emit gnuplot scripts for a report.json");
    plot->add_option("report", report_path, "report file")->required();
    plot->add_option("--out", out, "directory for the scripts (default: next to the report)");

    try {
        app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    if (!out.empty()) context.out = out;
    if (threads > 0) context.threads = threads;
    if (sample_every > 0) context.sample_every = sample_every;

    if (plot->parsed()) return poisswell::plot_report(report_path, context);
    return poisswell::run_config_file(config_path, context, ladder->parsed());
}
