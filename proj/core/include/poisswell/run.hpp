#pragma once

#include "poisswell/config.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace poisswell {

/// Command-line overrides applied on top of a RunConfig.
struct RunContext {
    /// --out; wins over POISSWELL_OUT and the config.
    std::optional<std::string> out;
    std::optional<int> threads;
    std::optional<int> sample_every;
    /// Progress and error messages; never affects results.
    std::ostream* log = nullptr;
};

/// --out, else the POISSWELL_OUT environment variable, else output.dir from the config.
std::filesystem::path resolve_output_dir(RunConfig const& config, RunContext const& context);

/// Run the experiment and write its artifacts plus manifest.txt.
/// Returns 0 on success, 2 when the blow-up monitor stopped a run (artifacts still written),
/// 1 on any error.
int run_experiment(RunConfig config, RunContext const& context);

/// Parse a config file and run it; `ladder_only` rejects configs whose kind is not ladder.
int run_config_file(std::string const& path, RunContext const& context, bool ladder_only = false);

/// Emit plot scripts for an existing report next to it (or into context.out). Returns 0 or 1.
int plot_report(std::string const& report_path, RunContext const& context);

} // namespace poisswell
