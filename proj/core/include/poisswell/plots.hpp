#pragma once

#include "poisswell/report.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace poisswell {

/// Gnuplot scripts with inline data blocks, rendered from a report document:
/// errors_vs_epsilon.gp (one log-log curve per ladder metric), diagnostics_vs_time.gp,
/// wigner_slice.gp (heat data) and defect_bars.gp. Sections the report lacks get empty
/// data blocks, so every script stays valid. Returns the written paths.
std::vector<std::filesystem::path> emit_plots(std::string const& report_json, std::filesystem::path const& out_dir,
                                              Manifest* manifest = nullptr);

} // namespace poisswell
