#pragma once

#include "poisswell/config.hpp"
#include "poisswell/diagnostics.hpp"
#include "poisswell/harness.hpp"
#include "poisswell/hydro.hpp"
#include "poisswell/pauli_solver.hpp"

#include <filesystem>
#include <mutex>
#include <string>
#include <vector>

namespace poisswell {

/// One JSON object per record; optional fields appear as null.
std::string record_json(DiagnosticsRecord const& record);

void write_diagnostics_jsonl(std::filesystem::path const& path, std::vector<DiagnosticsRecord> const& records);
void write_diagnostics_csv(std::filesystem::path const& path, std::vector<DiagnosticsRecord> const& records);

/// Report documents. None of them contain wall-clock data, so identical inputs give identical text.
std::string hydro_run_report(RunConfig const& config, HydroRun const& run, double Q, EnvelopeReport const& envelope);
std::string spinor_run_report(RunConfig const& config, SpinorRun const& run, EnvelopeReport const& envelope);
std::string ladder_report(RunConfig const& config, LadderReport const& ladder, DensityCurrentReport const& dc);
std::string spinor_wkb_report(RunConfig const& config, SpinorWkbReport const& report);
std::string monokinetic_report(RunConfig const& config, MonokineticReport const& report);

void write_ladder_csv(std::filesystem::path const& path, LadderReport const& ladder);

/// Wall-clock per ladder rung, kept apart from the deterministic report.
std::string ladder_timings(LadderReport const& ladder);

/// Write text, creating parent directories. Throws IoError.
void write_text(std::filesystem::path const& path, std::string const& text);
std::string read_text(std::filesystem::path const& path);

/// Artifact list for one output directory. Paths are stored relative to the root and
/// written to manifest.txt, one per line, the manifest itself last.
class Manifest {
public:
    explicit Manifest(std::filesystem::path root);

    std::filesystem::path const& root() const noexcept { return root_; }
    /// Absolute path for a relative artifact name; records it.
    std::filesystem::path add(std::filesystem::path const& relative);
    std::vector<std::string> entries() const;
    /// Writes manifest.txt and returns its path.
    std::filesystem::path write() const;

private:
    std::filesystem::path root_;
    mutable std::mutex mutex_;
    std::vector<std::string> entries_;
};

} // namespace poisswell
