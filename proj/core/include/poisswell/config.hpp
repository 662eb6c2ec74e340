#pragma once

#include "poisswell/harness.hpp"

#include <cstdint>
#include <string>

namespace poisswell {

enum class ExperimentKind { pauli, wkb, euler, ladder, spinor_vs_wkb, monokinetic };

std::string to_string(ExperimentKind kind);
ExperimentKind parse_kind(std::string const& name);

struct RunConfig {
    ExperimentKind kind = ExperimentKind::wkb;
    ExperimentSetup setup{};
    std::string output_dir = "poisswell-out";
    std::uint64_t seed = 0;
    /// Write a PWF1 snapshot at every sample of single runs.
    bool write_snapshots = true;

    bool operator==(RunConfig const&) const = default;
};

/// Parse the flat-section key/value format:
///
///     kind = "ladder"
///     [grid]
///     dim = 1
///     n = 256
///     [params]
///     epsilons = [0.4, 0.2, 0.1, 0.05]
///
/// Strings are double-quoted, lists use brackets, '#' starts a comment.
/// Throws ParseError (with line and key) on malformed text and ValidationError on
/// constraint violations. Keys not given keep their defaults.
RunConfig parse_config(std::string const& text);

RunConfig load_config(std::string const& path);

/// Text that parse_config maps back to an equal RunConfig.
std::string serialize_config(RunConfig const& config);

/// Checks the cross-field constraints; throws ValidationError naming the key.
void validate_config(RunConfig const& config);

} // namespace poisswell
