#pragma once

#include "poisswell/fields.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace poisswell {

/// In-memory image of a PWF1 field file.
///
/// Layout (all integers uint32 little-endian):
///   "PWF1" | dim | n_0 .. n_{dim-1} | components | representation
/// followed by, for each component in order, the lattice values in row-major
/// order (axis 0 slowest) as little-endian float64 pairs (re, im).
struct FieldSnapshot {
    int dim = 1;
    std::array<int, 3> points{1, 1, 1};
    Representation representation = Representation::physical;
    std::vector<ComplexField> components;

    bool operator==(FieldSnapshot const&) const = default;
};

FieldSnapshot make_snapshot(Grid const& g, ScalarField const& f);
FieldSnapshot make_snapshot(Grid const& g, VectorField const& v);
FieldSnapshot make_snapshot(Grid const& g, SpinorField const& a);

std::string encode_snapshot(FieldSnapshot const& s);
/// Throws IoError on a bad magic, truncated payload or inconsistent header.
FieldSnapshot decode_snapshot(std::string const& bytes);

void write_snapshot(std::filesystem::path const& path, FieldSnapshot const& s);
FieldSnapshot read_snapshot(std::filesystem::path const& path);

} // namespace poisswell
