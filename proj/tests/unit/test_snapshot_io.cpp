#include "doctest.h"

#include "poisswell/errors.hpp"
#include "poisswell/initial_data.hpp"
#include "poisswell/snapshot_io.hpp"

#include <filesystem>

using namespace poisswell;

TEST_CASE("property: PWF1 encode/decode round trip")
{
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        int const dim = 1 + seed % 3;
        Grid const g = Grid::cube(dim, 4 << seed % 2);
        auto const a = random_smooth_spinor(g, seed);
        auto const snap = make_snapshot(g, a);
        CHECK(snap.components.size() == 2);
        CHECK(decode_snapshot(encode_snapshot(snap)) == snap);
        auto const v = make_snapshot(g, VectorField{random_smooth_scalar(g, 1), random_smooth_scalar(g, 2),
                                                    random_smooth_scalar(g, 3)});
        CHECK(decode_snapshot(encode_snapshot(v)) == v);
    }
}

TEST_CASE("PWF1 header layout")
{
    Grid const g(2, {4, 2, 1});
    auto const bytes = encode_snapshot(make_snapshot(g, ScalarField(8, 1.5)));
    REQUIRE(bytes.size() == 4 + 4 + 8 + 4 + 4 + 8 * 16);
    CHECK(bytes.substr(0, 4) == "PWF1");
    CHECK(static_cast<unsigned char>(bytes[4]) == 2);
    CHECK(static_cast<unsigned char>(bytes[8]) == 4);
    CHECK(static_cast<unsigned char>(bytes[12]) == 2);
    CHECK(static_cast<unsigned char>(bytes[16]) == 1);
    CHECK(static_cast<unsigned char>(bytes[20]) == 0);
}

TEST_CASE("PWF1 rejects corrupt input")
{
    Grid const g = Grid::cube(1, 4);
    auto bytes = encode_snapshot(make_snapshot(g, ScalarField(4, 1.0)));
    CHECK_THROWS_AS(decode_snapshot(bytes.substr(0, bytes.size() - 1)), IoError);
    CHECK_THROWS_AS(decode_snapshot(bytes + "x"), IoError);
    bytes[0] = 'Q';
    CHECK_THROWS_AS(decode_snapshot(bytes), IoError);
    CHECK_THROWS_AS(decode_snapshot(""), IoError);
}

TEST_CASE("PWF1 file round trip")
{
    Grid const g = Grid::cube(1, 8);
    auto const snap = make_snapshot(g, random_smooth_spinor(g, 9));
    auto const path = std::filesystem::temp_directory_path() / "poisswell-unit-snapshot.pwf";
    write_snapshot(path, snap);
    CHECK(read_snapshot(path) == snap);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(read_snapshot(path), IoError);
}
