#include "poisswell/snapshot_io.hpp"

#include "poisswell/errors.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

namespace poisswell {

namespace {

constexpr char magic[4] = {'P', 'W', 'F', '1'};

void put_u32(std::string& out, std::uint32_t v)
{
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xffu));
}

void put_f64(std::string& out, double x)
{
    auto const bits = std::bit_cast<std::uint64_t>(x);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xffu));
}

class Reader {
public:
    explicit Reader(std::string const& bytes) : bytes_(bytes) {}

    std::uint32_t u32()
    {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
        pos_ += 4;
        return v;
    }

    double f64()
    {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i])) << (8 * i);
        pos_ += 8;
        return std::bit_cast<double>(v);
    }

    void expect_magic()
    {
        need(4);
        if (std::memcmp(bytes_.data() + pos_, magic, 4) != 0) throw IoError("PWF1: bad magic");
        pos_ += 4;
    }

    bool at_end() const { return pos_ == bytes_.size(); }

private:
    void need(std::size_t n) const
    {
        if (pos_ + n > bytes_.size()) throw IoError("PWF1: truncated file");
    }

    std::string const& bytes_;
    std::size_t pos_ = 0;
};

FieldSnapshot header_for(Grid const& g)
{
    FieldSnapshot s;
    s.dim = g.dim();
    s.points = g.points();
    return s;
}

} // namespace

FieldSnapshot make_snapshot(Grid const& g, ScalarField const& f)
{
    auto s = header_for(g);
    s.components.push_back(to_complex(f));
    return s;
}

FieldSnapshot make_snapshot(Grid const& g, VectorField const& v)
{
    auto s = header_for(g);
    for (auto const& c : v) s.components.push_back(to_complex(c));
    return s;
}

FieldSnapshot make_snapshot(Grid const& g, SpinorField const& a)
{
    auto s = header_for(g);
    for (auto const& c : a) s.components.push_back(c);
    return s;
}

std::string encode_snapshot(FieldSnapshot const& s)
{
    std::size_t npts = 1;
    for (int axis = 0; axis < s.dim; ++axis) npts *= static_cast<std::size_t>(s.points[axis]);

    std::string out(magic, 4);
    put_u32(out, static_cast<std::uint32_t>(s.dim));
    for (int axis = 0; axis < s.dim; ++axis) put_u32(out, static_cast<std::uint32_t>(s.points[axis]));
    put_u32(out, static_cast<std::uint32_t>(s.components.size()));
    put_u32(out, static_cast<std::uint32_t>(s.representation));
    out.reserve(out.size() + s.components.size() * npts * 16);
    for (auto const& c : s.components) {
        if (c.size() != npts) throw IoError("PWF1: component size does not match header");
        for (auto const& z : c) {
            put_f64(out, z.real());
            put_f64(out, z.imag());
        }
    }
    return out;
}

FieldSnapshot decode_snapshot(std::string const& bytes)
{
    Reader in(bytes);
    in.expect_magic();
    FieldSnapshot s;
    auto const dim = in.u32();
    if (dim < 1 || dim > 3) throw IoError("PWF1: dimension out of range");
    s.dim = static_cast<int>(dim);
    std::size_t npts = 1;
    for (int axis = 0; axis < s.dim; ++axis) {
        s.points[axis] = static_cast<int>(in.u32());
        if (s.points[axis] < 1) throw IoError("PWF1: empty axis");
        npts *= static_cast<std::size_t>(s.points[axis]);
    }
    auto const ncomp = in.u32();
    auto const repr = in.u32();
    if (repr > 1) throw IoError("PWF1: unknown representation flag");
    s.representation = static_cast<Representation>(repr);
    if (bytes.size() < ncomp * npts * 16) throw IoError("PWF1: truncated file");
    s.components.resize(ncomp);
    for (auto& c : s.components) {
        c.resize(npts);
        for (auto& z : c) {
            double const re = in.f64();
            double const im = in.f64();
            z = {re, im};
        }
    }
    if (!in.at_end()) throw IoError("PWF1: trailing bytes");
    return s;
}

void write_snapshot(std::filesystem::path const& path, FieldSnapshot const& s)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    auto const bytes = encode_snapshot(s);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("failed writing " + path.string());
}

FieldSnapshot read_snapshot(std::filesystem::path const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_snapshot(bytes);
}

} // namespace poisswell
