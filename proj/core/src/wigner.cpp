#include "poisswell/wigner.hpp"

#include "poisswell/errors.hpp"
#include "poisswell/norms.hpp"
#include "poisswell/sources.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>

namespace poisswell {

WignerSlice wigner_slice(Spectral const& spectral, SpinorField const& psi, double epsilon,
                         std::vector<std::size_t> const& base_points)
{
    if (!(epsilon > 0.0)) throw ValidationError("epsilon", "the Wigner transform needs epsilon > 0");
    auto const& g = spectral.grid();
    int const n = g.points(0);
    int const m = 2 * n;
    double const L = g.length(0);

    WignerSlice slice;
    slice.epsilon = epsilon;
    slice.base_points = base_points;
    slice.dxi = epsilon * std::acos(-1.0) / L;
    slice.xi.resize(m);
    for (int k = 0; k < m; ++k) slice.xi[k] = slice.dxi * (k - n);

    Grid const line_grid(1, {m, 1, 1}, {L, 1.0, 1.0});
    Spectral const line(line_grid);
    double const dx = g.spacing(0);

    for (std::size_t b : base_points) {
        if (b >= g.size()) throw ValidationError("base_points", "index outside the grid");
        auto const idx = g.unravel(b);
        ComplexField sum(m, Complex{});
        for (auto const& c : psi) {
            ComplexField raw(n);
            for (int i = 0; i < n; ++i) raw[i] = c[g.index(i, idx[1], idx[2])];
            auto const fine = refine_periodic(raw, 2);
            int const centre = 2 * idx[0];
            ComplexField prod(m);
            for (int j = 0; j < m; ++j) {
                prod[j] = fine[(centre + j) % m] * std::conj(fine[((centre - j) % m + m) % m]);
            }
            auto const spec = line.forward(prod);
            for (int k = 0; k < m; ++k) sum[k] += spec[k];
        }
        // f_m = DFT(g)_m dy / (2 pi) with dy = dx / eps; bins reordered so xi increases.
        double const scale = dx / (epsilon * 2.0 * std::acos(-1.0));
        std::vector<double> values(m);
        for (int k = 0; k < m; ++k) {
            int const mode = k - n; // -n .. n-1
            Complex const z = sum[(mode + m) % m] * scale;
            values[k] = z.real();
            slice.max_imag = std::max(slice.max_imag, std::abs(z.imag()));
        }
        slice.values.push_back(std::move(values));
    }
    return slice;
}

std::vector<double> slice_density(WignerSlice const& slice)
{
    std::vector<double> out;
    for (auto const& v : slice.values) {
        double s = 0.0;
        for (double f : v) s += f;
        out.push_back(s * slice.dxi);
    }
    return out;
}

std::vector<double> slice_current(WignerSlice const& slice)
{
    std::vector<double> out;
    for (auto const& v : slice.values) {
        double s = 0.0;
        for (std::size_t k = 0; k < v.size(); ++k) s += slice.xi[k] * v[k];
        out.push_back(s * slice.dxi);
    }
    return out;
}

std::size_t nearest_bin(WignerSlice const& slice, double xi)
{
    double const pos = std::round(xi / slice.dxi) + static_cast<double>(slice.xi.size() / 2);
    double const clamped = std::clamp(pos, 0.0, static_cast<double>(slice.xi.size() - 1));
    return static_cast<std::size_t>(clamped);
}

double window_mass_fraction(WignerSlice const& slice, std::size_t b, double xi_center, int half_width)
{
    auto const& v = slice.values.at(b);
    long const centre = static_cast<long>(nearest_bin(slice, xi_center));
    double window = 0.0;
    double total = 0.0;
    for (long k = 0; k < static_cast<long>(v.size()); ++k) {
        total += v[k];
        if (std::abs(k - centre) <= half_width) window += v[k];
    }
    return total != 0.0 ? window / total : 0.0;
}

WignerMoments wigner_moments(Spectral const& spectral, SpinorField const& psi, double epsilon, VectorField const& A)
{
    return {density(psi), pauli_current(spectral, psi, A, epsilon)};
}

double monokinetic_defect(Spectral const& spectral, SpinorField const& psi, VectorField const& u, double epsilon)
{
    auto const& g = spectral.grid();
    constexpr Complex I{0.0, 1.0};
    double total = 0.0;
    for (auto const& c : psi) {
        auto const grad = spectral.gradient(c);
        for (int i = 0; i < 3; ++i) {
            for (std::size_t p = 0; p < g.size(); ++p) {
                Complex const d = i < g.dim() ? grad[i][p] : Complex{};
                total += std::norm(u[i][p] * c[p] + I * epsilon * d);
            }
        }
    }
    return total * g.cell_volume();
}

std::string wigner_metadata_json(WignerSlice const& slice)
{
    nlohmann::json j;
    j["epsilon"] = slice.epsilon;
    j["convention"] = "f(x,xi) = (2 pi)^-1 int exp(-i xi y) psi(x + eps y/2) conj(psi)(x - eps y/2) dy, spin trace";
    j["normalization"] = "sum_xi f dxi = rho(x)";
    j["axis"] = 0;
    j["dxi"] = slice.dxi;
    j["xi_min"] = slice.xi.empty() ? 0.0 : slice.xi.front();
    j["xi_count"] = slice.xi.size();
    j["base_points"] = slice.base_points;
    j["max_imag"] = slice.max_imag;
    return j.dump();
}

void write_wigner_csv(std::filesystem::path const& path, WignerSlice const& slice)
{
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << "# " << wigner_metadata_json(slice) << '\n';
    out << "x_index,xi,f\n";
    out << std::setprecision(17);
    for (std::size_t b = 0; b < slice.values.size(); ++b) {
        for (std::size_t k = 0; k < slice.xi.size(); ++k) {
            out << slice.base_points[b] << ',' << slice.xi[k] << ',' << slice.values[b][k] << '\n';
        }
    }
    if (!out) throw IoError("write failed: " + path.string());
}

} // namespace poisswell
