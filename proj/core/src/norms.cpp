#include "poisswell/norms.hpp"

#include "poisswell/errors.hpp"

#include <algorithm>
#include <cmath>

namespace poisswell {

Components components(ScalarField const& f) { return {to_complex(f)}; }
Components components(ComplexField const& f) { return {f}; }
Components components(VectorField const& v) { return {to_complex(v[0]), to_complex(v[1]), to_complex(v[2])}; }
Components components(SpinorField const& a) { return {a[0], a[1]}; }

double l2_norm(Grid const& g, Components const& f)
{
    double s = 0.0;
    for (auto const& c : f) {
        for (auto const& z : c) s += std::norm(z);
    }
    return std::sqrt(s * g.cell_volume());
}

namespace {

// Spectral energy weight so that sum_k w |f_k|^2 reproduces the continuous L2 integral.
double parseval_scale(Grid const& g)
{
    double const n = static_cast<double>(g.size());
    return g.cell_volume() / n;
}

// All multi-indices over the active axes with total order exactly `order`.
std::vector<std::array<int, 3>> multi_indices(int dim, int order)
{
    std::vector<std::array<int, 3>> out;
    for (int a = 0; a <= order; ++a) {
        for (int b = 0; b <= order - a; ++b) {
            int const c = order - a - b;
            std::array<int, 3> alpha{a, b, c};
            bool ok = true;
            for (int axis = dim; axis < 3; ++axis) {
                if (alpha[axis] != 0) ok = false;
            }
            if (ok) out.push_back(alpha);
        }
    }
    return out;
}

ComplexField derivative_spectrum(Spectral const& spectral, ComplexField const& fh, std::array<int, 3> const& alpha)
{
    auto const& g = spectral.grid();
    ComplexField out = fh;
    for (std::size_t p = 0; p < out.size(); ++p) {
        auto const idx = g.unravel(p);
        Complex factor{1.0, 0.0};
        for (int axis = 0; axis < 3; ++axis) {
            if (alpha[axis] == 0) continue;
            // Odd orders use the odd table (Nyquist removed); even orders keep the Nyquist bin.
            double const k = (alpha[axis] % 2 == 1) ? g.derivative_wavenumbers(axis)[idx[axis]]
                                                    : g.wavenumbers(axis)[idx[axis]];
            factor *= std::pow(Complex(0.0, k), alpha[axis]);
        }
        out[p] *= factor;
    }
    return out;
}

} // namespace

double sobolev_norm(Spectral const& spectral, Components const& f, SobolevIndex index)
{
    if (index.s < 0.0) {
        throw ValidationError("s", "Sobolev regularity must be nonnegative");
    }
    auto const& g = spectral.grid();
    double const scale = parseval_scale(g);

    if (index.variant == SobolevIndex::Variant::fourier_weight) {
        auto const& k2 = g.k_squared();
        double s2 = 0.0;
        for (auto const& c : f) {
            auto const fh = spectral.forward(c);
            for (std::size_t p = 0; p < fh.size(); ++p) {
                s2 += std::pow(1.0 + k2[p], index.s) * std::norm(fh[p]);
            }
        }
        return std::sqrt(s2 * scale);
    }

    int const order = static_cast<int>(std::floor(index.s));
    std::vector<ComplexField> spectra;
    spectra.reserve(f.size());
    for (auto const& c : f) spectra.push_back(spectral.forward(c));

    double total = 0.0;
    for (int m = 0; m <= order; ++m) {
        for (auto const& alpha : multi_indices(g.dim(), m)) {
            double e = 0.0;
            for (auto const& fh : spectra) {
                for (auto const& z : derivative_spectrum(spectral, fh, alpha)) e += std::norm(z);
            }
            total += std::sqrt(e * scale);
        }
    }
    return total;
}

PointwiseNorms pointwise_norms(Spectral const& spectral, Components const& f)
{
    auto const& g = spectral.grid();
    std::vector<ComplexField> spectra;
    for (auto const& c : f) spectra.push_back(spectral.forward(c));

    // Pointwise magnitude (over components) of d^alpha f.
    auto magnitude = [&](std::array<int, 3> const& alpha) {
        ScalarField mag(g.size(), 0.0);
        for (auto const& fh : spectra) {
            auto const d = spectral.inverse(derivative_spectrum(spectral, fh, alpha));
            for (std::size_t p = 0; p < mag.size(); ++p) mag[p] += std::norm(d[p]);
        }
        for (auto& m : mag) m = std::sqrt(m);
        return mag;
    };
    auto l3 = [&](ScalarField const& mag) {
        double s = 0.0;
        for (double m : mag) s += m * m * m;
        return std::cbrt(s * g.cell_volume());
    };

    PointwiseNorms out;
    auto const m0 = magnitude({0, 0, 0});
    out.linf = *std::max_element(m0.begin(), m0.end());
    out.w1inf = out.linf;
    out.w23 = l3(m0);
    for (auto const& alpha : multi_indices(g.dim(), 1)) {
        auto const m1 = magnitude(alpha);
        out.w1inf += *std::max_element(m1.begin(), m1.end());
        out.w23 += l3(m1);
    }
    for (auto const& alpha : multi_indices(g.dim(), 2)) {
        out.w23 += l3(magnitude(alpha));
    }
    return out;
}

Complex inner_product(Grid const& g, SpinorField const& f, SpinorField const& h)
{
    Complex s{};
    for (int c = 0; c < 2; ++c) {
        for (std::size_t p = 0; p < f[c].size(); ++p) s += std::conj(f[c][p]) * h[c][p];
    }
    return s * g.cell_volume();
}

} // namespace poisswell
