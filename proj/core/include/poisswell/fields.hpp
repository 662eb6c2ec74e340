#pragma once

#include "poisswell/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <vector>

namespace poisswell {

using Complex = std::complex<double>;

/// Real scalar lattice field in physical representation.
using ScalarField = std::vector<double>;
/// Complex scalar lattice field; also used for spectra.
using ComplexField = std::vector<Complex>;
/// Real 3-component field. For d < 3 the components depend only on the active coordinates.
using VectorField = std::array<ScalarField, 3>;
using ComplexVectorField = std::array<ComplexField, 3>;
/// Complex 2-spinor field.
using SpinorField = std::array<ComplexField, 2>;

enum class Representation : std::uint32_t { physical = 0, spectral = 1 };

inline ScalarField zero_scalar(Grid const& g) { return ScalarField(g.size(), 0.0); }
inline ComplexField zero_complex(Grid const& g) { return ComplexField(g.size(), Complex{}); }
inline VectorField zero_vector(Grid const& g) { return {zero_scalar(g), zero_scalar(g), zero_scalar(g)}; }
inline SpinorField zero_spinor(Grid const& g) { return {zero_complex(g), zero_complex(g)}; }

/// Fill a scalar field from a function of the three coordinates.
template <class Fn>
ScalarField sample(Grid const& g, Fn&& fn)
{
    ScalarField f(g.size());
    for (std::size_t p = 0; p < g.size(); ++p) {
        f[p] = fn(g.coordinate(p, 0), g.coordinate(p, 1), g.coordinate(p, 2));
    }
    return f;
}

template <class Fn>
ComplexField sample_complex(Grid const& g, Fn&& fn)
{
    ComplexField f(g.size());
    for (std::size_t p = 0; p < g.size(); ++p) {
        f[p] = fn(g.coordinate(p, 0), g.coordinate(p, 1), g.coordinate(p, 2));
    }
    return f;
}

inline double mean(ScalarField const& f)
{
    return f.empty() ? 0.0 : std::accumulate(f.begin(), f.end(), 0.0) / static_cast<double>(f.size());
}

inline double max_abs(ScalarField const& f)
{
    double m = 0.0;
    for (double x : f) m = std::max(m, std::abs(x));
    return m;
}

inline double max_abs(ComplexField const& f)
{
    double m = 0.0;
    for (auto const& x : f) m = std::max(m, std::abs(x));
    return m;
}

/// Pointwise Euclidean magnitude of a vector field, maximised over the grid.
inline double max_norm(VectorField const& v)
{
    double m = 0.0;
    for (std::size_t p = 0; p < v[0].size(); ++p) {
        m = std::max(m, std::sqrt(v[0][p] * v[0][p] + v[1][p] * v[1][p] + v[2][p] * v[2][p]));
    }
    return m;
}

inline ComplexField to_complex(ScalarField const& f)
{
    return ComplexField(f.begin(), f.end());
}

inline ScalarField real_part(ComplexField const& f)
{
    ScalarField r(f.size());
    std::transform(f.begin(), f.end(), r.begin(), [](Complex z) { return z.real(); });
    return r;
}

inline ScalarField imag_part(ComplexField const& f)
{
    ScalarField r(f.size());
    std::transform(f.begin(), f.end(), r.begin(), [](Complex z) { return z.imag(); });
    return r;
}

// Elementwise helpers. Sizes are assumed equal.

template <class T>
void axpy(T alpha, std::vector<T> const& x, std::vector<T>& y)
{
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline void axpy(double alpha, ComplexField const& x, ComplexField& y)
{
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

template <class T, std::size_t N>
void axpy(double alpha, std::array<std::vector<T>, N> const& x, std::array<std::vector<T>, N>& y)
{
    for (std::size_t c = 0; c < N; ++c) axpy(alpha, x[c], y[c]);
}

inline ScalarField operator-(ScalarField const& a, ScalarField const& b)
{
    ScalarField r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline ComplexField operator-(ComplexField const& a, ComplexField const& b)
{
    ComplexField r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

template <class T, std::size_t N>
std::array<std::vector<T>, N> operator-(std::array<std::vector<T>, N> const& a, std::array<std::vector<T>, N> const& b)
{
    std::array<std::vector<T>, N> r;
    for (std::size_t c = 0; c < N; ++c) r[c] = a[c] - b[c];
    return r;
}

} // namespace poisswell
