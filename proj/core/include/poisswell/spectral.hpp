#pragma once

#include "poisswell/fields.hpp"
#include "poisswell/grid.hpp"

#include <memory>

namespace poisswell {

/// FFT plans plus the spectral differential operators on one Grid.
///
/// Transforms are unnormalised forward and 1/N-normalised inverse. Plans are
/// created under a global lock and executed through the new-array interface,
/// so a single instance may be shared by concurrent readers.
class Spectral {
public:
    explicit Spectral(Grid grid);
    ~Spectral();
    Spectral(Spectral&&) noexcept;
    Spectral& operator=(Spectral&&) noexcept;
    Spectral(Spectral const&) = delete;
    Spectral& operator=(Spectral const&) = delete;

    Grid const& grid() const noexcept { return grid_; }

    ComplexField forward(ComplexField const& f) const;
    ComplexField forward(ScalarField const& f) const;
    ComplexField inverse(ComplexField const& spectrum) const;
    ScalarField inverse_real(ComplexField const& spectrum) const;

    ScalarField derivative(ScalarField const& f, int axis) const;
    ComplexField derivative(ComplexField const& f, int axis) const;

    VectorField gradient(ScalarField const& f) const;
    ComplexVectorField gradient(ComplexField const& f) const;
    ScalarField divergence(VectorField const& v) const;
    ComplexField divergence(ComplexVectorField const& v) const;
    /// Curl in the embedded sense: derivatives along inactive axes vanish.
    VectorField curl(VectorField const& v) const;
    ScalarField laplacian(ScalarField const& f) const;
    ComplexField laplacian(ComplexField const& f) const;

    /// Zero every mode outside the 2/3-rule mask.
    void dealias(ScalarField& f) const;
    void dealias(ComplexField& f) const;
    void dealias(VectorField& v) const;
    void dealias(SpinorField& a) const;

    /// Multiply the spectrum by exp(-i * factor * |k|^2) (exact free propagator).
    void propagate_free(ComplexField& f, double factor) const;

    /// Share of spectral energy sitting in the top third of the retained band.
    double tail_fraction(ComplexField const& f) const;

private:
    ComplexField apply_derivative(ComplexField spectrum, int axis) const;

    Grid grid_;
    struct Plans;
    std::unique_ptr<Plans> plans_;
};

/// Spectral interpolation of a 1D periodic line onto a grid refined by `factor`.
ComplexField refine_periodic(ComplexField const& line, int factor);

} // namespace poisswell
