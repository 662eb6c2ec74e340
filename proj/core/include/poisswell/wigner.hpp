#pragma once

#include "poisswell/fields.hpp"
#include "poisswell/spectral.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace poisswell {

/// Wigner transform along axis 0 at a few base points.
///
/// f(x, xi) = (2 pi)^{-1} sum_j int exp(-i xi y) psi_j(x + eps y e_1 / 2) conj(psi_j(x - eps y e_1 / 2)) dy,
/// the spin trace of the Wigner matrix, marginalised over the momenta of the other axes.
/// Momenta form the lattice xi_m = eps pi m / L_0 for m = -N..N-1, and sum_m f(x, xi_m) dxi = rho(x).
struct WignerSlice {
    double epsilon = 0.0;
    /// Flat grid indices of the base points.
    std::vector<std::size_t> base_points;
    std::vector<double> xi;
    double dxi = 0.0;
    /// values[b][m] = f(x_b, xi_m).
    std::vector<std::vector<double>> values;
    /// max |Im f| before the imaginary part was discarded.
    double max_imag = 0.0;
};

/// Half-shifts psi(x +- eps y / 2) are taken on a twice-refined line built by spectral interpolation.
WignerSlice wigner_slice(Spectral const& spectral, SpinorField const& psi, double epsilon,
                         std::vector<std::size_t> const& base_points);

/// sum_m f(x_b, xi_m) dxi for each base point.
std::vector<double> slice_density(WignerSlice const& slice);

/// sum_m xi_m f(x_b, xi_m) dxi for each base point (first moment along axis 0).
std::vector<double> slice_current(WignerSlice const& slice);

/// Signed mass within `half_width` lattice bins of xi_center, divided by the total mass at that base point.
double window_mass_fraction(WignerSlice const& slice, std::size_t b, double xi_center, int half_width);

/// Index of the xi lattice point closest to `xi`.
std::size_t nearest_bin(WignerSlice const& slice, double xi);

struct WignerMoments {
    ScalarField rho;
    VectorField J;
};

/// Closed forms: rho = |psi|^2 and J = Im(conj(psi)(eps grad - iA)psi) - eps curl(conj(psi) sigma psi).
WignerMoments wigner_moments(Spectral const& spectral, SpinorField const& psi, double epsilon, VectorField const& A);

/// sum over components and axes of ||(u_i + i eps d_i) psi_c||_2^2, i.e. the second moment
/// int int |xi - u|^2 f dxi dx of the Wigner transform.
double monokinetic_defect(Spectral const& spectral, SpinorField const& psi, VectorField const& u, double epsilon);

/// JSON object with epsilon, sign convention, normalization and lattice description.
std::string wigner_metadata_json(WignerSlice const& slice);

/// CSV with columns x_index, xi, f; the first line is "# " followed by the metadata JSON.
void write_wigner_csv(std::filesystem::path const& path, WignerSlice const& slice);

} // namespace poisswell
