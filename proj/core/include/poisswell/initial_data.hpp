#pragma once

#include "poisswell/fields.hpp"
#include "poisswell/spectral.hpp"
#include "poisswell/state.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace poisswell {

enum class InitialFamily { uniform, gaussian_bump, plane_wave, compressive };

std::string to_string(InitialFamily family);
/// Throws ValidationError("initial.family") for unknown names.
InitialFamily parse_family(std::string const& name);

/// Periodic WKB initial data; all families are independent of epsilon except plane-wave,
/// whose velocity eps k makes psi = exp(i k . x) at every eps.
struct InitialDataSpec {
    InitialFamily family = InitialFamily::uniform;
    /// gaussian-bump: a_1 = 1 + amplitude G(x), G a periodised Gaussian of the given width.
    double amplitude = 0.5;
    double width = 0.6;
    std::array<double, 3> center{3.141592653589793, 3.141592653589793, 3.141592653589793};
    /// gaussian-bump: S = phase_amplitude sin(phase_mode x_1).
    double phase_amplitude = 0.1;
    int phase_mode = 1;
    /// Rotates the spinor (1, 0) to (cos angle, sin angle).
    double spin_angle = 0.0;
    /// plane-wave wavevector (integers keep the data periodic).
    std::array<double, 3> k{1.0, 0.0, 0.0};
    /// compressive: u = -beta sin x_1, S = beta cos x_1.
    double beta = 3.0;
    /// Amplitude of seeded smooth random perturbations of a (Fourier modes |m| <= 4).
    double noise = 0.0;
    std::uint64_t seed = 0;
    /// Scale a so that its mean density is 1.
    bool normalize = true;

    bool operator==(InitialDataSpec const&) const = default;
};

/// Band-limited (dealiased) WKB state for the family.
HydroState make_initial_state(Spectral const& spectral, InitialDataSpec const& spec, double epsilon);

/// psi = a exp(i(S + mean_velocity . x)/eps).
SpinorField make_initial_spinor(Spectral const& spectral, InitialDataSpec const& spec, double epsilon);

/// Q = ||u||_{H^s} + ||a||_{H^s}.
double initial_bound(Spectral const& spectral, HydroState const& state, double s);

/// Smooth random spinor with modes |m| <= max_mode on every active axis; used by property tests too.
SpinorField random_smooth_spinor(Grid const& g, std::uint64_t seed, int max_mode = 4, double scale = 1.0);

/// Smooth random real field with modes |m| <= max_mode.
ScalarField random_smooth_scalar(Grid const& g, std::uint64_t seed, int max_mode = 4, double scale = 1.0);

} // namespace poisswell
