#include "poisswell/initial_data.hpp"

#include "poisswell/errors.hpp"
#include "poisswell/norms.hpp"
#include "poisswell/sources.hpp"

#include <cmath>
#include <random>

namespace poisswell {

std::string to_string(InitialFamily family)
{
    switch (family) {
    case InitialFamily::uniform: return "uniform";
    case InitialFamily::gaussian_bump: return "gaussian-bump";
    case InitialFamily::plane_wave: return "plane-wave";
    case InitialFamily::compressive: return "compressive";
    }
    return "unknown";
}

InitialFamily parse_family(std::string const& name)
{
    for (auto f : {InitialFamily::uniform, InitialFamily::gaussian_bump, InitialFamily::plane_wave,
                   InitialFamily::compressive}) {
        if (to_string(f) == name) return f;
    }
    throw ValidationError("initial.family", "unknown initial-data family '" + name + "'");
}

namespace {

// Sum of cos/sin modes with normal coefficients, |m_i| <= max_mode on active axes.
ComplexField random_modes(Grid const& g, std::mt19937_64& rng, int max_mode, bool complex_values)
{
    std::normal_distribution<double> normal;
    ComplexField f(g.size(), Complex{});
    int const m1 = g.dim() > 1 ? max_mode : 0;
    int const m2 = g.dim() > 2 ? max_mode : 0;
    for (int k0 = -max_mode; k0 <= max_mode; ++k0) {
        for (int k1 = -m1; k1 <= m1; ++k1) {
            for (int k2 = -m2; k2 <= m2; ++k2) {
                double const decay = 1.0 / (1.0 + k0 * k0 + k1 * k1 + k2 * k2);
                Complex const c{normal(rng) * decay, complex_values ? normal(rng) * decay : 0.0};
                double const phase = complex_values ? 0.0 : normal(rng);
                for (std::size_t p = 0; p < g.size(); ++p) {
                    double arg = phase;
                    arg += k0 * g.coordinate(p, 0) * (two_pi / g.length(0));
                    if (g.dim() > 1) arg += k1 * g.coordinate(p, 1) * (two_pi / g.length(1));
                    if (g.dim() > 2) arg += k2 * g.coordinate(p, 2) * (two_pi / g.length(2));
                    if (complex_values) f[p] += c * std::polar(1.0, arg);
                    else f[p] += c.real() * std::cos(arg);
                }
            }
        }
    }
    return f;
}

double periodic_gaussian(Grid const& g, std::size_t p, InitialDataSpec const& spec)
{
    double value = 1.0;
    for (int axis = 0; axis < g.dim(); ++axis) {
        double const L = g.length(axis);
        double const x = g.coordinate(p, axis) - spec.center[axis];
        double sum = 0.0;
        for (int image = -2; image <= 2; ++image) {
            double const y = x + image * L;
            sum += std::exp(-y * y / (2.0 * spec.width * spec.width));
        }
        value *= sum;
    }
    return value;
}

} // namespace

HydroState make_initial_state(Spectral const& spectral, InitialDataSpec const& spec, double epsilon)
{
    auto const& g = spectral.grid();
    if (spec.family == InitialFamily::gaussian_bump && !(spec.width > 0.0)) {
        throw ValidationError("initial.width", "must be > 0");
    }
    HydroState state;
    state.epsilon = epsilon;
    state.a = zero_spinor(g);
    state.u = zero_vector(g);
    state.S = zero_scalar(g);

    ComplexField profile(g.size(), Complex{1.0, 0.0});
    switch (spec.family) {
    case InitialFamily::uniform: break;
    case InitialFamily::gaussian_bump: {
        double const k = spec.phase_mode * two_pi / g.length(0);
        for (std::size_t p = 0; p < g.size(); ++p) {
            profile[p] = 1.0 + spec.amplitude * periodic_gaussian(g, p, spec);
            state.S[p] = spec.phase_amplitude * std::sin(k * g.coordinate(p, 0));
        }
        break;
    }
    case InitialFamily::plane_wave:
        for (int i = 0; i < 3; ++i) state.mean_velocity[i] = i < g.dim() ? epsilon * spec.k[i] : 0.0;
        break;
    case InitialFamily::compressive: {
        double const k = two_pi / g.length(0);
        for (std::size_t p = 0; p < g.size(); ++p) state.S[p] = spec.beta / k * std::cos(k * g.coordinate(p, 0));
        break;
    }
    }

    if (spec.noise != 0.0) {
        std::mt19937_64 rng(spec.seed);
        auto const perturbation = random_modes(g, rng, 4, true);
        for (std::size_t p = 0; p < g.size(); ++p) profile[p] += spec.noise * perturbation[p];
    }
    double const c = std::cos(spec.spin_angle);
    double const s = std::sin(spec.spin_angle);
    for (std::size_t p = 0; p < g.size(); ++p) {
        state.a[0][p] = c * profile[p];
        state.a[1][p] = s * profile[p];
    }
    spectral.dealias(state.a);
    spectral.dealias(state.S);

    if (spec.normalize) {
        double const mass = l2_norm(g, state.a);
        double const target = std::sqrt(g.volume());
        if (mass > 0.0)
            for (auto& comp : state.a)
                for (auto& z : comp) z *= target / mass;
    }

    auto const grad = spectral.gradient(state.S);
    for (int i = 0; i < 3; ++i) {
        state.u[i].assign(g.size(), state.mean_velocity[i]);
        for (std::size_t p = 0; p < g.size(); ++p) state.u[i][p] += grad[i][p];
    }
    return state;
}

SpinorField make_initial_spinor(Spectral const& spectral, InitialDataSpec const& spec, double epsilon)
{
    return reconstruct_spinor(spectral.grid(), make_initial_state(spectral, spec, epsilon));
}

double initial_bound(Spectral const& spectral, HydroState const& state, double s)
{
    return sobolev_norm(spectral, state.u, s) + sobolev_norm(spectral, state.a, s);
}

SpinorField random_smooth_spinor(Grid const& g, std::uint64_t seed, int max_mode, double scale)
{
    std::mt19937_64 rng(seed);
    SpinorField a;
    for (auto& c : a) {
        c = random_modes(g, rng, max_mode, true);
        for (auto& z : c) z *= scale;
    }
    return a;
}

ScalarField random_smooth_scalar(Grid const& g, std::uint64_t seed, int max_mode, double scale)
{
    std::mt19937_64 rng(seed);
    auto const f = random_modes(g, rng, max_mode, false);
    ScalarField out(g.size());
    for (std::size_t p = 0; p < g.size(); ++p) out[p] = scale * f[p].real();
    return out;
}

} // namespace poisswell
