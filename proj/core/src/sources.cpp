#include "poisswell/sources.hpp"

#include "poisswell/errors.hpp"
#include "poisswell/norms.hpp"

#include <cmath>

namespace poisswell {

ScalarField density(SpinorField const& a)
{
    ScalarField rho(a[0].size());
    for (std::size_t p = 0; p < rho.size(); ++p) rho[p] = std::norm(a[0][p]) + std::norm(a[1][p]);
    return rho;
}

namespace {

// Im(sum_j conj(a_j) d_i a_j) for each axis i.
VectorField im_conj_grad(Spectral const& spectral, SpinorField const& a)
{
    auto const& g = spectral.grid();
    VectorField out = zero_vector(g);
    for (int c = 0; c < 2; ++c) {
        auto const grad = spectral.gradient(a[c]);
        for (int i = 0; i < g.dim(); ++i) {
            for (std::size_t p = 0; p < g.size(); ++p) out[i][p] += std::imag(std::conj(a[c][p]) * grad[i][p]);
        }
    }
    return out;
}

} // namespace

VectorField phase_current_w(Spectral const& spectral, SpinorField const& a)
{
    // (i/2)(conj(a) grad a - a grad conj(a)) = (i/2)(2i Im(conj(a) grad a)) = -Im(conj(a) grad a)
    auto w = im_conj_grad(spectral, a);
    for (auto& c : w)
        for (auto& x : c) x = -x;
    return w;
}

VectorField spin_density(SpinorField const& a)
{
    std::size_t const n = a[0].size();
    VectorField s{ScalarField(n), ScalarField(n), ScalarField(n)};
    for (std::size_t p = 0; p < n; ++p) {
        Complex const up = a[0][p];
        Complex const dn = a[1][p];
        Complex const cross = std::conj(up) * dn;
        s[0][p] = 2.0 * cross.real();
        s[1][p] = 2.0 * cross.imag();
        s[2][p] = std::norm(up) - std::norm(dn);
    }
    return s;
}

VectorField spin_curl_v(Spectral const& spectral, SpinorField const& a)
{
    auto v = spectral.curl(spin_density(a));
    for (auto& c : v)
        for (auto& x : c) x *= 0.5;
    return v;
}

VectorField kinetic_current(Spectral const& spectral, SpinorField const& psi, double epsilon)
{
    auto j = im_conj_grad(spectral, psi);
    for (auto& c : j)
        for (auto& x : c) x *= epsilon;
    return j;
}

VectorField pauli_current(Spectral const& spectral, SpinorField const& psi, VectorField const& A, double epsilon)
{
    auto J = kinetic_current(spectral, psi, epsilon);
    auto const rho = density(psi);
    auto const spin_curl = spectral.curl(spin_density(psi));
    for (int i = 0; i < 3; ++i) {
        for (std::size_t p = 0; p < rho.size(); ++p) {
            J[i][p] += -rho[p] * A[i][p] - epsilon * spin_curl[i][p];
        }
    }
    return J;
}

VectorField wkb_current_correction(Spectral const& spectral, SpinorField const& a, double epsilon)
{
    auto const w = phase_current_w(spectral, a);
    auto const v = spin_curl_v(spectral, a);
    VectorField out;
    for (int i = 0; i < 3; ++i) {
        out[i].resize(w[i].size());
        for (std::size_t p = 0; p < w[i].size(); ++p) out[i][p] = -epsilon * w[i][p] - 2.0 * epsilon * v[i][p];
    }
    return out;
}

VectorField wkb_current(Spectral const& spectral, SpinorField const& a, VectorField const& u, VectorField const& A,
                        double epsilon)
{
    auto J = wkb_current_correction(spectral, a, epsilon);
    auto const rho = density(a);
    for (int i = 0; i < 3; ++i) {
        for (std::size_t p = 0; p < rho.size(); ++p) J[i][p] += rho[p] * (u[i][p] - A[i][p]);
    }
    return J;
}

SourceTerms source_terms(Spectral const& spectral, SpinorField const& a, VectorField const& u, VectorField const& A,
                         double epsilon)
{
    SourceTerms out;
    out.rho = density(a);
    out.w = phase_current_w(spectral, a);
    out.v = spin_curl_v(spectral, a);
    out.J = wkb_current(spectral, a, u, A, epsilon);
    return out;
}

ScalarField stern_gerlach_real_part(SpinorField const& a, VectorField const& B)
{
    auto const sb = apply_pointwise(sigma_dot(B), a);
    ScalarField out(a[0].size());
    constexpr Complex i{0.0, 1.0};
    for (std::size_t p = 0; p < out.size(); ++p) {
        out[p] = std::real(i * (std::conj(a[0][p]) * sb[0][p] + std::conj(a[1][p]) * sb[1][p]));
    }
    return out;
}

SpinorField reconstruct_spinor(Grid const& g, HydroState const& state)
{
    if (!state.phase_tracked || state.S.size() != g.size()) {
        throw MissingPhase("reconstruct_spinor: phase S is not tracked");
    }
    if (!(state.epsilon > 0.0)) {
        throw ValidationError("epsilon", "spinor reconstruction needs epsilon > 0");
    }
    SpinorField psi = state.a;
    for (std::size_t p = 0; p < g.size(); ++p) {
        double phase = state.S[p];
        for (int axis = 0; axis < g.dim(); ++axis) phase += state.mean_velocity[axis] * g.coordinate(p, axis);
        Complex const e = std::polar(1.0, phase / state.epsilon);
        psi[0][p] *= e;
        psi[1][p] *= e;
    }
    return psi;
}

ScalarField recover_phase(Spectral const& spectral, VectorField const& u)
{
    auto const& g = spectral.grid();
    double const scale = std::max(1.0, max_norm(u));
    for (int i = 0; i < 3; ++i) {
        if (std::abs(mean(u[i])) > 1e-10 * scale) {
            throw NonzeroMean("recover_phase: component " + std::to_string(i) + " of u has nonzero mean");
        }
    }
    double const unorm = l2_norm(g, u);
    if (unorm == 0.0) return zero_scalar(g);

    double const curl_norm = l2_norm(g, spectral.curl(u));
    if (curl_norm / unorm > 1e-6) {
        throw NotAGradient("recover_phase: ||curl u|| / ||u|| = " + std::to_string(curl_norm / unorm));
    }

    // Delta S = div u, zero mean.
    auto const div = spectral.divergence(u);
    auto dh = spectral.forward(div);
    auto const& k2 = g.k_squared();
    for (std::size_t p = 0; p < dh.size(); ++p) dh[p] = k2[p] > 0.0 ? -dh[p] / k2[p] : Complex{};
    return spectral.inverse_real(dh);
}

} // namespace poisswell
