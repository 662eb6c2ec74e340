#pragma once

#include "poisswell/fields.hpp"
#include "poisswell/pauli_algebra.hpp"
#include "poisswell/spectral.hpp"
#include "poisswell/state.hpp"

namespace poisswell {

/// rho = |a_1|^2 + |a_2|^2.
ScalarField density(SpinorField const& a);

/// w = (i/2) sum_j (conj(a_j) grad a_j - a_j grad conj(a_j)) = -Im(conj(a) grad a).
VectorField phase_current_w(Spectral const& spectral, SpinorField const& a);

/// Spin density s_k = conj(a) sigma_k a (real 3-vector field).
VectorField spin_density(SpinorField const& a);

/// v = (1/2) curl(s).
VectorField spin_curl_v(Spectral const& spectral, SpinorField const& a);

/// Im(conj(psi) eps grad psi); the A-independent part of the Pauli current.
VectorField kinetic_current(Spectral const& spectral, SpinorField const& psi, double epsilon);

/// Pauli current J = Im(conj(psi)(eps grad - iA) psi) - eps curl(conj(psi) sigma psi).
/// With this form the continuity law reads d_t rho + div J = 0.
VectorField pauli_current(Spectral const& spectral, SpinorField const& psi, VectorField const& A, double epsilon);

/// The same current written in WKB variables: for psi = a exp(iS/eps) and u = grad S,
/// J = rho (u - A) - eps w - 2 eps v.
VectorField wkb_current(Spectral const& spectral, SpinorField const& a, VectorField const& u, VectorField const& A,
                        double epsilon);

/// The O(eps) part of wkb_current: -eps w - 2 eps v.
VectorField wkb_current_correction(Spectral const& spectral, SpinorField const& a, double epsilon);

SourceTerms source_terms(Spectral const& spectral, SpinorField const& a, VectorField const& u, VectorField const& A,
                         double epsilon);

/// Re(i conj(a) (sigma.B) a), which vanishes identically because sigma.B is Hermitian.
ScalarField stern_gerlach_real_part(SpinorField const& a, VectorField const& B);

/// psi_j = a_j exp(i (S + mean_velocity . x) / eps). Throws MissingPhase when S is not tracked.
SpinorField reconstruct_spinor(Grid const& g, HydroState const& state);

/// Zero-mean S with grad S = u. Throws NonzeroMean if any mean(u_i) exceeds 1e-10 and
/// NotAGradient if ||curl u|| / ||u|| > 1e-6.
ScalarField recover_phase(Spectral const& spectral, VectorField const& u);

} // namespace poisswell
