#pragma once

#include "poisswell/fields.hpp"
#include "poisswell/spectral.hpp"

#include <vector>

namespace poisswell {

/// Regularity index for Sobolev norms.
struct SobolevIndex {
    enum class Variant {
        /// (sum_k (1+|k|^2)^s |f_k|^2)^{1/2}, any real s >= 0.
        fourier_weight,
        /// sum_{|alpha| <= s} ||d^alpha f||_{L2}, integer s only (fractional part truncated).
        derivative_sum,
    };
    double s = 0.0;
    Variant variant = Variant::fourier_weight;
};

/// Flat list of complex components; lets the norms treat scalar, vector and spinor fields uniformly.
using Components = std::vector<ComplexField>;

Components components(ScalarField const& f);
Components components(ComplexField const& f);
Components components(VectorField const& v);
Components components(SpinorField const& a);

double l2_norm(Grid const& g, Components const& f);
double sobolev_norm(Spectral const& spectral, Components const& f, SobolevIndex index);

struct PointwiseNorms {
    double linf = 0.0;
    /// ||f||_inf + sum_i ||d_i f||_inf.
    double w1inf = 0.0;
    /// sum_{|alpha| <= 2} ||d^alpha f||_{L3}.
    double w23 = 0.0;
};

PointwiseNorms pointwise_norms(Spectral const& spectral, Components const& f);

template <class Field>
double l2_norm(Grid const& g, Field const& f)
{
    return l2_norm(g, components(f));
}

template <class Field>
double sobolev_norm(Spectral const& spectral, Field const& f, SobolevIndex index)
{
    return sobolev_norm(spectral, components(f), index);
}

template <class Field>
double sobolev_norm(Spectral const& spectral, Field const& f, double s)
{
    return sobolev_norm(spectral, components(f), SobolevIndex{s, SobolevIndex::Variant::fourier_weight});
}

template <class Field>
PointwiseNorms pointwise_norms(Spectral const& spectral, Field const& f)
{
    return pointwise_norms(spectral, components(f));
}

/// Complex L2 inner product <f, g> = sum over components of integral conj(f) g.
Complex inner_product(Grid const& g, SpinorField const& f, SpinorField const& h);

} // namespace poisswell
