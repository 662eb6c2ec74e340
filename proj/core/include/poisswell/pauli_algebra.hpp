#pragma once

#include "poisswell/fields.hpp"

#include <array>
#include <utility>
#include <vector>

namespace poisswell {

using Mat2 = std::array<std::array<Complex, 2>, 2>;
using Vec3 = std::array<double, 3>;

namespace pauli {

Mat2 identity();
/// sigma_1, sigma_2, sigma_3 for k = 0, 1, 2.
Mat2 sigma(int k);
/// sum_k v_k sigma_k.
Mat2 dot(Vec3 const& v);

Mat2 multiply(Mat2 const& x, Mat2 const& y);
Mat2 add(Mat2 const& x, Mat2 const& y);
Mat2 scale(Complex alpha, Mat2 const& x);
Mat2 adjoint(Mat2 const& x);
Complex trace(Mat2 const& x);
double max_abs_diff(Mat2 const& x, Mat2 const& y);

/// exp(i * theta * (n . sigma)) for a unit vector n: cos(theta) I + i sin(theta) n.sigma.
/// `field` is theta * n, i.e. the rotation vector.
Mat2 exp_i(Vec3 const& field);

/// Both sides of (a.sigma)(b.sigma) = (a.b) I + i (a x b).sigma.
std::pair<Mat2, Mat2> vector_identity_sides(Vec3 const& a, Vec3 const& b);

} // namespace pauli

/// Pointwise 2x2 Hermitian matrix field, e.g. sigma . B.
using MatrixField = std::vector<Mat2>;

MatrixField sigma_dot(VectorField const& b);

/// (M a)(x) = M(x) a(x).
SpinorField apply_pointwise(MatrixField const& m, SpinorField const& a);

} // namespace poisswell
