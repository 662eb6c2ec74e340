#include "poisswell/pauli_algebra.hpp"

#include <algorithm>
#include <cmath>

namespace poisswell {

namespace pauli {

Mat2 identity() { return {{{1.0, 0.0}, {0.0, 1.0}}}; }

Mat2 sigma(int k)
{
    constexpr Complex i{0.0, 1.0};
    switch (k) {
    case 0: return {{{0.0, 1.0}, {1.0, 0.0}}};
    case 1: return {{{0.0, -i}, {i, 0.0}}};
    default: return {{{1.0, 0.0}, {0.0, -1.0}}};
    }
}

Mat2 dot(Vec3 const& v)
{
    return {{{Complex(v[2], 0.0), Complex(v[0], -v[1])}, {Complex(v[0], v[1]), Complex(-v[2], 0.0)}}};
}

Mat2 multiply(Mat2 const& x, Mat2 const& y)
{
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
    return r;
}

Mat2 add(Mat2 const& x, Mat2 const& y)
{
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = x[i][j] + y[i][j];
    return r;
}

Mat2 scale(Complex alpha, Mat2 const& x)
{
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = alpha * x[i][j];
    return r;
}

Mat2 adjoint(Mat2 const& x)
{
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = std::conj(x[j][i]);
    return r;
}

Complex trace(Mat2 const& x) { return x[0][0] + x[1][1]; }

double max_abs_diff(Mat2 const& x, Mat2 const& y)
{
    double m = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m = std::max(m, std::abs(x[i][j] - y[i][j]));
    return m;
}

Mat2 exp_i(Vec3 const& field)
{
    double const theta = std::sqrt(field[0] * field[0] + field[1] * field[1] + field[2] * field[2]);
    if (theta == 0.0) return identity();
    double const c = std::cos(theta);
    double const s = std::sin(theta) / theta;
    // cos(theta) I + i sin(theta)/theta * (field . sigma)
    auto m = scale(Complex(0.0, s), dot(field));
    m[0][0] += c;
    m[1][1] += c;
    return m;
}

std::pair<Mat2, Mat2> vector_identity_sides(Vec3 const& a, Vec3 const& b)
{
    auto const lhs = multiply(dot(a), dot(b));
    double const ab = a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    Vec3 const cross{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
    auto const rhs = add(scale(ab, identity()), scale(Complex(0.0, 1.0), dot(cross)));
    return {lhs, rhs};
}

} // namespace pauli

MatrixField sigma_dot(VectorField const& b)
{
    MatrixField m(b[0].size());
    for (std::size_t p = 0; p < m.size(); ++p) m[p] = pauli::dot({b[0][p], b[1][p], b[2][p]});
    return m;
}

SpinorField apply_pointwise(MatrixField const& m, SpinorField const& a)
{
    SpinorField r{ComplexField(a[0].size()), ComplexField(a[0].size())};
    for (std::size_t p = 0; p < m.size(); ++p) {
        r[0][p] = m[p][0][0] * a[0][p] + m[p][0][1] * a[1][p];
        r[1][p] = m[p][1][0] * a[0][p] + m[p][1][1] * a[1][p];
    }
    return r;
}

} // namespace poisswell
