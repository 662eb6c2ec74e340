#include "doctest.h"

#include "poisswell/pauli_algebra.hpp"

#include <random>

using namespace poisswell;

TEST_CASE("Pauli matrices: hermitian, traceless, involutive")
{
    for (int k = 0; k < 3; ++k) {
        auto const s = pauli::sigma(k);
        CHECK(pauli::max_abs_diff(s, pauli::adjoint(s)) == 0.0);
        CHECK(std::abs(pauli::trace(s)) == 0.0);
        CHECK(pauli::max_abs_diff(pauli::multiply(s, s), pauli::identity()) == 0.0);
    }
}

TEST_CASE("Pauli matrices: cyclic products")
{
    Complex const i{0.0, 1.0};
    for (int k = 0; k < 3; ++k) {
        auto const lhs = pauli::multiply(pauli::sigma(k), pauli::sigma((k + 1) % 3));
        CHECK(pauli::max_abs_diff(lhs, pauli::scale(i, pauli::sigma((k + 2) % 3))) == 0.0);
    }
}

TEST_CASE("property: (a.sigma)(b.sigma) = a.b + i (a x b).sigma")
{
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n;
    for (int trial = 0; trial < 50; ++trial) {
        Vec3 a{n(rng), n(rng), n(rng)}, b{n(rng), n(rng), n(rng)};
        auto const [lhs, rhs] = pauli::vector_identity_sides(a, b);
        CHECK(pauli::max_abs_diff(lhs, rhs) < 1e-13);
        // Independent evaluation of the left side.
        CHECK(pauli::max_abs_diff(lhs, pauli::multiply(pauli::dot(a), pauli::dot(b))) < 1e-14);
    }
}

TEST_CASE("property: exp_i is unitary and matches a truncated series")
{
    std::mt19937_64 rng(2);
    std::normal_distribution<double> n;
    Complex const i{0.0, 1.0};
    for (int trial = 0; trial < 30; ++trial) {
        Vec3 const v{n(rng), n(rng), n(rng)};
        auto const U = pauli::exp_i(v);
        CHECK(pauli::max_abs_diff(pauli::multiply(U, pauli::adjoint(U)), pauli::identity()) < 1e-14);
        // sum_k (i v.sigma)^k / k!
        Mat2 term = pauli::identity(), sum = pauli::identity();
        auto const X = pauli::scale(i, pauli::dot(v));
        for (int k = 1; k < 40; ++k) {
            term = pauli::scale(1.0 / k, pauli::multiply(term, X));
            sum = pauli::add(sum, term);
        }
        CHECK(pauli::max_abs_diff(U, sum) < 1e-12);
    }
}

TEST_CASE("sigma_dot and apply act pointwise")
{
    Grid const g = Grid::cube(1, 2);
    VectorField B{ScalarField{0.0, 1.0}, ScalarField{0.0, 0.0}, ScalarField{2.0, 0.0}};
    SpinorField a{ComplexField{1.0, 1.0}, ComplexField{0.0, 0.0}};
    auto const out = apply_pointwise(sigma_dot(B), a);
    CHECK(out[0][0] == Complex(2.0));
    CHECK(out[1][0] == Complex(0.0));
    CHECK(out[0][1] == Complex(0.0));
    CHECK(out[1][1] == Complex(1.0));
    (void)g;
}
