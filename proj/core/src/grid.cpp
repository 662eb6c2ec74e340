#include "poisswell/grid.hpp"

#include "poisswell/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace poisswell {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

} // namespace

Grid::Grid(int dim, std::array<int, 3> points, std::array<double, 3> lengths)
    : dim_(dim), n_(points), len_(lengths)
{
    if (dim < 1 || dim > 3) {
        throw ValidationError("grid.dim", "dimension must be 1, 2 or 3, got " + std::to_string(dim));
    }
    for (int axis = 0; axis < 3; ++axis) {
        if (axis >= dim) {
            n_[axis] = 1;
            len_[axis] = 1.0;
            continue;
        }
        if (!is_power_of_two(n_[axis])) {
            throw ValidationError("grid.n", "points per axis must be a power of two, got " + std::to_string(n_[axis]));
        }
        if (!(len_[axis] > 0.0) || !std::isfinite(len_[axis])) {
            throw ValidationError("grid.length", "axis lengths must be positive");
        }
    }

    size_ = static_cast<std::size_t>(n_[0]) * n_[1] * n_[2];
    cell_volume_ = 1.0;
    for (int axis = 0; axis < dim_; ++axis) {
        cell_volume_ *= spacing(axis);
    }

    for (int axis = 0; axis < 3; ++axis) {
        int const n = n_[axis];
        kd_[axis].assign(n, 0.0);
        kf_[axis].assign(n, 0.0);
        double const scale = two_pi / len_[axis];
        for (int j = 0; j < n; ++j) {
            int const m = mode(axis, j);
            kf_[axis][j] = scale * m;
            kd_[axis][j] = (n > 1 && 2 * j == n) ? 0.0 : scale * m;
        }
    }

    k2_.resize(size_);
    mask_.resize(size_);
    for (std::size_t flat = 0; flat < size_; ++flat) {
        auto const idx = unravel(flat);
        double k2 = 0.0;
        bool keep = true;
        for (int axis = 0; axis < 3; ++axis) {
            double const k = kf_[axis][idx[axis]];
            k2 += k * k;
            if (3 * std::abs(mode(axis, idx[axis])) > n_[axis]) {
                keep = false;
            }
        }
        k2_[flat] = k2;
        mask_[flat] = keep ? 1 : 0;
    }
}

Grid Grid::cube(int dim, int n, double length)
{
    return Grid(dim, {n, n, n}, {length, length, length});
}

double Grid::min_spacing() const noexcept
{
    double h = std::numeric_limits<double>::infinity();
    for (int axis = 0; axis < dim_; ++axis) {
        h = std::min(h, spacing(axis));
    }
    return h;
}

std::array<int, 3> Grid::unravel(std::size_t flat) const noexcept
{
    int const i2 = static_cast<int>(flat % n_[2]);
    flat /= n_[2];
    int const i1 = static_cast<int>(flat % n_[1]);
    int const i0 = static_cast<int>(flat / n_[1]);
    return {i0, i1, i2};
}

double Grid::coordinate(std::size_t flat, int axis) const noexcept
{
    if (axis >= dim_) {
        return 0.0;
    }
    return unravel(flat)[axis] * spacing(axis);
}

int Grid::mode(int axis, int j) const noexcept
{
    int const n = n_[axis];
    return (2 * j <= n) ? j : j - n;
}

double Grid::max_retained_wavenumber() const noexcept
{
    double kmax = 0.0;
    for (int axis = 0; axis < dim_; ++axis) {
        kmax = std::max(kmax, (two_pi / len_[axis]) * (n_[axis] / 3));
    }
    return kmax;
}

double Grid::max_wavenumber() const noexcept
{
    double kmax = 0.0;
    for (int axis = 0; axis < dim_; ++axis) {
        kmax = std::max(kmax, (two_pi / len_[axis]) * (n_[axis] / 2));
    }
    return kmax;
}

} // namespace poisswell
