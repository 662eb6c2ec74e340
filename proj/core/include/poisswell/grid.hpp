#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace poisswell {

inline constexpr double two_pi = 6.283185307179586476925286766559;

/// Periodic torus discretization. Inactive axes (beyond `dim`) have one point and
/// unit length, so every field is stored as a 3D row-major block with axis 0 slowest.
class Grid {
public:
    Grid(int dim, std::array<int, 3> points, std::array<double, 3> lengths = {two_pi, two_pi, two_pi});

    /// Uniform grid: `n` points and length `length` on every active axis.
    static Grid cube(int dim, int n, double length = two_pi);

    int dim() const noexcept { return dim_; }
    int points(int axis) const noexcept { return n_[axis]; }
    std::array<int, 3> const& points() const noexcept { return n_; }
    double length(int axis) const noexcept { return len_[axis]; }
    double spacing(int axis) const noexcept { return len_[axis] / n_[axis]; }
    std::size_t size() const noexcept { return size_; }

    double cell_volume() const noexcept { return cell_volume_; }
    /// Product of the active axis lengths.
    double volume() const noexcept { return cell_volume_ * static_cast<double>(size_); }
    double min_spacing() const noexcept;

    std::size_t index(int i0, int i1, int i2) const noexcept
    {
        return (static_cast<std::size_t>(i0) * n_[1] + i1) * n_[2] + i2;
    }
    std::array<int, 3> unravel(std::size_t flat) const noexcept;

    /// Physical coordinate of grid point `flat` along `axis`.
    double coordinate(std::size_t flat, int axis) const noexcept;

    /// Signed integer mode index of FFT bin `j` on `axis`: j for j <= N/2, j - N otherwise.
    int mode(int axis, int j) const noexcept;

    /// First-derivative wavenumber per axis (Nyquist bin set to zero so the table is odd).
    std::vector<double> const& derivative_wavenumbers(int axis) const noexcept { return kd_[axis]; }
    /// Full wavenumber per axis, Nyquist kept, used for even operators such as -Laplacian.
    std::vector<double> const& wavenumbers(int axis) const noexcept { return kf_[axis]; }

    /// |k|^2 over the flattened spectral lattice.
    std::vector<double> const& k_squared() const noexcept { return k2_; }
    /// 2/3-rule mask: 1 for retained modes, 0 where |m_i| > N_i/3 on any axis.
    std::vector<unsigned char> const& dealias_mask() const noexcept { return mask_; }

    /// Largest retained |k| along any active axis after dealiasing.
    double max_retained_wavenumber() const noexcept;
    /// Largest representable |k| (Nyquist) along any active axis.
    double max_wavenumber() const noexcept;

    bool operator==(Grid const& other) const noexcept
    {
        return dim_ == other.dim_ && n_ == other.n_ && len_ == other.len_;
    }

private:
    int dim_;
    std::array<int, 3> n_;
    std::array<double, 3> len_;
    std::size_t size_;
    double cell_volume_;
    std::array<std::vector<double>, 3> kd_;
    std::array<std::vector<double>, 3> kf_;
    std::vector<double> k2_;
    std::vector<unsigned char> mask_;
};

} // namespace poisswell
