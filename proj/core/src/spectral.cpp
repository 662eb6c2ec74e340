#include "poisswell/spectral.hpp"

#include <fftw3.h>

#include <mutex>

namespace poisswell {

namespace {

// The FFTW planner is not re-entrant; execution through fftw_execute_dft is.
std::mutex& planner_mutex()
{
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }
fftw_complex* as_fftw(Complex const* p) { return reinterpret_cast<fftw_complex*>(const_cast<Complex*>(p)); }

fftw_plan make_plan(int rank, int const* n, int sign)
{
    std::size_t total = 1;
    for (int i = 0; i < rank; ++i) total *= static_cast<std::size_t>(n[i]);
    std::lock_guard lock(planner_mutex());
    auto* in = fftw_alloc_complex(total);
    auto* out = fftw_alloc_complex(total);
    fftw_plan plan = fftw_plan_dft(rank, n, in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    return plan;
}

void destroy_plan(fftw_plan plan)
{
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
}

} // namespace

struct Spectral::Plans {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
    ~Plans()
    {
        if (forward) destroy_plan(forward);
        if (backward) destroy_plan(backward);
    }
};

Spectral::Spectral(Grid grid) : grid_(std::move(grid)), plans_(std::make_unique<Plans>())
{
    int const rank = grid_.dim();
    int n[3] = {grid_.points(0), grid_.points(1), grid_.points(2)};
    plans_->forward = make_plan(rank, n, FFTW_FORWARD);
    plans_->backward = make_plan(rank, n, FFTW_BACKWARD);
}

Spectral::~Spectral() = default;
Spectral::Spectral(Spectral&&) noexcept = default;
Spectral& Spectral::operator=(Spectral&&) noexcept = default;

ComplexField Spectral::forward(ComplexField const& f) const
{
    ComplexField out(f.size());
    fftw_execute_dft(plans_->forward, as_fftw(f.data()), as_fftw(out.data()));
    return out;
}

ComplexField Spectral::forward(ScalarField const& f) const
{
    return forward(to_complex(f));
}

ComplexField Spectral::inverse(ComplexField const& spectrum) const
{
    ComplexField out(spectrum.size());
    fftw_execute_dft(plans_->backward, as_fftw(spectrum.data()), as_fftw(out.data()));
    double const scale = 1.0 / static_cast<double>(grid_.size());
    for (auto& z : out) z *= scale;
    return out;
}

ScalarField Spectral::inverse_real(ComplexField const& spectrum) const
{
    return real_part(inverse(spectrum));
}

ComplexField Spectral::apply_derivative(ComplexField spectrum, int axis) const
{
    auto const& k = grid_.derivative_wavenumbers(axis);
    for (std::size_t p = 0; p < spectrum.size(); ++p) {
        spectrum[p] *= Complex(0.0, k[grid_.unravel(p)[axis]]);
    }
    return spectrum;
}

ScalarField Spectral::derivative(ScalarField const& f, int axis) const
{
    if (axis >= grid_.dim()) return zero_scalar(grid_);
    return inverse_real(apply_derivative(forward(f), axis));
}

ComplexField Spectral::derivative(ComplexField const& f, int axis) const
{
    if (axis >= grid_.dim()) return zero_complex(grid_);
    return inverse(apply_derivative(forward(f), axis));
}

VectorField Spectral::gradient(ScalarField const& f) const
{
    VectorField g = zero_vector(grid_);
    auto const fh = forward(f);
    for (int axis = 0; axis < grid_.dim(); ++axis) {
        g[axis] = inverse_real(apply_derivative(fh, axis));
    }
    return g;
}

ComplexVectorField Spectral::gradient(ComplexField const& f) const
{
    ComplexVectorField g{zero_complex(grid_), zero_complex(grid_), zero_complex(grid_)};
    auto const fh = forward(f);
    for (int axis = 0; axis < grid_.dim(); ++axis) {
        g[axis] = inverse(apply_derivative(fh, axis));
    }
    return g;
}

ScalarField Spectral::divergence(VectorField const& v) const
{
    ComplexField acc(grid_.size());
    for (int axis = 0; axis < grid_.dim(); ++axis) {
        auto const d = apply_derivative(forward(v[axis]), axis);
        for (std::size_t p = 0; p < acc.size(); ++p) acc[p] += d[p];
    }
    return inverse_real(acc);
}

ComplexField Spectral::divergence(ComplexVectorField const& v) const
{
    ComplexField acc(grid_.size());
    for (int axis = 0; axis < grid_.dim(); ++axis) {
        auto const d = apply_derivative(forward(v[axis]), axis);
        for (std::size_t p = 0; p < acc.size(); ++p) acc[p] += d[p];
    }
    return inverse(acc);
}

VectorField Spectral::curl(VectorField const& v) const
{
    std::array<ComplexField, 3> vh{forward(v[0]), forward(v[1]), forward(v[2])};
    auto d = [&](int comp, int axis) {
        if (axis >= grid_.dim()) return ComplexField(grid_.size());
        return apply_derivative(vh[comp], axis);
    };
    VectorField out;
    for (int i = 0; i < 3; ++i) {
        int const j = (i + 1) % 3;
        int const k = (i + 2) % 3;
        auto a = d(k, j);
        auto const b = d(j, k);
        for (std::size_t p = 0; p < a.size(); ++p) a[p] -= b[p];
        out[i] = inverse_real(a);
    }
    return out;
}

ScalarField Spectral::laplacian(ScalarField const& f) const
{
    auto fh = forward(f);
    auto const& k2 = grid_.k_squared();
    for (std::size_t p = 0; p < fh.size(); ++p) fh[p] *= -k2[p];
    return inverse_real(fh);
}

ComplexField Spectral::laplacian(ComplexField const& f) const
{
    auto fh = forward(f);
    auto const& k2 = grid_.k_squared();
    for (std::size_t p = 0; p < fh.size(); ++p) fh[p] *= -k2[p];
    return inverse(fh);
}

void Spectral::dealias(ScalarField& f) const
{
    auto fh = forward(f);
    auto const& mask = grid_.dealias_mask();
    for (std::size_t p = 0; p < fh.size(); ++p) {
        if (!mask[p]) fh[p] = 0.0;
    }
    f = inverse_real(fh);
}

void Spectral::dealias(ComplexField& f) const
{
    auto fh = forward(f);
    auto const& mask = grid_.dealias_mask();
    for (std::size_t p = 0; p < fh.size(); ++p) {
        if (!mask[p]) fh[p] = 0.0;
    }
    f = inverse(fh);
}

void Spectral::dealias(VectorField& v) const
{
    for (auto& c : v) dealias(c);
}

void Spectral::dealias(SpinorField& a) const
{
    for (auto& c : a) dealias(c);
}

void Spectral::propagate_free(ComplexField& f, double factor) const
{
    auto fh = forward(f);
    auto const& k2 = grid_.k_squared();
    for (std::size_t p = 0; p < fh.size(); ++p) {
        fh[p] *= std::polar(1.0, -factor * k2[p]);
    }
    f = inverse(fh);
}

double Spectral::tail_fraction(ComplexField const& f) const
{
    auto const fh = forward(f);
    double total = 0.0;
    double tail = 0.0;
    for (std::size_t p = 0; p < fh.size(); ++p) {
        double const e = std::norm(fh[p]);
        total += e;
        auto const idx = grid_.unravel(p);
        for (int axis = 0; axis < grid_.dim(); ++axis) {
            int const kept = grid_.points(axis) / 3;
            // Top third of the retained band, plus everything the mask would remove.
            if (3 * std::abs(grid_.mode(axis, idx[axis])) > 2 * kept) {
                tail += e;
                break;
            }
        }
    }
    return total > 0.0 ? tail / total : 0.0;
}

ComplexField refine_periodic(ComplexField const& line, int factor)
{
    int const n = static_cast<int>(line.size());
    int const m = n * factor;
    fftw_plan fwd = make_plan(1, &n, FFTW_FORWARD);
    fftw_plan bwd = make_plan(1, &m, FFTW_BACKWARD);

    ComplexField spec(n);
    fftw_execute_dft(fwd, as_fftw(line.data()), as_fftw(spec.data()));

    ComplexField padded(m);
    for (int j = 0; j < n; ++j) {
        int const mode = (2 * j <= n) ? j : j - n;
        if (n > 1 && 2 * j == n) {
            padded[n / 2] += 0.5 * spec[j];
            padded[m - n / 2] += 0.5 * spec[j];
            continue;
        }
        padded[(mode + m) % m] = spec[j];
    }
    ComplexField out(m);
    fftw_execute_dft(bwd, as_fftw(padded.data()), as_fftw(out.data()));
    for (auto& z : out) z /= static_cast<double>(n);

    destroy_plan(fwd);
    destroy_plan(bwd);
    return out;
}

} // namespace poisswell
