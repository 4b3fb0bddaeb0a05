#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace nlse {

using cplx = std::complex<double>;

/// Uniform periodic mesh on (a, b) with N intervals and modes l = -N/2 .. N/2-1.
class PeriodicGrid {
public:
    PeriodicGrid(double a, double b, long modes);

    /// Grid on (a, b) with mesh size h; (b - a) / h must be an even integer.
    static PeriodicGrid from_mesh_size(double a, double b, double h);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    long modes() const noexcept { return n_; }
    double length() const noexcept { return b_ - a_; }
    double h() const noexcept { return (b_ - a_) / static_cast<double>(n_); }

    double node(long j) const noexcept { return a_ + static_cast<double>(j) * h(); }
    long lmin() const noexcept { return -n_ / 2; }
    long lmax() const noexcept { return n_ / 2 - 1; }
    double mu(long l) const noexcept;

    /// Same grid with a different mode count.
    PeriodicGrid with_modes(long modes) const { return PeriodicGrid(a_, b_, modes); }
    bool same_domain(const PeriodicGrid& other) const noexcept;

    bool operator==(const PeriodicGrid& other) const noexcept = default;

private:
    double a_;
    double b_;
    long n_;
};

/// Element of X_N stored as Fourier coefficients in natural order l = -N/2 .. N/2-1.
class SpectralField {
public:
    explicit SpectralField(const PeriodicGrid& grid);
    SpectralField(const PeriodicGrid& grid, std::vector<cplx> coeffs);

    const PeriodicGrid& grid() const noexcept { return grid_; }
    long modes() const noexcept { return grid_.modes(); }

    cplx& at(long l);
    const cplx& at(long l) const;

    std::span<cplx> coeffs() noexcept { return coeffs_; }
    std::span<const cplx> coeffs() const noexcept { return coeffs_; }

    /// Coefficients reordered to FFT layout (k = l mod N).
    std::vector<cplx> to_fft_order() const;
    static SpectralField from_fft_order(const PeriodicGrid& grid, std::span<const cplx> fft_coeffs);

    static SpectralField pure_mode(const PeriodicGrid& grid, long l, cplx amplitude = 1.0);

    SpectralField& operator+=(const SpectralField& other);
    SpectralField& operator-=(const SpectralField& other);
    SpectralField& operator*=(cplx s);

private:
    PeriodicGrid grid_;
    std::vector<cplx> coeffs_;
};

SpectralField operator+(SpectralField lhs, const SpectralField& rhs);
SpectralField operator-(SpectralField lhs, const SpectralField& rhs);
SpectralField operator*(cplx s, SpectralField f);

/// Nodal values v_0 .. v_N on the grid with v_0 == v_N (the space Y_N).
class GridField {
public:
    /// Takes either N values (the endpoint is appended) or N+1 values with v_0 == v_N.
    GridField(const PeriodicGrid& grid, std::vector<cplx> values);

    const PeriodicGrid& grid() const noexcept { return grid_; }
    std::span<const cplx> values() const noexcept { return values_; }
    /// The N independent values v_0 .. v_{N-1}.
    std::span<const cplx> periodic_values() const noexcept {
        return std::span<const cplx>(values_).first(static_cast<std::size_t>(grid_.modes()));
    }
    const cplx& operator[](long j) const { return values_.at(static_cast<std::size_t>(j)); }

    template <class F>
    static GridField sample(const PeriodicGrid& grid, F&& f) {
        std::vector<cplx> v(static_cast<std::size_t>(grid.modes()));
        for (long j = 0; j < grid.modes(); ++j) v[static_cast<std::size_t>(j)] = f(grid.node(j));
        return GridField(grid, std::move(v));
    }

private:
    PeriodicGrid grid_;
    std::vector<cplx> values_;
};

}  // namespace nlse
