#include "nlse/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "nlse/errors.hpp"

namespace nlse {

PeriodicGrid::PeriodicGrid(double a, double b, long modes) : a_(a), b_(b), n_(modes) {
    if (!(b > a) || !std::isfinite(a) || !std::isfinite(b))
        throw ConfigError("grid: need finite a < b");
    if (modes < 4 || modes % 2 != 0)
        throw ConfigError("grid: mode count must be even and >= 4, got " + std::to_string(modes));
}

PeriodicGrid PeriodicGrid::from_mesh_size(double a, double b, double h) {
    if (!(h > 0)) throw ConfigError("grid: mesh size must be positive");
    const double ratio = (b - a) / h;
    const long n = std::lround(ratio);
    if (std::abs(ratio - static_cast<double>(n)) > 1e-9 * ratio)
        throw ConfigError("grid: (b - a) / h is not an integer");
    return PeriodicGrid(a, b, n);
}

double PeriodicGrid::mu(long l) const noexcept {
    return 2.0 * std::numbers::pi * static_cast<double>(l) / (b_ - a_);
}

bool PeriodicGrid::same_domain(const PeriodicGrid& other) const noexcept {
    return a_ == other.a_ && b_ == other.b_;
}

SpectralField::SpectralField(const PeriodicGrid& grid)
    : grid_(grid), coeffs_(static_cast<std::size_t>(grid.modes())) {}

SpectralField::SpectralField(const PeriodicGrid& grid, std::vector<cplx> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
    if (static_cast<long>(coeffs_.size()) != grid_.modes())
        throw ConfigError("spectral field: coefficient count does not match grid");
}

cplx& SpectralField::at(long l) {
    return coeffs_.at(static_cast<std::size_t>(l - grid_.lmin()));
}

const cplx& SpectralField::at(long l) const {
    return coeffs_.at(static_cast<std::size_t>(l - grid_.lmin()));
}

std::vector<cplx> SpectralField::to_fft_order() const {
    const auto n = static_cast<std::size_t>(grid_.modes());
    const std::size_t half = n / 2;
    std::vector<cplx> out(n);
    // natural index i holds l = i - N/2; FFT slot is l mod N
    for (std::size_t i = 0; i < half; ++i) out[half + i] = coeffs_[i];
    for (std::size_t i = half; i < n; ++i) out[i - half] = coeffs_[i];
    return out;
}

SpectralField SpectralField::from_fft_order(const PeriodicGrid& grid, std::span<const cplx> fft_coeffs) {
    const auto n = static_cast<std::size_t>(grid.modes());
    if (fft_coeffs.size() != n) throw ConfigError("spectral field: coefficient count does not match grid");
    const std::size_t half = n / 2;
    std::vector<cplx> c(n);
    for (std::size_t i = 0; i < half; ++i) c[i] = fft_coeffs[half + i];
    for (std::size_t i = half; i < n; ++i) c[i] = fft_coeffs[i - half];
    return SpectralField(grid, std::move(c));
}

SpectralField SpectralField::pure_mode(const PeriodicGrid& grid, long l, cplx amplitude) {
    SpectralField f(grid);
    f.at(l) = amplitude;
    return f;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
    if (!(grid_ == other.grid_)) throw ConfigError("spectral field: grid mismatch");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
    if (!(grid_ == other.grid_)) throw ConfigError("spectral field: grid mismatch");
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(cplx s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
}

SpectralField operator+(SpectralField lhs, const SpectralField& rhs) { return lhs += rhs; }
SpectralField operator-(SpectralField lhs, const SpectralField& rhs) { return lhs -= rhs; }
SpectralField operator*(cplx s, SpectralField f) { return f *= s; }

GridField::GridField(const PeriodicGrid& grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
    const auto n = static_cast<std::size_t>(grid_.modes());
    if (values_.size() == n) {
        values_.push_back(values_.front());
    } else if (values_.size() == n + 1) {
        if (values_.front() != values_.back())
            throw ConfigError("grid field: periodic endpoint mismatch (v_0 != v_N)");
    } else {
        throw ConfigError("grid field: expected N or N+1 values");
    }
}

}  // namespace nlse
