#include "nlse/spectral.hpp"

#include <cmath>
#include <string>

#include "nlse/errors.hpp"
#include "nlse/fft.hpp"
#include "nlse/layout.hpp"

namespace nlse {

SpectralField dft(const GridField& v) {
    const auto& grid = v.grid();
    const auto vals = v.periodic_values();
    fft::cvec buf(vals.begin(), vals.end());
    fft::forward(buf, buf);
    const double inv_n = 1.0 / static_cast<double>(grid.modes());
    for (auto& c : buf) c *= inv_n;
    return SpectralField::from_fft_order(grid, buf);
}

GridField idft(const SpectralField& c) {
    const auto ordered = c.to_fft_order();
    fft::cvec buf(ordered.begin(), ordered.end());
    fft::backward(buf, buf);
    return GridField(c.grid(), std::vector<cplx>(buf.begin(), buf.end()));
}

cplx evaluate(const SpectralField& c, double x) {
    const auto& g = c.grid();
    if (!(x >= g.a() && x <= g.b()))
        throw DomainError("evaluate: x = " + std::to_string(x) + " outside [a, b]");
    cplx sum{};
    for (long l = g.lmin(); l <= g.lmax(); ++l) sum += c.at(l) * std::polar(1.0, g.mu(l) * (x - g.a()));
    return sum;
}

SpectralField project(const std::function<cplx(double)>& f, const PeriodicGrid& grid, int oversample) {
    if (oversample < 1 || (oversample & (oversample - 1)) != 0)
        throw ConfigError("project: oversample must be a power of two");
    const PeriodicGrid fine = grid.with_modes(grid.modes() * oversample);
    const SpectralField full = dft(GridField::sample(fine, f));
    return truncate(full, grid);
}

double sobolev_norm(const SpectralField& c, double alpha) {
    if (!(alpha >= 0)) throw DomainError("sobolev_norm: alpha must be >= 0");
    const auto& g = c.grid();
    double sum = 0.0;
    for (long l = g.lmin(); l <= g.lmax(); ++l) {
        const double mu = g.mu(l);
        const double weight = alpha == 0.0 ? 1.0 : std::pow(1.0 + mu * mu, alpha);
        sum += weight * std::norm(c.at(l));
    }
    return std::sqrt(g.length() * sum);
}

SpectralField zero_pad(const SpectralField& c, const PeriodicGrid& fine_grid) {
    if (!c.grid().same_domain(fine_grid)) throw ConfigError("zero_pad: domain endpoints differ");
    if (fine_grid.modes() < c.modes()) throw ConfigError("zero_pad: target grid is coarser");
    SpectralField out(fine_grid);
    for (long l = c.grid().lmin(); l <= c.grid().lmax(); ++l) out.at(l) = c.at(l);
    return out;
}

SpectralField truncate(const SpectralField& c, const PeriodicGrid& coarse_grid) {
    if (!c.grid().same_domain(coarse_grid)) throw ConfigError("truncate: domain endpoints differ");
    if (coarse_grid.modes() > c.modes()) throw ConfigError("truncate: target grid is finer");
    SpectralField out(coarse_grid);
    for (long l = coarse_grid.lmin(); l <= coarse_grid.lmax(); ++l) out.at(l) = c.at(l);
    return out;
}

SpectralField extended_product(const SpectralField& v2n, const SpectralField& psi) {
    const auto& g = psi.grid();
    if (!v2n.grid().same_domain(g)) throw ConfigError("extended_product: domain endpoints differ");
    if (v2n.modes() != 2 * g.modes()) throw ConfigError("extended_product: potential must carry 2N modes");

    const auto m = static_cast<std::size_t>(4 * g.modes());
    fft::cvec vnodal(m), pnodal(m);
    layout::pad(v2n.to_fft_order(), vnodal);
    layout::pad(psi.to_fft_order(), pnodal);
    fft::backward(vnodal, vnodal);
    fft::backward(pnodal, pnodal);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (std::size_t j = 0; j < m; ++j) pnodal[j] *= vnodal[j] * inv_m;
    fft::forward(pnodal, pnodal);
    std::vector<cplx> out(static_cast<std::size_t>(g.modes()));
    layout::truncate(pnodal, out);
    return SpectralField::from_fft_order(g, out);
}

}  // namespace nlse
