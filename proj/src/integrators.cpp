#include "nlse/integrators.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "nlse/errors.hpp"
#include "nlse/kernels.hpp"
#include "nlse/layout.hpp"

namespace nlse {

namespace {

constexpr struct {
    Scheme scheme;
    std::string_view name;
} kSchemeNames[] = {
    {Scheme::ewi_fs, "ewi_fs"},
    {Scheme::ewi_efp, "ewi_efp"},
    {Scheme::ewi_fp, "ewi_fp"},
    {Scheme::lie_trotter, "lie_trotter"},
    {Scheme::strang, "strang"},
};

// phi1(-i theta) = sin(theta)/theta - 2i sin^2(theta/2)/theta, free of cancellation near 0.
cplx phi1_imag(double theta) {
    if (theta == 0.0) return 1.0;
    const double s = std::sin(0.5 * theta);
    return {std::sin(theta) / theta, -2.0 * s * s / theta};
}

}  // namespace

std::string_view scheme_name(Scheme s) noexcept {
    for (const auto& entry : kSchemeNames)
        if (entry.scheme == s) return entry.name;
    return "unknown";
}

Scheme parse_scheme(std::string_view name) {
    for (const auto& entry : kSchemeNames)
        if (entry.name == name) return entry.scheme;
    if (name == "tsfp") return Scheme::lie_trotter;
    throw ConfigError("unknown scheme '" + std::string(name) + "'");
}

bool is_ewi(Scheme s) noexcept { return s == Scheme::ewi_fs || s == Scheme::ewi_efp || s == Scheme::ewi_fp; }

long SchemeConfig::steps() const {
    if (!(tau > 0) || !(T > 0)) throw ConfigError("scheme: tau and T must be positive");
    const double ratio = T / tau;
    const long n = std::lround(ratio);
    if (n < 1 || std::abs(ratio - static_cast<double>(n)) > 1e-9 * ratio)
        throw ConfigError("scheme: T / tau = " + std::to_string(ratio) + " is not an integer");
    return n;
}

void SchemeConfig::validate() const {
    if (!(tau > 0 && tau < 1)) throw ConfigError("scheme: need 0 < tau < 1");
    steps();
    if (fs_oversample < 1 || (fs_oversample & (fs_oversample - 1)) != 0)
        throw ConfigError("scheme: fs_oversample must be a power of two");
    potential.validate(grid);
}

cplx phi1(cplx z) {
    if (std::abs(z) < 1e-5) return 1.0 + z * (0.5 + z / 6.0);
    return (std::exp(z) - 1.0) / z;
}

SpectralField free_flow(const SpectralField& c, double t) {
    SpectralField out = c;
    const auto& g = c.grid();
    for (long l = g.lmin(); l <= g.lmax(); ++l) {
        const double mu = g.mu(l);
        out.at(l) *= std::polar(1.0, -t * mu * mu);
    }
    return out;
}

SpectralField phi1_multiplier(const SpectralField& c, double tau) {
    SpectralField out = c;
    const auto& g = c.grid();
    for (long l = g.lmin(); l <= g.lmax(); ++l) {
        const double mu = g.mu(l);
        out.at(l) *= phi1_imag(tau * mu * mu);
    }
    return out;
}

Propagator::Propagator(const SchemeConfig& cfg)
    : cfg_(cfg), n_(static_cast<std::size_t>(cfg.grid.modes())) {
    if (!std::isfinite(cfg.tau) || cfg.tau == 0.0) throw ConfigError("propagator: tau must be finite and nonzero");
    if (is_ewi(cfg.scheme) && !(cfg.tau > 0)) throw ConfigError("propagator: EWI schemes need tau > 0");
    cfg_.potential.validate(cfg_.grid);

    has_potential_ = cfg_.potential.kind() != Potential::Kind::none;
    has_nonlinearity_ = cfg_.nonlinearity.kind != Nonlinearity::Kind::none;
    oversample_ = cfg_.scheme == Scheme::ewi_fs ? cfg_.fs_oversample : 1;
    if (oversample_ < 1 || (oversample_ & (oversample_ - 1)) != 0)
        throw ConfigError("propagator: fs_oversample must be a power of two");

    prop_.resize(n_);
    phi_.resize(n_);
    for (std::size_t k = 0; k < n_; ++k) {
        const double mu = cfg_.grid.mu(layout::mode_of_slot(k, n_));
        prop_[k] = std::polar(1.0, -cfg_.tau * mu * mu);
        phi_[k] = phi1_imag(cfg_.tau * mu * mu);
    }

    nodal_.resize(n_);
    rhs_.resize(n_);
    trunc_.resize(n_);

    const bool extended = has_potential_ && (cfg_.scheme == Scheme::ewi_fs || cfg_.scheme == Scheme::ewi_efp);
    if (extended) {
        const SpectralField v2n = potential_coeffs(cfg_.potential, cfg_.grid, 2 * cfg_.grid.modes());
        ext_v_.resize(4 * n_);
        layout::pad(v2n.to_fft_order(), ext_v_);
        fft::backward(ext_v_, ext_v_);
        const double inv = 1.0 / static_cast<double>(4 * n_);
        for (auto& z : ext_v_) z *= inv;
        ext_.resize(4 * n_);
    } else if (has_potential_) {
        nodal_v_ = nodal_values(cfg_.potential, cfg_.grid);
    }
    if (oversample_ > 1 && has_nonlinearity_) fine_.resize(n_ * static_cast<std::size_t>(oversample_));
}

bool Propagator::advance(std::span<cplx> c) {
    if (c.size() != n_) throw ConfigError("propagator: field length does not match grid");
    if (is_ewi(cfg_.scheme))
        ewi_advance(c);
    else
        splitting_advance(c);
    return kernels::all_finite(c);
}

SolverState Propagator::step(const SolverState& state) {
    if (!(state.field.grid() == cfg_.grid)) throw ConfigError("propagator: state lives on a different grid");
    fft::cvec c;
    {
        const auto ordered = state.field.to_fft_order();
        c.assign(ordered.begin(), ordered.end());
    }
    if (!advance(c)) throw BlowUpError(state.step_index + 1);
    return SolverState{state.step_index + 1, SpectralField::from_fft_order(cfg_.grid, c), state.wall_time_per_step};
}

// rhs = dft(v_j u_j + G(u_j)) from the N nodal values of I_N c.
void Propagator::nodal_rhs(std::span<const cplx> c, std::span<const double> v) {
    fft::backward(c, nodal_);
    kernels::nonlinear_term(nodal_, v, cfg_.nonlinearity, 1.0 / static_cast<double>(n_), nodal_);
    fft::forward(nodal_, rhs_);
}

// rhs = P_N G(I_N c) by quadrature on the oversampled grid.
void Propagator::projected_rhs(std::span<const cplx> c) {
    layout::pad(c, fine_);
    fft::backward(fine_, fine_);
    kernels::nonlinear_term(fine_, {}, cfg_.nonlinearity, 1.0 / static_cast<double>(fine_.size()), fine_);
    fft::forward(fine_, fine_);
    layout::truncate(fine_, rhs_);
}

// rhs += P_N (P_2N V * I_N c) via the 4N-point product.
void Propagator::add_extended_potential(std::span<const cplx> c) {
    layout::pad(c, ext_);
    fft::backward(ext_, ext_);
    kernels::multiply(ext_, ext_v_, 1.0);
    fft::forward(ext_, ext_);
    layout::truncate(ext_, trunc_);
    for (std::size_t k = 0; k < n_; ++k) rhs_[k] += trunc_[k];
}

void Propagator::ewi_advance(std::span<cplx> c) {
    const bool pseudo_potential = cfg_.scheme == Scheme::ewi_fp && has_potential_;
    if (has_nonlinearity_ && oversample_ > 1) {
        projected_rhs(c);
    } else if (has_nonlinearity_ || pseudo_potential) {
        nodal_rhs(c, pseudo_potential ? std::span<const double>(nodal_v_) : std::span<const double>());
    } else {
        std::fill(rhs_.begin(), rhs_.end(), cplx{});
    }
    if (has_potential_ && !pseudo_potential) add_extended_potential(c);
    kernels::ewi_update(c, prop_, phi_, rhs_, cfg_.tau);
}

void Propagator::splitting_advance(std::span<cplx> c) {
    const double inv_n = 1.0 / static_cast<double>(n_);
    const bool pointwise = has_potential_ || has_nonlinearity_;
    if (!pointwise) {
        kernels::multiply(c, prop_, 1.0);
        return;
    }
    const double first = cfg_.scheme == Scheme::strang ? 0.5 * cfg_.tau : cfg_.tau;
    fft::backward(c, nodal_);
    kernels::potential_flow(nodal_, nodal_v_, cfg_.nonlinearity, first);
    fft::forward(nodal_, c);
    kernels::multiply(c, prop_, inv_n);
    if (cfg_.scheme == Scheme::strang) {
        fft::backward(c, nodal_);
        kernels::potential_flow(nodal_, nodal_v_, cfg_.nonlinearity, 0.5 * cfg_.tau);
        fft::forward(nodal_, c);
        for (auto& z : c) z *= inv_n;
    }
}

namespace {

SolverState step_as(Scheme scheme, const SolverState& state, const SchemeConfig& cfg) {
    SchemeConfig c = cfg;
    c.scheme = scheme;
    Propagator p(c);
    return p.step(state);
}

}  // namespace

SolverState ewi_fs_step(const SolverState& s, const SchemeConfig& cfg) { return step_as(Scheme::ewi_fs, s, cfg); }
SolverState ewi_efp_step(const SolverState& s, const SchemeConfig& cfg) { return step_as(Scheme::ewi_efp, s, cfg); }
SolverState ewi_fp_step(const SolverState& s, const SchemeConfig& cfg) { return step_as(Scheme::ewi_fp, s, cfg); }
SolverState lie_trotter_step(const SolverState& s, const SchemeConfig& cfg) { return step_as(Scheme::lie_trotter, s, cfg); }
SolverState strang_step(const SolverState& s, const SchemeConfig& cfg) { return step_as(Scheme::strang, s, cfg); }

SpectralField initial_field(const SchemeConfig& cfg, const std::function<cplx(double)>& psi0) {
    if (cfg.scheme == Scheme::ewi_fs) return project(psi0, cfg.grid, cfg.fs_oversample);
    return dft(GridField::sample(cfg.grid, psi0));
}

SolverState evolve(const SchemeConfig& cfg, const SpectralField& psi0, const Observer& observer, long every) {
    cfg.validate();
    if (!(psi0.grid() == cfg.grid)) throw ConfigError("evolve: initial field lives on a different grid");
    const long steps = cfg.steps();
    if (every <= 0) every = std::max(1L, steps / 100);

    Propagator propagator(cfg);
    fft::cvec c;
    {
        const auto ordered = psi0.to_fft_order();
        c.assign(ordered.begin(), ordered.end());
    }
    const auto start = std::chrono::steady_clock::now();
    for (long n = 1; n <= steps; ++n) {
        if (!propagator.advance(c)) throw BlowUpError(n);
        if (observer && (n % every == 0 || n == steps)) observer(n, SpectralField::from_fft_order(cfg.grid, c));
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    return SolverState{steps, SpectralField::from_fft_order(cfg.grid, c), elapsed.count() / static_cast<double>(steps)};
}

}  // namespace nlse
