#include "nlse/physics.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/zeta.hpp>
#include <string>

#include "nlse/errors.hpp"
#include "nlse/fft.hpp"
#include "nlse/layout.hpp"
#include "text.hpp"

namespace nlse {

using text::Call;
using text::call_syntax;
using text::expect_args;
using text::parse_call;

Nonlinearity Nonlinearity::power(double lambda, double sigma) {
    if (!(sigma > 0)) throw ConfigError("power nonlinearity: sigma must be positive");
    Nonlinearity nl;
    nl.kind = Kind::power;
    nl.lambda1 = lambda;
    nl.sigma1 = sigma;
    return nl;
}

Nonlinearity Nonlinearity::two_power(double lambda1, double sigma1, double lambda2, double sigma2) {
    if (!(sigma1 > 0 && sigma2 > sigma1))
        throw ConfigError("two_power nonlinearity: need 0 < sigma1 < sigma2");
    Nonlinearity nl;
    nl.kind = Kind::two_power;
    nl.lambda1 = lambda1;
    nl.sigma1 = sigma1;
    nl.lambda2 = lambda2;
    nl.sigma2 = sigma2;
    return nl;
}

Nonlinearity Nonlinearity::log_power(double lambda, double sigma) {
    if (!(sigma > 0)) throw ConfigError("log_power nonlinearity: sigma must be positive");
    Nonlinearity nl;
    nl.kind = Kind::log_power;
    nl.lambda1 = lambda;
    nl.sigma1 = sigma;
    return nl;
}

Nonlinearity Nonlinearity::parse(std::string_view text) {
    const Call c = parse_call(text);
    if (c.name == "none") {
        expect_args(c, 0);
        return none();
    }
    if (c.name == "cubic") {
        expect_args(c, 0);
        return cubic();
    }
    if (c.name == "power") {
        expect_args(c, 2);
        return power(c.args[0], c.args[1]);
    }
    if (c.name == "two_power") {
        expect_args(c, 4);
        return two_power(c.args[0], c.args[1], c.args[2], c.args[3]);
    }
    if (c.name == "log_power") {
        expect_args(c, 2);
        return log_power(c.args[0], c.args[1]);
    }
    throw ConfigError("unknown nonlinearity '" + c.name + "'");
}

std::string Nonlinearity::describe() const {
    switch (kind) {
        case Kind::none: return "none";
        case Kind::power: return call_syntax("power", {lambda1, sigma1});
        case Kind::two_power: return call_syntax("two_power", {lambda1, sigma1, lambda2, sigma2});
        case Kind::log_power: return call_syntax("log_power", {lambda1, sigma1});
    }
    return "none";
}

Potential Potential::box(double depth, double left, double right) {
    if (!(left < right)) throw ConfigError("box potential: need left < right");
    Potential v;
    v.kind_ = Kind::box;
    v.p0_ = depth;
    v.p1_ = left;
    v.p2_ = right;
    return v;
}

Potential Potential::power(double gamma) {
    if (!(gamma > 0)) throw ConfigError("power potential: gamma must be positive");
    Potential v;
    v.kind_ = Kind::power;
    v.p0_ = gamma;
    return v;
}

Potential Potential::sampled(const PeriodicGrid& fine, std::vector<double> values) {
    if (static_cast<long>(values.size()) != fine.modes())
        throw ConfigError("sampled potential: need one value per grid node");
    Potential v;
    v.kind_ = Kind::sampled;
    v.samples_ = std::move(values);
    v.sample_a_ = fine.a();
    v.sample_b_ = fine.b();
    return v;
}

Potential Potential::parse(std::string_view text) {
    const Call c = parse_call(text);
    if (c.name == "none") {
        expect_args(c, 0);
        return none();
    }
    if (c.name == "box") {
        expect_args(c, 3);
        return box(c.args[0], c.args[1], c.args[2]);
    }
    if (c.name == "power") {
        expect_args(c, 1);
        return power(c.args[0]);
    }
    throw ConfigError("unknown potential '" + c.name + "'");
}

std::string Potential::describe() const {
    switch (kind_) {
        case Kind::none: return "none";
        case Kind::box: return call_syntax("box", {p0_, p1_, p2_});
        case Kind::power: return call_syntax("power", {p0_});
        case Kind::sampled: return "sampled(" + std::to_string(samples_.size()) + ")";
    }
    return "none";
}

double Potential::value(double x, double a, double b) const {
    switch (kind_) {
        case Kind::none: return 0.0;
        case Kind::box: return (x > p1_ && x < p2_) ? p0_ : 0.0;
        case Kind::power: return std::pow(std::abs(x - 0.5 * (a + b)), p0_);
        case Kind::sampled: {
            const double n = static_cast<double>(samples_.size());
            const double s = (x - sample_a_) / (sample_b_ - sample_a_) * n;
            const double fl = std::floor(s);
            const double w = s - fl;
            const auto count = static_cast<long>(samples_.size());
            const long j0 = ((static_cast<long>(fl) % count) + count) % count;
            const long j1 = (j0 + 1) % count;
            return (1.0 - w) * samples_[static_cast<std::size_t>(j0)] + w * samples_[static_cast<std::size_t>(j1)];
        }
    }
    return 0.0;
}

double Potential::sup_norm(double a, double b) const {
    switch (kind_) {
        case Kind::none: return 0.0;
        case Kind::box: return std::abs(p0_);
        case Kind::power: return std::pow(0.5 * (b - a), p0_);
        case Kind::sampled: {
            double m = 0.0;
            for (double s : samples_) m = std::max(m, std::abs(s));
            return m;
        }
    }
    return 0.0;
}

void Potential::validate(const PeriodicGrid& grid) const {
    if (kind_ == Kind::box && !(p1_ > grid.a() && p2_ < grid.b()))
        throw ConfigError("box potential: interval must lie strictly inside (a, b)");
    if (kind_ == Kind::sampled && !(sample_a_ == grid.a() && sample_b_ == grid.b()))
        throw ConfigError("sampled potential: domain differs from grid");
}

double apply_f(const Nonlinearity& nl, double rho) {
    if (!(rho >= 0)) throw DomainError("apply_f: rho must be >= 0");
    return nl.f(rho);
}

cplx apply_G(const Nonlinearity& nl, cplx z) { return nl.f(std::norm(z)) * z; }

double lipschitz_bound(const Nonlinearity& nl, double m0) {
    if (!(m0 >= 0)) throw DomainError("lipschitz_bound: M0 must be >= 0");
    if (m0 == 0.0) return 0.0;
    // |d/dz (|z|^{2s} z)| <= (2s + 1)|z|^{2s} along any segment inside the disk
    auto term = [m0](double lambda, double sigma) {
        return std::abs(lambda) * (2.0 * sigma + 1.0) * std::pow(m0, 2.0 * sigma);
    };
    switch (nl.kind) {
        case Nonlinearity::Kind::none: return 0.0;
        case Nonlinearity::Kind::power: return term(nl.lambda1, nl.sigma1);
        case Nonlinearity::Kind::two_power: return term(nl.lambda1, nl.sigma1) + term(nl.lambda2, nl.sigma2);
        case Nonlinearity::Kind::log_power: break;
    }
    throw NotImplementedError("lipschitz_bound: no closed-form constant for " + nl.describe());
}

SpectralField potential_coeffs(const Potential& v, const PeriodicGrid& grid, long modes) {
    v.validate(grid);
    const PeriodicGrid target = grid.with_modes(modes);
    const double a = grid.a();
    const double b = grid.b();
    switch (v.kind()) {
        case Potential::Kind::none: return SpectralField(target);
        case Potential::Kind::box: {
            SpectralField out(target);
            const double scale = v.depth() / target.length();
            for (long l = target.lmin(); l <= target.lmax(); ++l) {
                if (l == 0) {
                    out.at(l) = scale * (v.right() - v.left());
                    continue;
                }
                const double mu = target.mu(l);
                const cplx lo = std::polar(1.0, -mu * (v.left() - a));
                const cplx hi = std::polar(1.0, -mu * (v.right() - a));
                out.at(l) = scale * (lo - hi) / cplx(0.0, mu);
            }
            return out;
        }
        case Potential::Kind::power: {
            SpectralField out = project([&](double x) { return cplx(v.value(x, a, b)); }, target, kPotentialOversample);
            // The cusp |x - c|^g sits on a sample node and the periodic
            // extension kinks at a = b. The plain trapezoid sum is off by a
            // mode-flat h^(1+g) term (generalized Euler-Maclaurin) plus an
            // h^2 endpoint term, and the flat part acts like a spurious delta
            // at the centre. Both are subtracted here.
            const double g = v.gamma();
            const double len = target.length();
            const double h = len / static_cast<double>(target.modes() * kPotentialOversample);
            const double r = 0.5 * len;
            const double cusp = 2.0 * boost::math::zeta(-g) * std::pow(h, 1.0 + g) / len;
            const double kink = h * h / 12.0 * 2.0 * g * std::pow(r, g - 1.0) / len;
            for (long l = target.lmin(); l <= target.lmax(); ++l)
                out.at(l) -= cusp * std::polar(1.0, -target.mu(l) * r) + kink;
            return out;
        }
        case Potential::Kind::sampled:
            return project([&](double x) { return cplx(v.value(x, a, b)); }, target, kPotentialOversample);
    }
    return SpectralField(target);
}

std::vector<double> nodal_values(const Potential& v, const PeriodicGrid& grid) {
    v.validate(grid);
    std::vector<double> out(static_cast<std::size_t>(grid.modes()));
    for (long j = 0; j < grid.modes(); ++j)
        out[static_cast<std::size_t>(j)] = v.value(grid.node(j), grid.a(), grid.b());
    return out;
}

SpectralField apply_B(const Potential& v, const Nonlinearity& nl, const SpectralField& psi,
                      NonlinearTreatment treatment, int oversample) {
    const auto& grid = psi.grid();
    SpectralField out(grid);
    if (v.kind() != Potential::Kind::none)
        out += extended_product(potential_coeffs(v, grid, 2 * grid.modes()), psi);
    if (nl.kind == Nonlinearity::Kind::none) return out;

    // Collocation is the oversample-1 case of the projected realization.
    const int factor = treatment == NonlinearTreatment::collocated ? 1 : oversample;
    if (factor < 1 || (factor & (factor - 1)) != 0) throw ConfigError("apply_B: oversample must be a power of two");
    const auto m = static_cast<std::size_t>(grid.modes() * factor);
    fft::cvec buf(m);
    layout::pad(psi.to_fft_order(), buf);
    fft::backward(buf, buf);
    const double inv_m = 1.0 / static_cast<double>(m);
    for (auto& u : buf) u = apply_G(nl, u) * inv_m;
    fft::forward(buf, buf);
    std::vector<cplx> g(static_cast<std::size_t>(grid.modes()));
    layout::truncate(buf, g);
    out += SpectralField::from_fft_order(grid, g);
    return out;
}

}  // namespace nlse
