#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "nlse/grid.hpp"
#include "nlse/spectral.hpp"

namespace nlse {

/// Real-valued nonlinearity f(rho), rho = |psi|^2, with G(psi) = f(|psi|^2) psi.
struct Nonlinearity {
    enum class Kind { none, power, two_power, log_power };

    Kind kind = Kind::none;
    double lambda1 = 0.0;
    double sigma1 = 1.0;
    double lambda2 = 0.0;
    double sigma2 = 1.0;

    static Nonlinearity none() { return {}; }
    /// lambda * rho^sigma, sigma > 0.
    static Nonlinearity power(double lambda, double sigma);
    /// lambda1 rho^sigma1 + lambda2 rho^sigma2, 0 < sigma1 < sigma2.
    static Nonlinearity two_power(double lambda1, double sigma1, double lambda2, double sigma2);
    /// lambda rho^sigma ln rho, extended by 0 at rho = 0.
    static Nonlinearity log_power(double lambda, double sigma);
    static Nonlinearity cubic() { return power(-1.0, 1.0); }

    /// Parses the describe() syntax, e.g. "power(-1,0.1)" or "none".
    static Nonlinearity parse(std::string_view text);
    std::string describe() const;

    /// f(rho) without the rho >= 0 check; hot-loop entry point.
    double f(double rho) const noexcept {
        switch (kind) {
            case Kind::none: return 0.0;
            case Kind::power: return lambda1 * pow_rho(rho, sigma1);
            case Kind::two_power: return lambda1 * pow_rho(rho, sigma1) + lambda2 * pow_rho(rho, sigma2);
            case Kind::log_power: return rho > 0.0 ? lambda1 * pow_rho(rho, sigma1) * std::log(rho) : 0.0;
        }
        return 0.0;
    }

    bool operator==(const Nonlinearity&) const = default;

private:
    static double pow_rho(double rho, double sigma) noexcept {
        if (sigma == 1.0) return rho;
        if (sigma == 0.5) return std::sqrt(rho);
        if (sigma == 2.0) return rho * rho;
        return std::pow(rho, sigma);
    }
};

/// Real, time-independent potential on a periodic domain.
class Potential {
public:
    enum class Kind { none, box, power, sampled };

    static Potential none() { return Potential(); }
    /// depth on (left, right), zero elsewhere (the interval is open).
    static Potential box(double depth, double left, double right);
    /// |x - m|^gamma with m the domain midpoint.
    static Potential power(double gamma);
    /// Values on a uniform fine grid; off-node values are linearly interpolated.
    static Potential sampled(const PeriodicGrid& fine, std::vector<double> values);

    static Potential parse(std::string_view text);
    std::string describe() const;

    Kind kind() const noexcept { return kind_; }
    double depth() const noexcept { return p0_; }
    double left() const noexcept { return p1_; }
    double right() const noexcept { return p2_; }
    double gamma() const noexcept { return p0_; }

    /// V(x) on the domain (a, b).
    double value(double x, double a, double b) const;
    /// sup |V| over (a, b).
    double sup_norm(double a, double b) const;
    /// Throws ConfigError when the potential does not fit the domain.
    void validate(const PeriodicGrid& grid) const;

private:
    Kind kind_ = Kind::none;
    double p0_ = 0.0;
    double p1_ = 0.0;
    double p2_ = 0.0;
    std::vector<double> samples_;
    double sample_a_ = 0.0;
    double sample_b_ = 1.0;
};

inline constexpr int kPotentialOversample = 64;

/// f(rho); rho < 0 is a DomainError.
double apply_f(const Nonlinearity& nl, double rho);
/// f(|z|^2) z.
cplx apply_G(const Nonlinearity& nl, cplx z);
/// L with |G(z1) - G(z2)| <= L |z1 - z2| whenever |z1|, |z2| <= m0.
double lipschitz_bound(const Nonlinearity& nl, double m0);

/// Fourier coefficients of V on T_M (closed form for box, quadrature otherwise).
SpectralField potential_coeffs(const Potential& v, const PeriodicGrid& grid, long modes);
/// V(x_j), j = 0 .. N-1.
std::vector<double> nodal_values(const Potential& v, const PeriodicGrid& grid);

enum class NonlinearTreatment {
    projected,   ///< oversampled quadrature of P_N G(I_N psi)
    collocated,  ///< dft of G evaluated at the N nodes
};

/// Spatial realization of P_N B(psi) = P_N (V psi + f(|psi|^2) psi); the
/// potential part always goes through the extended product.
SpectralField apply_B(const Potential& v, const Nonlinearity& nl, const SpectralField& psi,
                      NonlinearTreatment treatment, int oversample = kDefaultOversample);

}  // namespace nlse
