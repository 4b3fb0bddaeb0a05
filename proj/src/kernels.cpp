#include "nlse/kernels.hpp"

#include <cmath>

#ifdef NLSE_HAVE_OPENMP
#include <omp.h>
#endif

namespace nlse::kernels {

namespace {

constexpr cplx kMinusI{0.0, -1.0};

inline cplx nonlinear_point(cplx u, double v, const Nonlinearity& nl, double scale) {
    return scale * (v + nl.f(std::norm(u))) * u;
}

inline cplx flow_point(cplx u, double v, const Nonlinearity& nl, double dt) {
    return std::polar(1.0, -dt * (v + nl.f(std::norm(u)))) * u;
}

inline double potential_at(std::span<const double> v, std::size_t j) { return v.empty() ? 0.0 : v[j]; }

inline bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

bool use_parallel(std::size_t n) {
#ifdef NLSE_HAVE_OPENMP
    return n >= kParallelThreshold && omp_in_parallel() == 0 && omp_get_max_threads() > 1;
#else
    (void)n;
    return false;
#endif
}

}  // namespace

namespace serial {

void nonlinear_term(std::span<const cplx> u, std::span<const double> v, const Nonlinearity& nl,
                    double scale, std::span<cplx> out) {
    for (std::size_t j = 0; j < u.size(); ++j) out[j] = nonlinear_point(u[j], potential_at(v, j), nl, scale);
}

void potential_flow(std::span<cplx> u, std::span<const double> v, const Nonlinearity& nl, double dt) {
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = flow_point(u[j], potential_at(v, j), nl, dt);
}

void multiply(std::span<cplx> w, std::span<const cplx> v, double scale) {
    for (std::size_t j = 0; j < w.size(); ++j) w[j] *= scale * v[j];
}

void ewi_update(std::span<cplx> c, std::span<const cplx> prop, std::span<const cplx> phi,
                std::span<const cplx> rhs, double tau) {
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = prop[k] * c[k] + kMinusI * tau * phi[k] * rhs[k];
}

bool all_finite(std::span<const cplx> c) {
    for (const cplx& z : c)
        if (!finite(z)) return false;
    return true;
}

}  // namespace serial

namespace omp {

void nonlinear_term(std::span<const cplx> u, std::span<const double> v, const Nonlinearity& nl,
                    double scale, std::span<cplx> out) {
    const auto n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < n; ++j) {
        const auto i = static_cast<std::size_t>(j);
        out[i] = nonlinear_point(u[i], potential_at(v, i), nl, scale);
    }
}

void potential_flow(std::span<cplx> u, std::span<const double> v, const Nonlinearity& nl, double dt) {
    const auto n = static_cast<std::ptrdiff_t>(u.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < n; ++j) {
        const auto i = static_cast<std::size_t>(j);
        u[i] = flow_point(u[i], potential_at(v, i), nl, dt);
    }
}

void multiply(std::span<cplx> w, std::span<const cplx> v, double scale) {
    const auto n = static_cast<std::ptrdiff_t>(w.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < n; ++j) w[static_cast<std::size_t>(j)] *= scale * v[static_cast<std::size_t>(j)];
}

void ewi_update(std::span<cplx> c, std::span<const cplx> prop, std::span<const cplx> phi,
                std::span<const cplx> rhs, double tau) {
    const auto n = static_cast<std::ptrdiff_t>(c.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < n; ++j) {
        const auto k = static_cast<std::size_t>(j);
        c[k] = prop[k] * c[k] + kMinusI * tau * phi[k] * rhs[k];
    }
}

bool all_finite(std::span<const cplx> c) {
    const auto n = static_cast<std::ptrdiff_t>(c.size());
    int bad = 0;
#pragma omp parallel for schedule(static) reduction(+ : bad)
    for (std::ptrdiff_t j = 0; j < n; ++j) bad += finite(c[static_cast<std::size_t>(j)]) ? 0 : 1;
    return bad == 0;
}

}  // namespace omp

void nonlinear_term(std::span<const cplx> u, std::span<const double> v, const Nonlinearity& nl,
                    double scale, std::span<cplx> out) {
    if (use_parallel(u.size())) return omp::nonlinear_term(u, v, nl, scale, out);
    serial::nonlinear_term(u, v, nl, scale, out);
}

void potential_flow(std::span<cplx> u, std::span<const double> v, const Nonlinearity& nl, double dt) {
    if (use_parallel(u.size())) return omp::potential_flow(u, v, nl, dt);
    serial::potential_flow(u, v, nl, dt);
}

void multiply(std::span<cplx> w, std::span<const cplx> v, double scale) {
    if (use_parallel(w.size())) return omp::multiply(w, v, scale);
    serial::multiply(w, v, scale);
}

void ewi_update(std::span<cplx> c, std::span<const cplx> prop, std::span<const cplx> phi,
                std::span<const cplx> rhs, double tau) {
    if (use_parallel(c.size())) return omp::ewi_update(c, prop, phi, rhs, tau);
    serial::ewi_update(c, prop, phi, rhs, tau);
}

bool all_finite(std::span<const cplx> c) {
    if (use_parallel(c.size())) return omp::all_finite(c);
    return serial::all_finite(c);
}

bool openmp_enabled() noexcept {
#ifdef NLSE_HAVE_OPENMP
    return true;
#else
    return false;
#endif
}

}  // namespace nlse::kernels
