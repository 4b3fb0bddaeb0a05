#pragma once

// Pointwise kernels of the time steppers. Every kernel exists twice: a plain
// serial loop kept as the reference, and an OpenMP version. The entry points
// directly in nlse::kernels pick the OpenMP version for long arrays when
// called outside an active parallel region (sweep points already run in
// parallel, so nested loops stay serial).

#include <complex>
#include <cstddef>
#include <span>

#include "nlse/physics.hpp"

namespace nlse::kernels {

using cplx = std::complex<double>;

/// Arrays shorter than this never take the OpenMP path.
inline constexpr std::size_t kParallelThreshold = 8192;

namespace serial {
void nonlinear_term(std::span<const cplx> u, std::span<const double> v, const Nonlinearity& nl,
                    double scale, std::span<cplx> out);
void potential_flow(std::span<cplx> u, std::span<const double> v, const Nonlinearity& nl, double dt);
void multiply(std::span<cplx> w, std::span<const cplx> v, double scale);
void ewi_update(std::span<cplx> c, std::span<const cplx> prop, std::span<const cplx> phi,
                std::span<const cplx> rhs, double tau);
bool all_finite(std::span<const cplx> c);
}  // namespace serial

namespace omp {
void nonlinear_term(std::span<const cplx> u, std::span<const double> v, const Nonlinearity& nl,
                    double scale, std::span<cplx> out);
void potential_flow(std::span<cplx> u, std::span<const double> v, const Nonlinearity& nl, double dt);
void multiply(std::span<cplx> w, std::span<const cplx> v, double scale);
void ewi_update(std::span<cplx> c, std::span<const cplx> prop, std::span<const cplx> phi,
                std::span<const cplx> rhs, double tau);
bool all_finite(std::span<const cplx> c);
}  // namespace omp

/// out_j = scale * (v_j u_j + G(u_j)); v may be empty (no potential).
void nonlinear_term(std::span<const cplx> u, std::span<const double> v, const Nonlinearity& nl,
                    double scale, std::span<cplx> out);

/// Exact pointwise flow of i u_t = (v + f(|u|^2)) u over dt; |u_j| is invariant.
void potential_flow(std::span<cplx> u, std::span<const double> v, const Nonlinearity& nl, double dt);

/// w_j <- scale * w_j * v_j
void multiply(std::span<cplx> w, std::span<const cplx> v, double scale);

/// c_k <- prop_k c_k - i tau phi_k rhs_k
void ewi_update(std::span<cplx> c, std::span<const cplx> prop, std::span<const cplx> phi,
                std::span<const cplx> rhs, double tau);

bool all_finite(std::span<const cplx> c);

bool openmp_enabled() noexcept;

}  // namespace nlse::kernels
