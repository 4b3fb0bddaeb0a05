#pragma once

#include <functional>

#include "nlse/grid.hpp"

namespace nlse {

inline constexpr int kDefaultOversample = 16;

/// Discrete Fourier coefficients (1/N) sum_j v_j e^{-i mu_l (x_j - a)}, l in T_N.
SpectralField dft(const GridField& v);

/// Trigonometric interpolant I_N evaluated at the nodes.
GridField idft(const SpectralField& c);

/// Off-grid evaluation of sum_l c_l e^{i mu_l (x - a)}; x must lie in [a, b].
cplx evaluate(const SpectralField& c, double x);

/// Approximate L2 projection P_N f: sample on an (oversample * N)-point grid,
/// transform, keep T_N. Exact to round-off for f in X_N.
SpectralField project(const std::function<cplx(double)>& f, const PeriodicGrid& grid,
                      int oversample = kDefaultOversample);

/// sqrt((b - a) sum_l (1 + mu_l^2)^alpha |c_l|^2).
double sobolev_norm(const SpectralField& c, double alpha);

/// Embeds X_N into X_M (M >= N) by zero-filling the new modes.
SpectralField zero_pad(const SpectralField& c, const PeriodicGrid& fine_grid);

/// Keeps the modes of c that lie in T_M of the coarser grid.
SpectralField truncate(const SpectralField& c, const PeriodicGrid& coarse_grid);

/// P_N (V_2N * I_N psi), computed alias-free on a 4N-point grid.
/// v2n holds 2N coefficients, psi holds N coefficients on the same domain.
SpectralField extended_product(const SpectralField& v2n, const SpectralField& psi);

}  // namespace nlse
