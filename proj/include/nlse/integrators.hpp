#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>

#include "nlse/fft.hpp"
#include "nlse/grid.hpp"
#include "nlse/physics.hpp"
#include "nlse/spectral.hpp"

namespace nlse {

enum class Scheme { ewi_fs, ewi_efp, ewi_fp, lie_trotter, strang };

std::string_view scheme_name(Scheme s) noexcept;
Scheme parse_scheme(std::string_view name);
bool is_ewi(Scheme s) noexcept;

struct SchemeConfig {
    Scheme scheme = Scheme::ewi_efp;
    double tau = 1e-3;
    double T = 1.0;
    PeriodicGrid grid{-16.0, 16.0, 256};
    Potential potential = Potential::none();
    Nonlinearity nonlinearity = Nonlinearity::none();
    int fs_oversample = kDefaultOversample;

    /// round(T / tau); throws ConfigError unless T / tau is an integer to 1e-9 relative.
    long steps() const;
    /// Full invariant check: 0 < tau < 1, T > 0, divisibility, potential fits the grid.
    void validate() const;
};

struct SolverState {
    long step_index = 0;
    SpectralField field;
    double wall_time_per_step = 0.0;
};

/// e^{i t Delta}: multiplies mode l by e^{-i t mu_l^2}.
SpectralField free_flow(const SpectralField& c, double t);

/// phi1(z) = (e^z - 1) / z, phi1(0) = 1.
cplx phi1(cplx z);

/// phi1(i tau Delta): multiplies mode l by phi1(-i tau mu_l^2).
SpectralField phi1_multiplier(const SpectralField& c, double tau);

/// Precomputed one-step map of a scheme. Owns FFT workspaces, so a single
/// instance must not be stepped from two threads at once; build one per
/// trajectory. Splitting schemes accept negative tau (backward steps).
class Propagator {
public:
    explicit Propagator(const SchemeConfig& cfg);

    const SchemeConfig& config() const noexcept { return cfg_; }

    /// One step in place on FFT-ordered coefficients. Returns false when the
    /// result holds a non-finite value.
    bool advance(std::span<cplx> c);

    /// One step; throws BlowUpError carrying step_index + 1.
    SolverState step(const SolverState& state);

private:
    void ewi_advance(std::span<cplx> c);
    void splitting_advance(std::span<cplx> c);
    void nodal_rhs(std::span<const cplx> c, std::span<const double> v);
    void projected_rhs(std::span<const cplx> c);
    void add_extended_potential(std::span<const cplx> c);

    SchemeConfig cfg_;
    std::size_t n_;
    int oversample_ = 1;
    bool has_potential_ = false;
    bool has_nonlinearity_ = false;

    fft::cvec prop_;       // e^{-i tau mu^2}
    fft::cvec phi_;        // phi1(-i tau mu^2)
    fft::cvec ext_v_;      // I_{4N} P_{2N} V at the 4N nodes, scaled by 1/(4N)
    std::vector<double> nodal_v_;

    fft::cvec nodal_;
    fft::cvec rhs_;
    fft::cvec ext_;
    fft::cvec fine_;
    fft::cvec trunc_;
};

SolverState ewi_fs_step(const SolverState& state, const SchemeConfig& cfg);
SolverState ewi_efp_step(const SolverState& state, const SchemeConfig& cfg);
SolverState ewi_fp_step(const SolverState& state, const SchemeConfig& cfg);
SolverState lie_trotter_step(const SolverState& state, const SchemeConfig& cfg);
SolverState strang_step(const SolverState& state, const SchemeConfig& cfg);

/// Discrete initial value for the scheme: P_N psi0 (oversampled) for EWI-FS,
/// the interpolant of the nodal samples otherwise.
SpectralField initial_field(const SchemeConfig& cfg, const std::function<cplx(double)>& psi0);

using Observer = std::function<void(long step, const SpectralField& field)>;

/// Runs T / tau steps. The observer, when set, fires after every `every`-th
/// step (default max(1, steps / 100)) and after the final step.
SolverState evolve(const SchemeConfig& cfg, const SpectralField& psi0, const Observer& observer = {},
                   long every = 0);

}  // namespace nlse
