#pragma once

// Built-in convergence studies, one per numerical experiment (fig51 .. fig57),
// at desk-scale reference resolution.

#include <string>
#include <string_view>
#include <vector>

#include "nlse/experiments.hpp"

namespace nlse::presets {

inline constexpr double kTauRef = 1e-5;
inline constexpr double kHRef = 1.0 / 128.0;  // N = 4096 on (-16, 16)
// h sweep of the |x|^0.76 problem: at 1e-5 the leftover time error of the
// per-scheme reference (~1e-7 after cancellation) swamps an O(h^3) spatial error
inline constexpr double kTauRefRoot = 1e-6;
inline constexpr double kDomainA = -16.0;
inline constexpr double kDomainB = 16.0;

/// tau in {1e-2, 5e-3, 2.5e-3, 1.25e-3}
std::vector<double> temporal_steps();
/// h in {2^-3, 2^-4, 2^-5, 2^-6}
std::vector<double> spatial_steps();

/// f(rho) = -rho^sigma, no potential.
Problem semi_smooth(double sigma, const InitialDatum& datum);
/// Cubic NLSE with the square well -4 on (-2, 2) and the H^2 datum.
Problem box_well();
/// Cubic NLSE with |x|^0.76 and the H^3 datum.
Problem root_potential();

ReferenceSpec reference(Scheme scheme, double tau_ref = kTauRef);

StudySpec temporal(std::string label, Problem problem, std::vector<Scheme> schemes, ReferenceSpec ref);
StudySpec spatial(std::string label, Problem problem, std::vector<Scheme> schemes, ReferenceSpec ref);

std::vector<std::string> names();
/// Throws ConfigError for unknown names.
std::vector<StudySpec> preset(std::string_view name);

}  // namespace nlse::presets
