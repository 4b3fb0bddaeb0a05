#include "nlse/presets.hpp"

#include <cmath>
#include <limits>

#include "nlse/errors.hpp"
#include "text.hpp"

namespace nlse::presets {

namespace {

constexpr double kNoLimit = std::numeric_limits<double>::infinity();

std::string sigma_tag(double sigma) { return "s" + text::shortest(sigma); }

}  // namespace

std::vector<double> temporal_steps() { return {1e-2, 5e-3, 2.5e-3, 1.25e-3}; }

std::vector<double> spatial_steps() { return {0.125, 0.0625, 0.03125, 0.015625}; }

Problem semi_smooth(double sigma, const InitialDatum& datum) {
    Problem p;
    p.nonlinearity = Nonlinearity::power(-1.0, sigma);
    p.datum = datum;
    p.a = kDomainA;
    p.b = kDomainB;
    p.T = 1.0;
    return p;
}

Problem box_well() {
    Problem p;
    p.potential = Potential::box(-4.0, -2.0, 2.0);
    p.nonlinearity = Nonlinearity::cubic();
    p.datum = InitialDatum::type1();
    p.a = kDomainA;
    p.b = kDomainB;
    p.T = 1.0;
    return p;
}

Problem root_potential() {
    Problem p;
    p.potential = Potential::power(0.76);
    p.nonlinearity = Nonlinearity::cubic();
    p.datum = InitialDatum::h3();
    p.a = kDomainA;
    p.b = kDomainB;
    p.T = 1.0;
    return p;
}

ReferenceSpec reference(Scheme scheme, double tau_ref) {
    ReferenceSpec r;
    r.scheme = scheme;
    r.tau = tau_ref;
    r.h = kHRef;
    return r;
}

StudySpec temporal(std::string label, Problem problem, std::vector<Scheme> schemes, ReferenceSpec ref) {
    StudySpec s;
    s.label = std::move(label);
    s.problem = std::move(problem);
    s.sweep = {Sweep::Kind::tau, temporal_steps()};
    s.reference = ref;
    s.schemes = std::move(schemes);
    return s;
}

StudySpec spatial(std::string label, Problem problem, std::vector<Scheme> schemes, ReferenceSpec ref) {
    StudySpec s;
    s.label = std::move(label);
    s.problem = std::move(problem);
    s.sweep = {Sweep::Kind::h, spatial_steps()};
    s.reference = ref;
    s.reference.per_scheme = true;
    s.schemes = std::move(schemes);
    return s;
}

std::vector<std::string> names() { return {"fig51", "fig52", "fig53", "fig54", "fig55", "fig56", "fig57"}; }

std::vector<StudySpec> preset(std::string_view name) {
    using enum Scheme;
    std::vector<StudySpec> out;

    if (name == "fig51") {
        // semi-smooth nonlinearity, H^2 datum: spatial orders 2 (L2) and 1 (H1)
        auto s = spatial("fig51_spatial_type1", semi_smooth(0.1, InitialDatum::type1()), {ewi_fs, ewi_efp},
                         reference(ewi_efp));
        for (Scheme sc : {ewi_fs, ewi_efp}) {
            s.bands.push_back({sc, Norm::L2, 1.7, 2.3});
            s.bands.push_back({sc, Norm::H1, 0.7, 1.3});
        }
        out.push_back(std::move(s));
    } else if (name == "fig52") {
        for (double sigma : {0.1, 0.2, 0.3, 0.4}) {
            auto s = temporal("fig52_temporal_type1_" + sigma_tag(sigma), semi_smooth(sigma, InitialDatum::type1()),
                              {ewi_efp}, reference(strang));
            s.bands.push_back({ewi_efp, Norm::L2, 0.8, 1.2});
            s.bands.push_back({ewi_efp, Norm::H1, 0.35, 0.65});
            out.push_back(std::move(s));
        }
    } else if (name == "fig53") {
        // smooth datum: projected nonlinearity gains about one order in L2
        auto s = spatial("fig53_spatial_type2", semi_smooth(0.1, InitialDatum::type2()), {ewi_fs, ewi_efp},
                         reference(ewi_fs));
        s.gates.push_back({Gate::Kind::order_gap, ewi_fs, ewi_efp, Norm::L2, 0.6});
        out.push_back(std::move(s));
    } else if (name == "fig54") {
        for (double sigma : {0.2, 0.4, 0.6, 0.8}) {
            auto s = temporal("fig54_temporal_type2_" + sigma_tag(sigma), semi_smooth(sigma, InitialDatum::type2()),
                              {ewi_efp}, reference(strang));
            s.bands.push_back({ewi_efp, Norm::L2, 0.8, 1.2});
            s.bands.push_back({ewi_efp, Norm::H1, 0.8, 1.2});
            out.push_back(std::move(s));
        }
    } else if (name == "fig55") {
        auto sp = spatial("fig55_spatial_box", box_well(), {ewi_efp, ewi_fp}, reference(ewi_efp));
        sp.bands.push_back({ewi_efp, Norm::L2, 1.7, 2.3});
        sp.bands.push_back({ewi_efp, Norm::H1, 0.7, 1.3});
        sp.bands.push_back({ewi_fp, Norm::L2, -kNoLimit, 1.4});
        sp.gates.push_back({Gate::Kind::finest_error_ratio, ewi_efp, ewi_fp, Norm::L2, 0.5});
        out.push_back(std::move(sp));

        auto tm = temporal("fig55_temporal_box", box_well(), {ewi_efp}, reference(ewi_efp));
        tm.bands.push_back({ewi_efp, Norm::L2, 0.8, 1.2});
        tm.bands.push_back({ewi_efp, Norm::H1, 0.35, 0.65});
        out.push_back(std::move(tm));
    } else if (name == "fig56") {
        auto sp = spatial("fig56_spatial_root", root_potential(), {ewi_efp, ewi_fp}, reference(ewi_efp, kTauRefRoot));
        sp.bands.push_back({ewi_efp, Norm::L2, 2.6, 3.4});
        sp.bands.push_back({ewi_efp, Norm::H1, 1.7, 2.3});
        out.push_back(std::move(sp));

        auto tm = temporal("fig56_temporal_root", root_potential(), {ewi_efp}, reference(ewi_efp));
        tm.bands.push_back({ewi_efp, Norm::H1, 0.8, 1.2});
        out.push_back(std::move(tm));
    } else if (name == "fig57") {
        auto nl = temporal("fig57_compare_nonlinearity", semi_smooth(0.1, InitialDatum::type2()),
                           {ewi_efp, lie_trotter}, reference(strang));
        nl.bands.push_back({ewi_efp, Norm::L2, 0.8, 1.2});
        out.push_back(std::move(nl));

        auto box = temporal("fig57_compare_box", box_well(), {ewi_efp, lie_trotter}, reference(ewi_efp));
        box.bands.push_back({ewi_efp, Norm::L2, 0.8, 1.2});
        box.gates.push_back({Gate::Kind::fluctuation, lie_trotter, ewi_efp, Norm::L2, 2.0});
        out.push_back(std::move(box));
    } else {
        throw ConfigError("unknown preset '" + std::string(name) + "'");
    }
    return out;
}

}  // namespace nlse::presets
