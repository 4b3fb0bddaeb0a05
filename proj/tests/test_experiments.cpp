#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "nlse/config.hpp"
#include "nlse/errors.hpp"
#include "nlse/experiments.hpp"
#include "nlse/presets.hpp"
#include "nlse/refcache.hpp"
#include "oracles.hpp"

using namespace nlse;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("nlse_test_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// drops the trailing wall_seconds column
std::string without_timing(const std::string& csv) {
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + '\n';
    return out;
}

StudySpec free_plane_wave_study() {
    StudySpec s;
    s.label = "free_plane_wave";
    s.problem.datum = InitialDatum::plane_wave(1.0, 2);
    s.problem.T = 0.1;
    s.sweep = {Sweep::Kind::tau, {1e-2, 5e-3, 2.5e-3}};
    s.reference.scheme = Scheme::strang;
    s.reference.tau = 2.5e-4;
    s.reference.h = 0.5;
    s.schemes = {Scheme::ewi_efp, Scheme::lie_trotter};
    return s;
}

StudySpec small_cubic_study() {
    StudySpec s;
    s.label = "small_cubic";
    s.problem.nonlinearity = Nonlinearity::cubic();
    s.problem.datum = InitialDatum::type1();
    s.problem.T = 0.1;
    s.sweep = {Sweep::Kind::tau, {1e-2, 5e-3, 2.5e-3}};
    s.reference.scheme = Scheme::strang;
    s.reference.tau = 1e-4;
    s.reference.h = 0.125;
    s.schemes = {Scheme::ewi_efp, Scheme::ewi_fp};
    return s;
}

ErrorRecord record(Scheme s, Norm n, double tau, double err) {
    ErrorRecord r;
    r.study_label = "synthetic";
    r.scheme = s;
    r.norm = n;
    r.tau = tau;
    r.error = err;
    return r;
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("fit_order") {
    CHECK(fit_order({{0.1, 0.1}, {0.05, 0.05}}).slope == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fit_order({{0.1, 0.01}, {0.05, 0.0025}}).slope == doctest::Approx(2.0).epsilon(1e-14));
    const auto f = fit_order({{1e-1, 3e-2}, {5e-2, 1.5e-2}, {2.5e-2, 7.5e-3}});
    CHECK(f.slope == doctest::Approx(1.0).epsilon(1e-14));
    REQUIRE(f.per_interval.size() == 2);
    for (double p : f.per_interval) CHECK(p == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(f.warnings.empty());

    const double nan = std::numeric_limits<double>::quiet_NaN();
    const auto g = fit_order({{0.4, 0.16}, {0.2, 0.04}, {0.1, nan}, {0.05, 0.0025}, {0.025, 1e-12}});
    CHECK(g.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(g.warnings.size() == 2);

    CHECK_THROWS_AS(fit_order({{0.1, 0.1}}), FitError);
    CHECK_THROWS_AS(fit_order({{0.1, 0.1}, {0.05, -1.0}}), FitError);
    CHECK_THROWS_AS(fit_order({{0.1, 0.1}, {0.2, 0.05}}), FitError);
    CHECK_THROWS_AS(fit_order({{0.1, 1e-12}, {0.05, 1e-13}}), FitError);
}

TEST_CASE("error against a reference") {
    const PeriodicGrid g(-16, 16, 32), gf(-16, 16, 128);
    std::mt19937_64 rng(1);
    const auto psi = oracle::random_field(g, rng);
    CHECK(error_against_reference(psi, zero_pad(psi, gf), Norm::L2) == 0.0);
    CHECK(error_against_reference(psi, zero_pad(psi, gf), Norm::H1) == 0.0);

    SpectralField one(gf);
    one.at(0) = 1.0;
    CHECK(error_against_reference(SpectralField(g), one, Norm::L2) == doctest::Approx(std::sqrt(32.0)));

    const double eps = 1e-3;
    const auto bumped = psi + SpectralField::pure_mode(g, 1, eps);
    CHECK(error_against_reference(bumped, zero_pad(psi, gf), Norm::L2) == doctest::Approx(eps * std::sqrt(32.0)).epsilon(1e-10));

    CHECK_THROWS_AS(error_against_reference(zero_pad(psi, gf), psi, Norm::L2), ConfigError);
}

TEST_CASE("snapshot encoding") {
    std::mt19937_64 rng(2);
    const PeriodicGrid g(-16, 16, 64);
    const auto c = oracle::random_field(g, rng);
    SnapshotHeader h{kSnapshotVersion, 64, -16.0, 16.0, 1.0, "ewi_efp", 1e-5};
    const std::string bytes = encode_snapshot(h, c);
    CHECK(bytes.size() == 64 + 16 * 64 + 32);
    CHECK(bytes.substr(0, 8) == "NLSEREF ");
    CHECK(bytes[63] == '\n');

    const Snapshot back = decode_snapshot(bytes);
    CHECK(back.header == h);
    CHECK(oracle::max_diff(back.field, c) == 0.0);
    CHECK(encode_snapshot(back.header, back.field) == bytes);

    // natural order, re/im interleaved, little endian
    double first[2];
    std::memcpy(first, bytes.data() + 64, sizeof first);
    CHECK(first[0] == c.at(-32).real());
    CHECK(first[1] == c.at(-32).imag());

    std::string flipped = bytes;
    flipped[100] ^= 1;
    CHECK_THROWS_AS(decode_snapshot(flipped), CacheError);
    CHECK_THROWS_AS(decode_snapshot(bytes.substr(0, bytes.size() - 1)), CacheError);
    CHECK_THROWS_AS(decode_snapshot("garbage"), CacheError);

    h.scheme = std::string(80, 'x');
    CHECK_THROWS(h.encode());
}

TEST_CASE("snapshot files") {
    const auto dir = scratch("snap");
    std::mt19937_64 rng(3);
    const PeriodicGrid g(-16, 16, 16);
    const auto c = oracle::random_field(g, rng);
    const SnapshotHeader h{kSnapshotVersion, 16, -16.0, 16.0, 0.5, "strang", 1e-3};
    write_snapshot(dir / "a.ref", h, c);
    const Snapshot s = read_snapshot(dir / "a.ref");
    CHECK(oracle::max_diff(s.field, c) == 0.0);
    write_snapshot(dir / "b.ref", s.header, s.field);
    CHECK(slurp(dir / "a.ref") == slurp(dir / "b.ref"));
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK_THROWS_AS(read_snapshot(dir / "missing.ref"), CacheError);
    for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().extension() == ".ref");
    fs::remove_all(dir);
}

TEST_CASE("reference of the free equation is the analytic plane wave") {
    const auto dir = scratch("ref_free");
    const StudySpec spec = free_plane_wave_study();
    const SpectralField ref = compute_reference(spec, dir);
    const PeriodicGrid g = spec.reference_grid();
    const double mu = g.mu(2);
    const auto exact = SpectralField::pure_mode(g, 2, std::exp(-oracle::I * mu * mu * spec.problem.T));
    CHECK(oracle::max_diff(ref, exact) < 1e-10);

    const fs::path file = dir / (reference_key(spec) + ".ref");
    REQUIRE(fs::exists(file));
    const std::string first = slurp(file);
    const SpectralField again = compute_reference(spec, dir);
    CHECK(oracle::max_diff(again, ref) == 0.0);
    CHECK(slurp(file) == first);

    // a corrupted entry is recomputed, not trusted
    {
        std::string bad = first;
        bad[200] ^= 0x40;
        std::ofstream(file, std::ios::binary | std::ios::trunc) << bad;
    }
    CHECK(oracle::max_diff(compute_reference(spec, dir), ref) == 0.0);
    CHECK(slurp(file) == first);

    StudySpec other = spec;
    other.reference.tau = 5e-4;
    CHECK(reference_key(other) != reference_key(spec));
    fs::remove_all(dir);
}

TEST_CASE("free equation study sits on the error floor") {
    const auto dir = scratch("floor");
    const auto result = run_study(free_plane_wave_study(), dir / "floor.csv", {dir, 1});
    REQUIRE(result.series.size() == 4);
    for (const auto& s : result.series) {
        CHECK(s.status == "floor");
        CHECK_FALSE(s.fit.has_value());
    }
    for (const auto& r : result.records) CHECK(r.error < 1e-10);
    CHECK(fs::exists(dir / "floor.csv"));
    fs::remove_all(dir);
}

TEST_CASE("small cubic study: first order, deterministic CSV") {
    const auto dir = scratch("cubic");
    StudySpec spec = small_cubic_study();
    spec.bands.push_back({Scheme::ewi_efp, Norm::L2, 0.8, 1.2});
    const auto a = run_study(spec, dir / "a.csv", {dir, 1});
    const auto b = run_study(spec, dir / "b.csv", {dir, 2});
    CHECK(without_timing(slurp(dir / "a.csv")) == without_timing(slurp(dir / "b.csv")));
    CHECK(a.all_passed());
    MESSAGE(format_summary(a));

    const auto csv = slurp(dir / "a.csv");
    CHECK(csv.substr(0, csv.find('\n')) == kCsvHeader);
    CHECK(a.records.size() == 2 * 2 * 3);
    // scheme, norm, then sweep position
    CHECK(a.records[0].scheme == Scheme::ewi_efp);
    CHECK(a.records[0].norm == Norm::L2);
    CHECK(a.records[0].tau == 1e-2);
    CHECK(a.records[2].tau == 2.5e-3);
    CHECK(a.records[3].norm == Norm::H1);
    CHECK(a.records[6].scheme == Scheme::ewi_fp);
    CHECK_FALSE(a.records[0].order_local.has_value());
    CHECK(a.records[1].order_local.has_value());

    // one-point sweep = one evolve + error
    StudySpec one = spec;
    one.sweep.values = {5e-3};
    one.bands.clear();
    one.schemes = {Scheme::ewi_efp};
    const auto single = run_study(one, {}, {dir, 1});
    const auto cfg = make_config(spec.problem, Scheme::ewi_efp, 5e-3, spec.reference_grid(), spec.fs_oversample);
    const auto psi = evolve(cfg, initial_field(cfg, spec.problem.datum.function(-16, 16))).field;
    const auto ref = compute_reference(spec, dir);
    CHECK(single.records[0].error == error_against_reference(psi, ref, Norm::L2));
    CHECK(single.records[1].error == error_against_reference(psi, ref, Norm::H1));
    fs::remove_all(dir);
}

TEST_CASE("per-scheme references for spatial sweeps") {
    const auto dir = scratch("per_scheme");
    StudySpec s = small_cubic_study();
    s.sweep = {Sweep::Kind::h, {0.5, 0.25}};
    s.reference.tau = 1e-2;
    s.reference.per_scheme = true;
    const auto result = run_study(s, {}, {dir, 1});
    const auto fp_ref = compute_reference(reference_for(s, Scheme::ewi_fp), dir);
    const auto cfg = make_config(s.problem, Scheme::ewi_fp, 1e-2, PeriodicGrid(-16, 16, 128), s.fs_oversample);
    const auto psi = evolve(cfg, initial_field(cfg, s.problem.datum.function(-16, 16))).field;
    const ErrorRecord* fp_fine = nullptr;
    for (const auto& r : result.records)
        if (r.scheme == Scheme::ewi_fp && r.norm == Norm::L2 && r.h == 0.25) fp_fine = &r;
    REQUIRE(fp_fine != nullptr);
    CHECK(fp_fine->error == error_against_reference(psi, fp_ref, Norm::L2));
    CHECK(fs::exists(dir / (reference_key(reference_for(s, Scheme::ewi_efp)) + ".ref")));
    CHECK(fs::exists(dir / (reference_key(reference_for(s, Scheme::ewi_fp)) + ".ref")));
    fs::remove_all(dir);
}

TEST_CASE("summaries, bands and gates on synthetic records") {
    StudySpec spec;
    spec.label = "synthetic";
    spec.schemes = {Scheme::ewi_efp, Scheme::lie_trotter};
    spec.norms = {Norm::L2};
    spec.sweep = {Sweep::Kind::tau, {0.08, 0.04, 0.02, 0.01}};
    std::vector<ErrorRecord> recs;
    for (double t : spec.sweep.values) recs.push_back(record(Scheme::ewi_efp, Norm::L2, t, t));
    const double wobbly[] = {1e-2, 2e-3, 1.5e-3, 1e-4};
    for (int i = 0; i < 4; ++i) recs.push_back(record(Scheme::lie_trotter, Norm::L2, spec.sweep.values[i], wobbly[i]));

    spec.bands = {{Scheme::ewi_efp, Norm::L2, 0.9, 1.1}, {Scheme::ewi_efp, Norm::L2, 2.9, 3.1}};
    spec.gates = {{Gate::Kind::fluctuation, Scheme::lie_trotter, Scheme::ewi_efp, Norm::L2, 2.0},
                  {Gate::Kind::order_gap, Scheme::lie_trotter, Scheme::ewi_efp, Norm::L2, 0.5},
                  {Gate::Kind::finest_error_ratio, Scheme::lie_trotter, Scheme::ewi_efp, Norm::L2, 0.5}};
    const auto r = summarize(spec, recs);
    REQUIRE(r.gates.size() == 5);
    CHECK(r.gates[0].passed);
    CHECK_FALSE(r.gates[1].passed);
    CHECK(r.gates[2].passed);
    CHECK(r.gates[3].passed);
    CHECK(r.gates[4].passed);
    CHECK_FALSE(r.all_passed());
    CHECK(r.find(Scheme::ewi_efp, Norm::L2)->finest_error == 0.01);

    // non-monotone series are flagged and fail their bands
    std::vector<ErrorRecord> rising;
    for (double t : spec.sweep.values) rising.push_back(record(Scheme::ewi_efp, Norm::L2, t, 1.0 / t));
    StudySpec one = spec;
    one.schemes = {Scheme::ewi_efp};
    one.gates.clear();
    one.bands = {{Scheme::ewi_efp, Norm::L2, -2, 0}};
    const auto nm = summarize(one, rising);
    CHECK(nm.series[0].status == "non-monotone");
    CHECK_FALSE(nm.all_passed());

    // blown-up points are excluded and written as nan
    auto blown = recs;
    blown[1].blown_up = true;
    blown[1].error = std::numeric_limits<double>::quiet_NaN();
    const auto b = summarize(spec, blown);
    CHECK(b.find(Scheme::ewi_efp, Norm::L2)->fit->slope == doctest::Approx(1.0));
    const auto csv = to_csv(b.records);
    CHECK(csv.find(",nan,") != std::string::npos);
    CHECK(csv.find(",1,") != std::string::npos);
}

TEST_CASE("CSV quoting and number format") {
    auto r = record(Scheme::ewi_efp, Norm::H1, 1.25e-3, 0.1 + 0.2);
    r.potential = "box(-4,-2,2)";
    r.nonlinearity = "power(-1,0.1)";
    r.datum = "type1_h2";
    r.h = 0.0078125;
    r.order_local = 0.5;
    r.wall_seconds = 1.5;
    const auto csv = to_csv({r});
    CHECK(csv == std::string(kCsvHeader) +
                     "\nsynthetic,ewi_efp,\"box(-4,-2,2)\",\"power(-1,0.1)\",type1_h2,H1,0.00125,0.0078125,"
                     "0.30000000000000004,0.500000,0,1.500000\n");
}

TEST_CASE("study validation") {
    StudySpec s = small_cubic_study();
    CHECK_NOTHROW(s.validate());
    s.schemes = {Scheme::ewi_efp, Scheme::ewi_efp};
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s = small_cubic_study();
    s.sweep.values = {1e-2, 2.5e-3, 5e-3};
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s = small_cubic_study();
    s.reference.tau = 5e-4;
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s = small_cubic_study();
    s.sweep = {Sweep::Kind::h, {0.5, 0.25, 0.2}};
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s.sweep = {Sweep::Kind::h, {0.5, 0.25}};
    s.reference.h = 0.25;
    CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("initial data") {
    const auto f1 = InitialDatum::type1().function(-16, 16);
    const auto f2 = InitialDatum::type2().function(-16, 16);
    const auto f3 = InitialDatum::h3().function(-16, 16);
    for (double x : {-3.1, -0.4, 0.0, 0.7, 2.5}) {
        CHECK(f1(x).real() == doctest::Approx(oracle::type1(x)));
        CHECK(f2(x).real() == doctest::Approx(oracle::type2(x)));
        CHECK(f3(x).real() == doctest::Approx((1 + std::pow(std::abs(x), 2.51)) * std::exp(-x * x / 2)));
    }
    const auto pw = InitialDatum::plane_wave(0.5, 3).function(-16, 16);
    CHECK(std::abs(pw(0.0) - 0.5 * std::exp(oracle::I * 3.0 * std::numbers::pi)) < 1e-14);
    CHECK(InitialDatum::parse("plane_wave(0.5,3)").describe() == "plane_wave(0.5,3)");
    CHECK(InitialDatum::parse("type1_h2").describe() == "type1_h2");
    CHECK_THROWS_AS(InitialDatum::parse("gaussian"), ConfigError);
}

TEST_CASE("presets") {
    for (const auto& name : presets::names()) {
        const auto studies = presets::preset(name);
        CHECK_FALSE(studies.empty());
        for (const auto& s : studies) {
            CHECK_NOTHROW(s.validate());
            // the root-potential h sweep needs the finer time step, see presets.hpp
            const bool root_h = s.label == "fig56_spatial_root";
            CHECK(s.reference.tau == (root_h ? presets::kTauRefRoot : presets::kTauRef));
            CHECK(s.reference.h == 1.0 / 128);
            CHECK(s.reference_grid().modes() == 4096);
            CHECK(s.problem.a == -16.0);
            CHECK(s.problem.b == 16.0);
            CHECK(s.problem.T == 1.0);
            CHECK((s.sweep.kind == Sweep::Kind::h) == s.reference.per_scheme);
        }
    }
    const auto f52 = presets::preset("fig52");
    CHECK(f52.size() == 4);
    CHECK(f52[0].sweep.values == std::vector<double>{1e-2, 5e-3, 2.5e-3, 1.25e-3});
    CHECK(presets::preset("fig51")[0].sweep.values == std::vector<double>{0.125, 0.0625, 0.03125, 0.015625});
    CHECK_THROWS_AS(presets::preset("fig99"), ConfigError);
}

TEST_CASE("solve config") {
    const auto job = parse_solve_config(R"(
label = box_run
scheme = ewi_efp   ; trailing comment
tau = 1e-4
N = 4096
[problem]
potential = box(-4,-2,2)
nonlinearity = cubic
datum = type1_h2
)");
    CHECK(job.label == "box_run");
    CHECK(job.config.scheme == Scheme::ewi_efp);
    CHECK(job.config.tau == 1e-4);
    CHECK(job.config.grid.modes() == 4096);
    CHECK(job.config.potential.describe() == "box(-4,-2,2)");

    const auto h = parse_solve_config("scheme=strang\ntau=0.01\nh=0.25\n[problem]\ndatum=type2\n");
    CHECK(h.config.grid.modes() == 128);

    try {
        parse_solve_config("scheme = ewi_efp\nN = 64\n[problem]\ndatum = type1\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("tau") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_solve_config("scheme=ewi_efp\ntau=0.01\nN=64\ntua=1\n[problem]\ndatum=type1\n"), ConfigError);
    CHECK_THROWS_AS(parse_solve_config("scheme=ewi_efp\ntau=0.01\nN=64\n[problem]\ndatum=type1\nV=1\n"), ConfigError);
    CHECK_THROWS_AS(parse_solve_config("scheme=ewi_efp\ntau=0.01\nN=64\n[problem]\ndatum=type1\n[extra]\nx=1\n"), ConfigError);
    CHECK_THROWS_AS(parse_solve_config("scheme=ewi_efp\ntau=0.3\nN=64\n[problem]\ndatum=type1\n"), ConfigError);
    CHECK_THROWS_AS(parse_solve_config("scheme=ewi_efp\ntau=abc\nN=64\n[problem]\ndatum=type1\n"), ConfigError);
}

TEST_CASE("study config") {
    const auto s = parse_study_config(R"(
label = cfg_study
schemes = ewi_efp, lie_trotter
norms = L2
[problem]
potential = box(-4,-2,2)
nonlinearity = cubic
datum = type1_h2
[sweep]
tau = 1e-2, 5e-3, 2.5e-3
[reference]
scheme = ewi_efp
tau = 1e-5
h = 0.0078125
[bands]
ewi_efp.L2 = 0.8, 1.2
[gates]
fluct.lie_trotter.ewi_efp.L2 = 2
)");
    CHECK(s.label == "cfg_study");
    CHECK(s.schemes == std::vector<Scheme>{Scheme::ewi_efp, Scheme::lie_trotter});
    CHECK(s.norms == std::vector<Norm>{Norm::L2});
    CHECK(s.sweep.values.size() == 3);
    REQUIRE(s.bands.size() == 1);
    CHECK(s.bands[0].lo == 0.8);
    REQUIRE(s.gates.size() == 1);
    CHECK(s.gates[0].kind == Gate::Kind::fluctuation);

    const std::string base = "label=x\nschemes=ewi_efp\n[problem]\ndatum=type1\n[reference]\nscheme=strang\ntau=1e-5\nh=0.25\n";
    CHECK_NOTHROW(parse_study_config(base + "[sweep]\ntau=1e-2,5e-3\n"));
    CHECK_THROWS_AS(parse_study_config(base + "[sweep]\ntau=1e-2\nh=0.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_study_config(base + "[sweep]\n"), ConfigError);
    CHECK_THROWS_AS(parse_study_config(base + "[sweep]\ntau=1e-2\n[bands]\nefp.L2=1,2\n"), ConfigError);
    CHECK_THROWS_AS(parse_study_config(base + "[sweep]\ntau=1e-2\n[gates]\nmax.ewi_efp.strang.L2=1\n"), ConfigError);
    const std::string dup = "label=x\nschemes=ewi_efp,ewi_efp\n[problem]\ndatum=type1\n[reference]\nscheme=strang\ntau=1e-5\nh=0.25\n[sweep]\ntau=1e-2\n";
    CHECK_THROWS_AS(parse_study_config(dup), ConfigError);
}

}  // TEST_SUITE
