// nlse: solve / convergence / compare driver.
//
// Exit codes: 0 success, 2 configuration error, 3 blow-up, 4 acceptance band failed.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#ifdef NLSE_HAVE_OPENMP
#include <omp.h>
#endif

#include "nlse/config.hpp"
#include "nlse/errors.hpp"
#include "nlse/experiments.hpp"
#include "nlse/presets.hpp"
#include "nlse/refcache.hpp"

namespace fs = std::filesystem;
using namespace nlse;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitBlowUp = 3;
constexpr int kExitBands = 4;

struct Options {
    std::string config;
    std::string out = "out";
    std::string threads = "auto";
    std::string cache = "cache";
    std::string preset;
    bool self_test = false;
};

int parse_threads(const std::string& s) {
    if (s == "auto") return 0;
    try {
        std::size_t used = 0;
        const int n = std::stoi(s, &used);
        if (used == s.size() && n >= 1) return n;
    } catch (const std::exception&) {
    }
    throw ConfigError("--threads must be a positive integer or 'auto'");
}

double discrete_mass(const SpectralField& c) {
    const GridField nodes = idft(c);
    double sum = 0.0;
    for (const auto& z : nodes.periodic_values()) sum += std::norm(z);
    return c.grid().h() * sum;
}

void write_nodes_csv(const fs::path& path, const SpectralField& c) {
    const GridField nodes = idft(c);
    std::ofstream out(path, std::ios::trunc);
    out << "x,re,im,abs2\n";
    char line[160];
    for (long j = 0; j <= c.modes(); ++j) {
        const auto z = nodes[j];
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", c.grid().node(j), z.real(), z.imag(),
                      std::norm(z));
        out << line;
    }
    if (!out) throw ConfigError("cannot write " + path.string());
}

int cmd_solve(const Options& opt) {
    if (opt.config.empty()) throw ConfigError("solve needs --config");
    const SolveJob job = parse_solve_config(read_text_file(opt.config));
    const auto& cfg = job.config;
    const auto& grid = cfg.grid;

    const SpectralField psi0 = initial_field(cfg, job.datum.function(grid.a(), grid.b()));
    const SolverState final_state = evolve(cfg, psi0);

    fs::create_directories(opt.out);
    SnapshotHeader header;
    header.modes = grid.modes();
    header.a = grid.a();
    header.b = grid.b();
    header.T = cfg.T;
    header.scheme = std::string(scheme_name(cfg.scheme));
    header.tau = cfg.tau;
    const fs::path snapshot = fs::path(opt.out) / (job.label + ".ref");
    const fs::path nodes = fs::path(opt.out) / (job.label + "_nodes.csv");
    write_snapshot(snapshot, header, final_state.field);
    write_nodes_csv(nodes, final_state.field);

    std::printf("scheme %s, N = %ld, tau = %g, T = %g, steps = %ld\n", header.scheme.c_str(), grid.modes(), cfg.tau,
                cfg.T, final_state.step_index);
    const double m0 = discrete_mass(psi0);
    const double m1 = discrete_mass(final_state.field);
    std::printf("mass t=0: %.17g\n", m0);
    std::printf("mass t=T: %.17g\n", m1);
    std::printf("relative mass change: %.3e\n", m0 > 0 ? std::abs(m1 - m0) / m0 : std::abs(m1 - m0));
    std::printf("wall time per step: %.3e s\n", final_state.wall_time_per_step);
    std::printf("wrote %s and %s\n", snapshot.c_str(), nodes.c_str());
    return kExitOk;
}

std::vector<StudySpec> load_studies(const Options& opt) {
    if (!opt.preset.empty() && !opt.config.empty()) throw ConfigError("give either --preset or --config, not both");
    if (!opt.preset.empty()) return presets::preset(opt.preset);
    if (opt.config.empty()) throw ConfigError("need --config or --preset");
    return {parse_study_config(read_text_file(opt.config))};
}

// Geometric data with exact orders 1 and 2, exercising fit + gate plumbing.
int self_test() {
    StudySpec spec;
    spec.label = "self_test";
    spec.schemes = {Scheme::ewi_efp, Scheme::strang};
    spec.norms = {Norm::L2};
    spec.sweep = {Sweep::Kind::tau, {0.1, 0.05, 0.025, 0.0125}};
    spec.bands = {{Scheme::ewi_efp, Norm::L2, 1.0 - 1e-12, 1.0 + 1e-12}, {Scheme::strang, Norm::L2, 2.0 - 1e-12, 2.0 + 1e-12}};
    std::vector<ErrorRecord> records;
    for (auto [scheme, order] : {std::pair{Scheme::ewi_efp, 1.0}, std::pair{Scheme::strang, 2.0}}) {
        for (double tau : spec.sweep.values) {
            ErrorRecord r;
            r.study_label = spec.label;
            r.scheme = scheme;
            r.norm = Norm::L2;
            r.tau = tau;
            r.error = std::pow(tau, order);
            records.push_back(r);
        }
    }
    const StudyResult result = summarize(spec, std::move(records));
    std::cout << format_summary(result);
    return result.all_passed() ? kExitOk : kExitBands;
}

int run_studies(const Options& opt, bool compare) {
    if (opt.self_test) return self_test();
    const auto studies = load_studies(opt);
    const RunOptions run{opt.cache, parse_threads(opt.threads)};
    for (const auto& spec : studies) {
        spec.validate();
        if (compare && spec.schemes.size() < 2) throw ConfigError("compare needs at least two schemes");
    }

    fs::create_directories(opt.out);
    bool all_passed = true;
    for (const auto& spec : studies) {
        const fs::path csv = fs::path(opt.out) / (spec.label + ".csv");
        const StudyResult result = run_study(spec, csv, run);
        std::cout << format_summary(result);
        if (compare) {
            std::printf("  %-12s %-4s %8s  %s\n", "scheme", "norm", "order", "error at finest step");
            for (const auto& s : result.series)
                std::printf("  %-12s %-4s %8s  %.3e\n", std::string(scheme_name(s.scheme)).c_str(),
                            std::string(norm_name(s.norm)).c_str(),
                            s.fit ? std::to_string(s.fit->slope).substr(0, 6).c_str() : "-", s.finest_error);
        }
        for (const auto& r : result.records)
            if (r.blown_up)
                std::fprintf(stderr, "blow-up: %s tau=%g h=%g at step %ld\n", std::string(scheme_name(r.scheme)).c_str(),
                             r.tau, r.h, r.failed_step);
        std::cout << "wrote " << csv.string() << "\n\n";
        all_passed = all_passed && result.all_passed();
    }
    return all_passed ? kExitOk : kExitBands;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exponential wave integrators for the periodic 1D NLSE"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config, "INI configuration file");
        sub->add_option("--out", opt.out, "output directory")->capture_default_str();
        sub->add_option("--threads", opt.threads, "worker threads: n or auto")->capture_default_str();
        sub->add_option("--cache", opt.cache, "reference cache directory")->capture_default_str();
    };
    auto* solve = app.add_subcommand("solve", "run one scheme to t = T and write a snapshot");
    add_common(solve);
    auto* conv = app.add_subcommand("convergence", "run a convergence study and check its order bands");
    add_common(conv);
    conv->add_option("--preset", opt.preset, "built-in study: fig51 .. fig57");
    conv->add_flag("--self-test", opt.self_test, "fit synthetic geometric data");
    auto* cmp = app.add_subcommand("compare", "run several schemes on one sweep side by side");
    add_common(cmp);
    cmp->add_option("--preset", opt.preset, "built-in study: fig51 .. fig57");
    cmp->add_flag("--self-test", opt.self_test, "fit synthetic geometric data");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
#ifdef NLSE_HAVE_OPENMP
        if (const int n = parse_threads(opt.threads); n > 0) omp_set_num_threads(n);
#endif
        if (solve->parsed()) return cmd_solve(opt);
        if (conv->parsed()) return run_studies(opt, false);
        return run_studies(opt, true);
    } catch (const BlowUpError& e) {
        std::cerr << "error: blow-up at step " << e.step() << "\n";
        return kExitBlowUp;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
