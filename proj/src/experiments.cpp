#include "nlse/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>

#ifdef NLSE_HAVE_OPENMP
#include <omp.h>
#endif

#include "nlse/errors.hpp"
#include "nlse/refcache.hpp"
#include "text.hpp"

namespace nlse {

std::string_view norm_name(Norm n) noexcept { return n == Norm::L2 ? "L2" : "H1"; }

Norm parse_norm(std::string_view name) {
    if (name == "L2") return Norm::L2;
    if (name == "H1") return Norm::H1;
    throw ConfigError("unknown norm '" + std::string(name) + "'");
}

double norm_alpha(Norm n) noexcept { return n == Norm::L2 ? 0.0 : 1.0; }

// ---------------------------------------------------------------------------
// initial data and problems

InitialDatum InitialDatum::plane_wave(double amplitude, long mode) {
    InitialDatum d;
    d.kind = Kind::plane_wave;
    d.amplitude = amplitude;
    d.mode = mode;
    return d;
}

InitialDatum InitialDatum::from_function(std::string name, std::function<cplx(double)> f) {
    InitialDatum d;
    d.kind = Kind::custom;
    d.custom = std::move(f);
    d.custom_name = std::move(name);
    return d;
}

InitialDatum InitialDatum::parse(std::string_view text) {
    const auto c = text::parse_call(text);
    if (c.name == "type1_h2" || c.name == "type1") return type1();
    if (c.name == "type2_smooth" || c.name == "type2") return type2();
    if (c.name == "h3_datum" || c.name == "h3") return h3();
    if (c.name == "plane_wave") {
        text::expect_args(c, 2);
        if (c.args[1] != std::round(c.args[1])) throw ConfigError("plane_wave: mode must be an integer");
        return plane_wave(c.args[0], std::lround(c.args[1]));
    }
    throw ConfigError("unknown initial datum '" + c.name + "'");
}

std::string InitialDatum::describe() const {
    switch (kind) {
        case Kind::type1_h2: return "type1_h2";
        case Kind::type2_smooth: return "type2_smooth";
        case Kind::h3_datum: return "h3_datum";
        case Kind::plane_wave: return text::call_syntax("plane_wave", {amplitude, static_cast<double>(mode)});
        case Kind::custom: return custom_name;
    }
    return "custom";
}

std::function<cplx(double)> InitialDatum::function(double a, double b) const {
    switch (kind) {
        case Kind::type1_h2:
            return [](double x) { return cplx(x * std::pow(std::abs(x), 0.51) * std::exp(-0.5 * x * x)); };
        case Kind::type2_smooth:
            return [](double x) { return cplx(x * std::exp(-0.5 * x * x)); };
        case Kind::h3_datum:
            return [](double x) { return cplx((1.0 + std::pow(std::abs(x), 2.51)) * std::exp(-0.5 * x * x)); };
        case Kind::plane_wave: {
            const double mu = 2.0 * 3.14159265358979323846 * static_cast<double>(mode) / (b - a);
            const double amp = amplitude;
            return [=](double x) { return amp * std::polar(1.0, mu * (x - a)); };
        }
        case Kind::custom:
            if (!custom) throw ConfigError("custom initial datum without a function");
            return custom;
    }
    throw ConfigError("unknown initial datum");
}

std::string Problem::describe() const {
    return "potential=" + potential.describe() + ";nonlinearity=" + nonlinearity.describe() +
           ";datum=" + datum.describe() + ";a=" + text::shortest(a) + ";b=" + text::shortest(b) +
           ";T=" + text::shortest(T);
}

// ---------------------------------------------------------------------------
// study specification

PeriodicGrid StudySpec::reference_grid() const {
    return PeriodicGrid::from_mesh_size(problem.a, problem.b, reference.h);
}

void StudySpec::validate() const {
    if (label.empty()) throw ConfigError("study: empty label");
    if (schemes.empty()) throw ConfigError("study: no schemes under test");
    if (norms.empty()) throw ConfigError("study: no norms");
    std::set<Scheme> seen;
    for (Scheme s : schemes)
        if (!seen.insert(s).second) throw ConfigError("study: duplicate scheme '" + std::string(scheme_name(s)) + "'");
    if (sweep.values.empty()) throw ConfigError("study: empty sweep");
    for (std::size_t i = 0; i < sweep.values.size(); ++i) {
        if (!(sweep.values[i] > 0)) throw ConfigError("study: sweep values must be positive");
        if (i > 0 && !(sweep.values[i] < sweep.values[i - 1]))
            throw ConfigError("study: sweep values must be strictly decreasing");
    }
    const double finest = sweep.values.back();
    const PeriodicGrid ref_grid = reference_grid();

    SchemeConfig probe = make_config(problem, reference.scheme, reference.tau, ref_grid, reference.fs_oversample);
    probe.validate();
    if (sweep.kind == Sweep::Kind::tau) {
        if (reference.tau > finest / 10.0 * (1.0 + 1e-12))
            throw ConfigError("study: tau_ref must be <= min(tau) / 10");
        for (double tau : sweep.values) {
            SchemeConfig c = probe;
            c.tau = tau;
            c.validate();
        }
    } else {
        if (reference.h > finest / 2.0 * (1.0 + 1e-12)) throw ConfigError("study: h_ref must be <= min(h) / 2");
        for (double h : sweep.values) PeriodicGrid::from_mesh_size(problem.a, problem.b, h);
    }
}

SchemeConfig make_config(const Problem& problem, Scheme scheme, double tau, const PeriodicGrid& grid,
                         int fs_oversample) {
    SchemeConfig cfg;
    cfg.scheme = scheme;
    cfg.tau = tau;
    cfg.T = problem.T;
    cfg.grid = grid;
    cfg.potential = problem.potential;
    cfg.nonlinearity = problem.nonlinearity;
    cfg.fs_oversample = fs_oversample;
    return cfg;
}

// ---------------------------------------------------------------------------
// order fitting and error measurement

OrderFit fit_order(const std::vector<std::pair<double, double>>& points, double floor) {
    OrderFit fit;
    std::vector<std::pair<double, double>> usable;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto [step, err] = points[i];
        if (i > 0 && !(step < points[i - 1].first)) throw FitError("fit_order: steps must be strictly decreasing");
        if (!(step > 0)) throw FitError("fit_order: steps must be positive");
        if (!std::isfinite(err) || err <= 0.0) {
            fit.warnings.push_back("excluded step " + text::shortest(step) + ": non-positive or non-finite error");
            continue;
        }
        if (err < floor) {
            fit.warnings.push_back("excluded step " + text::shortest(step) + ": error below floor");
            continue;
        }
        usable.emplace_back(step, err);
    }
    if (usable.size() < 2) throw FitError("fit_order: fewer than two usable points");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(usable.size());
    for (const auto& [s, e] : usable) {
        const double x = std::log(s);
        const double y = std::log(e);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    for (std::size_t i = 0; i + 1 < usable.size(); ++i)
        fit.per_interval.push_back(std::log(usable[i].second / usable[i + 1].second) /
                                   std::log(usable[i].first / usable[i + 1].first));
    return fit;
}

double error_against_reference(const SpectralField& psi, const SpectralField& psi_ref, Norm norm) {
    if (!psi.grid().same_domain(psi_ref.grid())) throw ConfigError("error: domains differ");
    if (psi.modes() > psi_ref.modes()) throw ConfigError("error: reference grid is coarser than the solution");
    SpectralField diff = zero_pad(psi, psi_ref.grid());
    diff -= psi_ref;
    return sobolev_norm(diff, norm_alpha(norm));
}

// ---------------------------------------------------------------------------
// references

// bump whenever the numerics behind a cached reference change
constexpr int kSolverRevision = 2;

std::string reference_key(const StudySpec& spec) {
    const auto& r = spec.reference;
    std::string key = "rev=" + std::to_string(kSolverRevision) + ";" + spec.problem.describe() + ";scheme=" + std::string(scheme_name(r.scheme)) +
                      ";tau=" + text::shortest(r.tau) + ";h=" + text::shortest(r.h);
    if (r.scheme == Scheme::ewi_fs) key += ";fs=" + std::to_string(r.fs_oversample);
    return sha256_hex(key).substr(0, 24);
}

SpectralField compute_reference(const StudySpec& spec, const std::filesystem::path& cache_dir) {
    const PeriodicGrid grid = spec.reference_grid();
    const SchemeConfig cfg = make_config(spec.problem, spec.reference.scheme, spec.reference.tau, grid,
                                         spec.reference.fs_oversample);
    cfg.validate();

    SnapshotHeader expected;
    expected.modes = grid.modes();
    expected.a = grid.a();
    expected.b = grid.b();
    expected.T = cfg.T;
    expected.scheme = std::string(scheme_name(cfg.scheme));
    expected.tau = cfg.tau;

    const auto path = cache_dir / (reference_key(spec) + ".ref");
    if (std::filesystem::exists(path)) {
        try {
            Snapshot snap = read_snapshot(path);
            if (snap.header == expected) return std::move(snap.field);
            std::cerr << "warning: reference cache header mismatch in " << path << ", recomputing\n";
        } catch (const CacheError& e) {
            std::cerr << "warning: " << e.what() << " (" << path << "), recomputing\n";
        }
    }

    const SpectralField psi0 = initial_field(cfg, spec.problem.datum.function(grid.a(), grid.b()));
    SpectralField result = evolve(cfg, psi0).field;
    write_snapshot(path, expected, result);
    return result;
}

StudySpec reference_for(const StudySpec& spec, Scheme scheme) {
    StudySpec out = spec;
    if (spec.reference.per_scheme) {
        out.reference.scheme = scheme;
        out.reference.fs_oversample = spec.fs_oversample;
    }
    return out;
}

double reference_self_consistency(const StudySpec& spec, const std::filesystem::path& cache_dir) {
    StudySpec fine = spec;
    fine.reference.tau = spec.reference.tau / 2.0;
    fine.reference.h = spec.reference.h / 2.0;
    const SpectralField coarse = compute_reference(spec, cache_dir);
    const SpectralField refined = compute_reference(fine, cache_dir);
    return error_against_reference(coarse, refined, Norm::L2);
}

// ---------------------------------------------------------------------------
// studies

bool StudyResult::all_passed() const {
    return std::all_of(gates.begin(), gates.end(), [](const GateResult& g) { return g.passed; });
}

const SeriesSummary* StudyResult::find(Scheme scheme, Norm norm) const {
    for (const auto& s : series)
        if (s.scheme == scheme && s.norm == norm) return &s;
    return nullptr;
}

namespace {

double step_of(const StudySpec& spec, const ErrorRecord& r) { return spec.sweep.kind == Sweep::Kind::tau ? r.tau : r.h; }

double population_stddev(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    return std::sqrt(var / static_cast<double>(v.size()));
}

std::string fmt(double x, int digits = 3) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

std::string fmt_sci(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

GateResult evaluate_band(const StudyResult& r, const OrderBand& band) {
    GateResult g;
    g.name = "order " + std::string(scheme_name(band.scheme)) + " " + std::string(norm_name(band.norm)) + " in [" +
             fmt(band.lo, 2) + ", " + fmt(band.hi, 2) + "]";
    const SeriesSummary* s = r.find(band.scheme, band.norm);
    if (s == nullptr) {
        g.detail = "series missing";
        return g;
    }
    if (!s->fit) {
        g.detail = "no fit (" + s->status + ")";
        return g;
    }
    g.passed = s->status == "ok" && s->fit->slope >= band.lo && s->fit->slope <= band.hi;
    g.detail = "slope " + fmt(s->fit->slope) + (s->status == "ok" ? "" : " (" + s->status + ")");
    return g;
}

GateResult evaluate_gate(const StudyResult& r, const Gate& gate) {
    GateResult g;
    const std::string a(scheme_name(gate.first));
    const std::string b(scheme_name(gate.second));
    const std::string norm(norm_name(gate.norm));
    const SeriesSummary* sa = r.find(gate.first, gate.norm);
    const SeriesSummary* sb = r.find(gate.second, gate.norm);
    switch (gate.kind) {
        case Gate::Kind::order_gap: g.name = "order gap " + a + " - " + b + " " + norm + " >= " + fmt(gate.threshold, 2); break;
        case Gate::Kind::finest_error_ratio:
            g.name = "finest error " + a + " <= " + fmt(gate.threshold, 2) + " x " + b + " " + norm;
            break;
        case Gate::Kind::fluctuation:
            g.name = "fluctuation stddev " + a + " >= " + fmt(gate.threshold, 2) + " x " + b + " " + norm;
            break;
    }
    if (sa == nullptr || sb == nullptr) {
        g.detail = "series missing";
        return g;
    }
    switch (gate.kind) {
        case Gate::Kind::order_gap: {
            if (!sa->fit || !sb->fit) {
                g.detail = "no fit";
                return g;
            }
            const double gap = sa->fit->slope - sb->fit->slope;
            g.passed = gap >= gate.threshold;
            g.detail = "slopes " + fmt(sa->fit->slope) + " vs " + fmt(sb->fit->slope) + ", gap " + fmt(gap);
            return g;
        }
        case Gate::Kind::finest_error_ratio: {
            const double ea = sa->finest_error;
            const double eb = sb->finest_error;
            g.passed = std::isfinite(ea) && std::isfinite(eb) && ea <= gate.threshold * eb;
            g.detail = "errors " + fmt_sci(ea) + " vs " + fmt_sci(eb) + ", ratio " + fmt(ea / eb);
            return g;
        }
        case Gate::Kind::fluctuation: {
            if (!sa->fit || !sb->fit || sa->fit->per_interval.size() < 2 || sb->fit->per_interval.size() < 2) {
                g.detail = "not enough intervals";
                return g;
            }
            const double da = population_stddev(sa->fit->per_interval);
            const double db = population_stddev(sb->fit->per_interval);
            g.passed = da >= gate.threshold * db;
            g.detail = "stddev " + fmt(da) + " vs " + fmt(db);
            return g;
        }
    }
    return g;
}

}  // namespace

StudyResult summarize(const StudySpec& spec, std::vector<ErrorRecord> records) {
    StudyResult result;
    result.spec = spec;

    for (Scheme scheme : spec.schemes) {
        for (Norm norm : spec.norms) {
            std::vector<ErrorRecord*> series;
            for (auto& r : records)
                if (r.scheme == scheme && r.norm == norm) series.push_back(&r);
            std::sort(series.begin(), series.end(),
                      [&](const ErrorRecord* x, const ErrorRecord* y) { return step_of(spec, *x) > step_of(spec, *y); });

            // local orders between consecutive usable points
            const ErrorRecord* prev = nullptr;
            for (ErrorRecord* r : series) {
                const bool usable = !r->blown_up && std::isfinite(r->error) && r->error >= kErrorFloor;
                if (!usable) continue;
                if (prev != nullptr)
                    r->order_local = std::log(prev->error / r->error) / std::log(step_of(spec, *prev) / step_of(spec, *r));
                prev = r;
            }

            SeriesSummary summary{scheme, norm, std::nullopt, "ok", std::numeric_limits<double>::quiet_NaN()};
            std::vector<std::pair<double, double>> points;
            std::vector<const ErrorRecord*> finite;
            for (const ErrorRecord* r : series) {
                points.emplace_back(step_of(spec, *r), r->blown_up ? std::numeric_limits<double>::quiet_NaN() : r->error);
                if (!r->blown_up && std::isfinite(r->error)) finite.push_back(r);
            }
            if (!finite.empty()) summary.finest_error = finite.back()->error;
            const bool all_floor = !finite.empty() && std::all_of(finite.begin(), finite.end(), [](const ErrorRecord* r) {
                return r->error < kErrorFloor;
            });
            if (all_floor) {
                summary.status = "floor";
            } else {
                try {
                    summary.fit = fit_order(points);
                } catch (const FitError&) {
                    summary.status = "insufficient";
                }
                if (summary.fit && finite.size() >= 2 && !(finite.front()->error > finite.back()->error))
                    summary.status = "non-monotone";
            }
            result.series.push_back(std::move(summary));
        }
    }
    result.records = std::move(records);
    for (const auto& band : spec.bands) result.gates.push_back(evaluate_band(result, band));
    for (const auto& gate : spec.gates) result.gates.push_back(evaluate_gate(result, gate));
    return result;
}

StudyResult run_study(const StudySpec& spec, const std::filesystem::path& csv_path, const RunOptions& options) {
    spec.validate();
    int threads = options.threads;
#ifdef NLSE_HAVE_OPENMP
    if (threads <= 0) threads = omp_get_num_procs();
#endif

    // one reference per distinct reference scheme
    std::vector<Scheme> ref_schemes;
    for (Scheme s : spec.schemes) {
        const Scheme r = reference_for(spec, s).reference.scheme;
        if (std::find(ref_schemes.begin(), ref_schemes.end(), r) == ref_schemes.end()) ref_schemes.push_back(r);
    }
    std::vector<std::optional<SpectralField>> references(ref_schemes.size());
    {
        std::vector<std::exception_ptr> errors(ref_schemes.size());
        const auto n_ref = static_cast<std::ptrdiff_t>(ref_schemes.size());
        const int ref_threads = std::clamp(threads, 1, static_cast<int>(n_ref));
#pragma omp parallel for schedule(dynamic, 1) num_threads(ref_threads)
        for (std::ptrdiff_t i = 0; i < n_ref; ++i) {
            try {
                StudySpec rs = spec;
                rs.reference.scheme = ref_schemes[static_cast<std::size_t>(i)];
                if (spec.reference.per_scheme) rs.reference.fs_oversample = spec.fs_oversample;
                references[static_cast<std::size_t>(i)] = compute_reference(rs, options.cache_dir);
                if (spec.reference.verify) {
                    const double drift = reference_self_consistency(rs, options.cache_dir);
                    if (!(drift < 1e-8))
                        throw ConfigError("study " + spec.label + ": reference not converged (self-consistency " +
                                          fmt_sci(drift) + ")");
                }
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }
    auto reference_of = [&](Scheme s) -> const SpectralField& {
        const Scheme r = reference_for(spec, s).reference.scheme;
        const auto at = std::find(ref_schemes.begin(), ref_schemes.end(), r) - ref_schemes.begin();
        return *references[static_cast<std::size_t>(at)];
    };

    struct Task {
        Scheme scheme;
        double value;
    };
    std::vector<Task> tasks;
    for (Scheme s : spec.schemes)
        for (double v : spec.sweep.values) tasks.push_back({s, v});

    std::vector<std::vector<ErrorRecord>> slots(tasks.size());
    std::vector<std::exception_ptr> failures(tasks.size());

    threads = std::clamp(threads, 1, static_cast<int>(tasks.size()));

    const auto count = static_cast<std::ptrdiff_t>(tasks.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const Task& task = tasks[static_cast<std::size_t>(i)];
        try {
            const bool tau_sweep = spec.sweep.kind == Sweep::Kind::tau;
            const PeriodicGrid grid =
                tau_sweep ? spec.reference_grid() : PeriodicGrid::from_mesh_size(spec.problem.a, spec.problem.b, task.value);
            const double tau = tau_sweep ? task.value : spec.reference.tau;
            const SchemeConfig cfg = make_config(spec.problem, task.scheme, tau, grid, spec.fs_oversample);

            ErrorRecord base;
            base.study_label = spec.label;
            base.scheme = task.scheme;
            base.potential = spec.problem.potential.describe();
            base.nonlinearity = spec.problem.nonlinearity.describe();
            base.datum = spec.problem.datum.describe();
            base.tau = tau;
            base.h = grid.h();
            base.t_final = spec.problem.T;

            const auto start = std::chrono::steady_clock::now();
            std::optional<SpectralField> final_field;
            try {
                const SpectralField psi0 = initial_field(cfg, spec.problem.datum.function(grid.a(), grid.b()));
                final_field = evolve(cfg, psi0).field;
            } catch (const BlowUpError& e) {
                base.blown_up = true;
                base.failed_step = e.step();
                base.error = std::numeric_limits<double>::quiet_NaN();
            }
            base.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            for (Norm norm : spec.norms) {
                ErrorRecord r = base;
                r.norm = norm;
                if (final_field) r.error = error_against_reference(*final_field, reference_of(task.scheme), norm);
                slots[static_cast<std::size_t>(i)].push_back(std::move(r));
            }
        } catch (...) {
            failures[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& f : failures)
        if (f) std::rethrow_exception(f);

    // deterministic order: scheme, norm, sweep position
    std::vector<ErrorRecord> records;
    for (std::size_t si = 0; si < spec.schemes.size(); ++si)
        for (Norm norm : spec.norms)
            for (std::size_t vi = 0; vi < spec.sweep.values.size(); ++vi)
                for (const auto& r : slots[si * spec.sweep.values.size() + vi])
                    if (r.norm == norm) records.push_back(r);

    StudyResult result = summarize(spec, std::move(records));
    if (!csv_path.empty()) write_csv(csv_path, result.records);
    return result;
}

// ---------------------------------------------------------------------------
// output

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

}  // namespace

std::string to_csv(const std::vector<ErrorRecord>& records) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    for (const auto& r : records) {
        out << csv_field(r.study_label) << ',' << scheme_name(r.scheme) << ',' << csv_field(r.potential) << ','
            << csv_field(r.nonlinearity) << ',' << csv_field(r.datum) << ',' << norm_name(r.norm) << ','
            << text::shortest(r.tau) << ',' << text::shortest(r.h) << ','
            << (std::isfinite(r.error) ? text::shortest(r.error) : std::string("nan")) << ','
            << (r.order_local ? fmt(*r.order_local, 6) : std::string()) << ',' << (r.blown_up ? 1 : 0) << ','
            << fmt(r.wall_seconds, 6) << '\n';
    }
    return out.str();
}

void write_csv(const std::filesystem::path& path, const std::vector<ErrorRecord>& records) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::trunc);
    out << to_csv(records);
    if (!out) throw ConfigError("cannot write " + path.string());
}

std::string format_summary(const StudyResult& result) {
    std::ostringstream out;
    const auto& spec = result.spec;
    out << "study " << spec.label << " (" << (spec.sweep.kind == Sweep::Kind::tau ? "tau" : "h") << " sweep, reference "
        << (spec.reference.per_scheme ? std::string("per scheme") : std::string(scheme_name(spec.reference.scheme))) << " tau=" << text::shortest(spec.reference.tau)
        << " h=" << text::shortest(spec.reference.h) << ", fs_oversample=" << spec.fs_oversample << ")\n";
    char line[256];
    std::snprintf(line, sizeof line, "  %-12s %-4s %8s  %-13s %s\n", "scheme", "norm", "order", "finest error",
                  "status / per-interval");
    out << line;
    for (const auto& s : result.series) {
        std::string intervals;
        if (s.fit)
            for (double p : s.fit->per_interval) intervals += " " + fmt(p, 2);
        std::snprintf(line, sizeof line, "  %-12s %-4s %8s  %-13s %s%s\n", std::string(scheme_name(s.scheme)).c_str(),
                      std::string(norm_name(s.norm)).c_str(), s.fit ? fmt(s.fit->slope).c_str() : "-",
                      fmt_sci(s.finest_error).c_str(), s.status.c_str(), intervals.c_str());
        out << line;
    }
    for (const auto& g : result.gates) out << "  [" << (g.passed ? "PASS" : "FAIL") << "] " << g.name << ": " << g.detail << '\n';
    return out.str();
}

}  // namespace nlse
