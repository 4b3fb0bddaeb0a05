#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nlse/integrators.hpp"

namespace nlse {

enum class Norm { L2, H1 };

std::string_view norm_name(Norm n) noexcept;
Norm parse_norm(std::string_view name);
double norm_alpha(Norm n) noexcept;

/// Errors below this are round-off dominated and excluded from order fits.
inline constexpr double kErrorFloor = 1e-10;

/// Closed-form initial data.
struct InitialDatum {
    enum class Kind { type1_h2, type2_smooth, h3_datum, plane_wave, custom };

    Kind kind = Kind::type2_smooth;
    double amplitude = 1.0;  // plane_wave
    long mode = 0;           // plane_wave
    std::function<cplx(double)> custom;
    std::string custom_name = "custom";

    static InitialDatum type1() { InitialDatum d; d.kind = Kind::type1_h2; return d; }
    static InitialDatum type2() { InitialDatum d; d.kind = Kind::type2_smooth; return d; }
    static InitialDatum h3() { InitialDatum d; d.kind = Kind::h3_datum; return d; }
    static InitialDatum plane_wave(double amplitude, long mode);
    static InitialDatum from_function(std::string name, std::function<cplx(double)> f);

    static InitialDatum parse(std::string_view text);
    std::string describe() const;

    /// psi0(x) on the domain (a, b).
    std::function<cplx(double)> function(double a, double b) const;
};

struct Problem {
    Potential potential = Potential::none();
    Nonlinearity nonlinearity = Nonlinearity::none();
    InitialDatum datum = InitialDatum::type2();
    double a = -16.0;
    double b = 16.0;
    double T = 1.0;

    std::string describe() const;
};

struct ReferenceSpec {
    Scheme scheme = Scheme::strang;
    double tau = 1e-5;
    double h = 1.0 / 128.0;
    int fs_oversample = kDefaultOversample;
    /// Run the (tau/2, 2N) self-consistency check before the sweep.
    bool verify = false;
    /// Measure every scheme against a reference run of that same scheme
    /// (h sweeps: swept runs share tau_ref, so the time error cancels).
    bool per_scheme = false;
};

struct Sweep {
    enum class Kind { tau, h };
    Kind kind = Kind::tau;
    std::vector<double> values;
};

/// Accepted interval for a fitted slope.
struct OrderBand {
    Scheme scheme;
    Norm norm;
    double lo;
    double hi;
};

/// Comparisons between two schemes' series in one study.
struct Gate {
    enum class Kind {
        order_gap,           ///< slope(first) - slope(second) >= threshold
        finest_error_ratio,  ///< err_first(finest) <= threshold * err_second(finest)
        fluctuation,         ///< stddev(per-interval first) >= threshold * stddev(per-interval second)
    };
    Kind kind;
    Scheme first;
    Scheme second;
    Norm norm;
    double threshold;
};

struct StudySpec {
    std::string label;
    Problem problem;
    Sweep sweep;
    ReferenceSpec reference;
    std::vector<Norm> norms{Norm::L2, Norm::H1};
    std::vector<Scheme> schemes{Scheme::ewi_efp};
    int fs_oversample = kDefaultOversample;
    std::vector<OrderBand> bands;
    std::vector<Gate> gates;

    /// Reference dominance, divisibility, non-empty sweep, no duplicate schemes.
    void validate() const;
    PeriodicGrid reference_grid() const;
};

struct ErrorRecord {
    std::string study_label;
    Scheme scheme = Scheme::ewi_efp;
    std::string potential;
    std::string nonlinearity;
    std::string datum;
    Norm norm = Norm::L2;
    double tau = 0.0;
    double h = 0.0;
    double error = 0.0;
    std::optional<double> order_local;
    bool blown_up = false;
    long failed_step = 0;
    double t_final = 0.0;
    double wall_seconds = 0.0;
};

struct OrderFit {
    double slope = 0.0;
    std::vector<double> per_interval;
    std::vector<std::string> warnings;
};

/// Least-squares slope of ln(error) against ln(step) plus the slope of each
/// consecutive pair. Non-finite, non-positive and below-floor errors are
/// dropped with a warning; steps must be strictly decreasing.
OrderFit fit_order(const std::vector<std::pair<double, double>>& points, double floor = kErrorFloor);

/// Zero-pads psi onto the reference grid and measures the difference.
double error_against_reference(const SpectralField& psi, const SpectralField& psi_ref, Norm norm);

/// SchemeConfig for one run of the problem.
SchemeConfig make_config(const Problem& problem, Scheme scheme, double tau, const PeriodicGrid& grid,
                         int fs_oversample);

/// psi_ref(T) on the reference grid, loaded from cache_dir when a valid entry exists.
SpectralField compute_reference(const StudySpec& spec, const std::filesystem::path& cache_dir);

/// The reference spec used for one scheme under test (differs from spec.reference
/// only when per_scheme is set).
StudySpec reference_for(const StudySpec& spec, Scheme scheme);

/// Cache file name for the study's reference (content hash of problem + reference).
std::string reference_key(const StudySpec& spec);

/// L2 distance between the reference and a (tau/2, 2N) rerun.
double reference_self_consistency(const StudySpec& spec, const std::filesystem::path& cache_dir);

struct SeriesSummary {
    Scheme scheme;
    Norm norm;
    std::optional<OrderFit> fit;
    /// "ok", "floor" (all errors below the floor), "insufficient" or "non-monotone".
    std::string status;
    double finest_error = 0.0;
};

struct GateResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct StudyResult {
    StudySpec spec;
    std::vector<ErrorRecord> records;
    std::vector<SeriesSummary> series;
    std::vector<GateResult> gates;

    bool all_passed() const;
    const SeriesSummary* find(Scheme scheme, Norm norm) const;
};

struct RunOptions {
    std::filesystem::path cache_dir = "cache";
    /// 0 = all available cores, capped by the number of sweep points.
    int threads = 0;
};

/// Runs every (scheme, sweep point) pair, measures each norm against the
/// reference, fits orders, evaluates the bands/gates, and writes the CSV to
/// csv_path (skipped when empty). Blow-ups are recorded, not thrown.
StudyResult run_study(const StudySpec& spec, const std::filesystem::path& csv_path, const RunOptions& options = {});

/// Fits, monotonicity flags and gate results for a finished set of records.
StudyResult summarize(const StudySpec& spec, std::vector<ErrorRecord> records);

inline constexpr std::string_view kCsvHeader =
    "study_label,scheme,potential,nonlinearity,datum,norm,tau,h,error,order_local,blown_up,wall_seconds";

std::string to_csv(const std::vector<ErrorRecord>& records);
void write_csv(const std::filesystem::path& path, const std::vector<ErrorRecord>& records);

/// Human-readable order table.
std::string format_summary(const StudyResult& result);

}  // namespace nlse
