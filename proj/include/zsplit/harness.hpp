#pragma once

#include "zsplit/iterative.hpp"
#include "zsplit/linalg.hpp"
#include "zsplit/models.hpp"
#include "zsplit/propagators.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace zsplit {

enum class SchemeKind { exact, lie, strang, zassenhaus, iterative, combined };

/// A scheme under test and its parameters.
///
/// Text form (used in config files and as the report label):
///   exact | lie | strang | zassenhaus-K | iterative:I:INIT[:SIDE] | combined:K:I
struct SchemeDescriptor {
    SchemeKind kind = SchemeKind::exact;
    int zassenhaus_order = 1;  ///< zassenhaus-K and combined:K:I
    IterativeConfig iterative; ///< iterative and combined

    std::string label() const;
    void validate() const;

    static SchemeDescriptor parse(const std::string& text, int substeps = 64,
                                  InitSampling sampling = InitSampling::elapsed);
};

/// Parses a comma-separated scheme list.
std::vector<SchemeDescriptor> parse_scheme_list(const std::string& text, int substeps = 64,
                                                InitSampling sampling = InitSampling::elapsed);

/// One time step of a scheme with everything that depends only on tau precomputed.
using StepFunction = std::function<Vector(const Vector&)>;
StepFunction make_stepper(const SplitProblem& problem, const SchemeDescriptor& scheme, double tau);

/// Number of uniform steps of size tau covering t_end; throws DomainError when
/// tau does not divide t_end to within 1e-12.
long step_count(double t_end, double tau);

/// Marches `steps` uniform steps of size tau from c0.
Vector march(const SplitProblem& problem, const SchemeDescriptor& scheme, double tau, long steps);

struct ConvergenceRow {
    std::string scheme;
    double tau = 0.0;
    double error_max = 0.0;
    double error_l2 = 0.0;
    double wall_seconds = 0.0;
};

struct OrderEntry {
    std::string scheme;
    std::optional<double> fitted_order; ///< absent when fewer than three rows clear the floor
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows; ///< sorted by scheme label, then descending tau
    std::vector<OrderEntry> orders;   ///< one entry per scheme, same order as rows

    const OrderEntry* order_for(const std::string& scheme) const;
    std::vector<ConvergenceRow> rows_for(const std::string& scheme) const;
};

struct RunOptions {
    bool timing = false;           ///< repeat each cell and report the minimum wall time; forces sequential execution
    int jobs = 1;                  ///< worker threads for independent cells when not timing
    double min_timing_seconds = 0.05;
    int min_repeats = 3;
    std::optional<double> l2_dx;   ///< when set, error_l2 is the grid norm sqrt(dx * sum e_i^2)
};

/// Errors at or below this value never enter order fits.
double fit_floor(double solution_scale);

/// Least-squares slope of log(error) against log(tau).
///
/// Throws DomainError for fewer than three pairs or any nonpositive error or tau.
double estimate_order(const std::vector<std::pair<double, double>>& pairs);

/// Sweeps every scheme over every tau, marching from 0 to t_end and comparing
/// against exp((A+B) t_end) c0.
ConvergenceReport run_convergence(const SplitProblem& problem, const std::vector<SchemeDescriptor>& schemes,
                                  const std::vector<double>& taus, double t_end, const RunOptions& options = {});

/// Writes convergence.csv, orders.csv and (for a non-empty report) plot.gp.
void emit_report(const ConvergenceReport& report, const std::filesystem::path& out_dir);

/// Parses the files written by emit_report.
ConvergenceReport read_report(const std::filesystem::path& out_dir);

/// Formats a double with 17 significant digits.
std::string format_number(double value);

// ---------------------------------------------------------------------------
// Configuration

/// Flat key=value configuration. '#' starts a comment; blank lines are ignored.
class Config {
public:
    static Config parse(const std::string& text);
    static Config load(const std::filesystem::path& path);

    /// Keys accepted in files and as --key flags.
    static const std::vector<std::string>& known_keys();

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const { return values_.count(key) != 0; }
    std::string get(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::vector<double> get_list(const std::string& key, const std::vector<double>& fallback) const;

    const std::map<std::string, std::string>& values() const noexcept { return values_; }

private:
    std::map<std::string, std::string> values_;
};

/// Problem, scheme list and sweep assembled from a configuration.
struct Experiment {
    std::string problem_name;
    SplitProblem problem;
    std::vector<SchemeDescriptor> schemes;
    std::vector<double> taus;
    double t_end;
    RunOptions options;
    std::filesystem::path out_dir;
};

/// Default sweep 0.1 * 2^-k, k = 0..6.
std::vector<double> default_tau_list();

Experiment make_experiment(const Config& config);

/// Assembles the split system named by `problem` (matrix-demo, one-phase, multiphase).
ModelSystem make_model(const Config& config);

/// Writes A1.csv, A2.csv and c0.csv.
void dump_model(const ModelSystem& system, const std::filesystem::path& out_dir);

} // namespace zsplit
