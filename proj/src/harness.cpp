#include "zsplit/harness.hpp"

#include "zsplit/errors.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

namespace zsplit {

namespace {

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) {
        parts.push_back(item);
    }
    if (!text.empty() && text.back() == sep) {
        parts.emplace_back();
    }
    return parts;
}

int parse_positive_int(const std::string& text, const std::string& context)
{
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty()) {
        throw ConfigError("expected an integer in '" + context + "', got '" + text + "'");
    }
    return value;
}

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

} // namespace

// ---------------------------------------------------------------------------
// Scheme descriptors

std::string SchemeDescriptor::label() const
{
    switch (kind) {
    case SchemeKind::exact:
        return "exact";
    case SchemeKind::lie:
        return "lie";
    case SchemeKind::strang:
        return "strang";
    case SchemeKind::zassenhaus:
        return "zassenhaus-" + std::to_string(zassenhaus_order);
    case SchemeKind::iterative: {
        std::string out = "iterative:" + std::to_string(iterative.iterations) + ":" + iterative.init.name();
        if (iterative.side == SweepSide::alternating) {
            out += ":alternating";
        }
        return out;
    }
    case SchemeKind::combined:
        return "combined:" + std::to_string(zassenhaus_order) + ":" + std::to_string(iterative.iterations);
    }
    return "?";
}

void SchemeDescriptor::validate() const
{
    if (kind == SchemeKind::zassenhaus || kind == SchemeKind::combined) {
        if (zassenhaus_order < 1 || zassenhaus_order > kMaxZassenhausOrder) {
            throw UnsupportedOrderError("Zassenhaus order " + std::to_string(zassenhaus_order) + " outside [1, " +
                                        std::to_string(kMaxZassenhausOrder) + "]");
        }
    }
    if (kind == SchemeKind::iterative || kind == SchemeKind::combined) {
        iterative.validate();
    }
}

SchemeDescriptor SchemeDescriptor::parse(const std::string& raw, int substeps, InitSampling sampling)
{
    const std::string text = trim(raw);
    SchemeDescriptor d;
    d.iterative.substeps = substeps;
    d.iterative.sampling = sampling;

    if (text == "exact") {
        d.kind = SchemeKind::exact;
    } else if (text == "lie") {
        d.kind = SchemeKind::lie;
    } else if (text == "strang") {
        d.kind = SchemeKind::strang;
    } else if (text.rfind("zassenhaus-", 0) == 0) {
        d.kind = SchemeKind::zassenhaus;
        d.zassenhaus_order = parse_positive_int(text.substr(11), text);
    } else if (text.rfind("iterative:", 0) == 0) {
        const auto parts = split(text, ':');
        if (parts.size() < 3 || parts.size() > 4) {
            throw ConfigError("expected iterative:I:INIT[:SIDE], got '" + text + "'");
        }
        d.kind = SchemeKind::iterative;
        d.iterative.iterations = parse_positive_int(parts[1], text);
        d.iterative.init = InitStrategy::parse(parts[2]);
        if (parts.size() == 4) {
            d.iterative.side = parse_side(parts[3]);
        }
    } else if (text.rfind("combined:", 0) == 0) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) {
            throw ConfigError("expected combined:K:I, got '" + text + "'");
        }
        d.kind = SchemeKind::combined;
        d.zassenhaus_order = parse_positive_int(parts[1], text);
        d.iterative.iterations = parse_positive_int(parts[2], text);
        d.iterative.init = InitStrategy::zassenhaus(d.zassenhaus_order);
    } else {
        throw ConfigError("unknown scheme '" + text + "'");
    }
    d.validate();
    return d;
}

std::vector<SchemeDescriptor> parse_scheme_list(const std::string& text, int substeps, InitSampling sampling)
{
    std::vector<SchemeDescriptor> out;
    for (const auto& item : split(text, ',')) {
        if (trim(item).empty()) {
            continue;
        }
        out.push_back(SchemeDescriptor::parse(item, substeps, sampling));
    }
    return out;
}

StepFunction make_stepper(const SplitProblem& problem, const SchemeDescriptor& scheme, double tau)
{
    scheme.validate();
    auto with_matrix = [](Matrix m) -> StepFunction {
        return [m = std::move(m)](const Vector& c) { return m * c; };
    };
    switch (scheme.kind) {
    case SchemeKind::exact:
        return with_matrix(exact_propagator(problem, tau));
    case SchemeKind::lie:
        return with_matrix(lie_trotter_propagator(problem, tau));
    case SchemeKind::strang:
        return with_matrix(strang_propagator(problem, tau));
    case SchemeKind::zassenhaus:
        return with_matrix(zassenhaus_propagator(problem, tau, scheme.zassenhaus_order));
    case SchemeKind::iterative:
    case SchemeKind::combined: {
        auto stepper = std::make_shared<const IterativeStepper>(problem, tau, scheme.iterative);
        return [stepper](const Vector& c) { return stepper->step(c); };
    }
    }
    throw ConfigError("unknown scheme kind");
}

long step_count(double t_end, double tau)
{
    if (!(tau > 0.0) || !(t_end > 0.0)) {
        throw DomainError("step size and horizon must be positive");
    }
    const double ratio = t_end / tau;
    const long steps = std::lround(ratio);
    if (steps < 1 || std::abs(static_cast<double>(steps) * tau - t_end) > 1e-12) {
        std::ostringstream os;
        os << "tau = " << format_number(tau) << " does not divide t_end = " << format_number(t_end);
        throw DomainError(os.str());
    }
    return steps;
}

Vector march(const SplitProblem& problem, const SchemeDescriptor& scheme, double tau, long steps)
{
    const StepFunction step = make_stepper(problem, scheme, tau);
    Vector c = problem.c0();
    for (long n = 0; n < steps; ++n) {
        c = step(c);
    }
    return c;
}

// ---------------------------------------------------------------------------
// Order fits

double fit_floor(double solution_scale)
{
    return 100.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, solution_scale);
}

double estimate_order(const std::vector<std::pair<double, double>>& pairs)
{
    if (pairs.size() < 3) {
        throw DomainError("estimate_order: need at least three (tau, error) pairs");
    }
    double sx = 0.0;
    double sy = 0.0;
    for (const auto& [tau, err] : pairs) {
        if (!(tau > 0.0) || !(err > 0.0)) {
            throw DomainError("estimate_order: step sizes and errors must be positive");
        }
        sx += std::log(tau);
        sy += std::log(err);
    }
    const double n = static_cast<double>(pairs.size());
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& [tau, err] : pairs) {
        const double dx = std::log(tau) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(err) - my);
    }
    if (sxx == 0.0) {
        throw DomainError("estimate_order: step sizes must not all coincide");
    }
    return sxy / sxx;
}

const OrderEntry* ConvergenceReport::order_for(const std::string& scheme) const
{
    for (const auto& entry : orders) {
        if (entry.scheme == scheme) {
            return &entry;
        }
    }
    return nullptr;
}

std::vector<ConvergenceRow> ConvergenceReport::rows_for(const std::string& scheme) const
{
    std::vector<ConvergenceRow> out;
    std::copy_if(rows.begin(), rows.end(), std::back_inserter(out),
                 [&](const ConvergenceRow& r) { return r.scheme == scheme; });
    return out;
}

// ---------------------------------------------------------------------------
// Sweeps

namespace {

struct Cell {
    std::size_t scheme;
    double tau;
    long steps;
};

ConvergenceRow run_cell(const SplitProblem& problem, const SchemeDescriptor& scheme, const Cell& cell,
                        const Vector& reference, const RunOptions& options)
{
    using clock = std::chrono::steady_clock;
    Vector result;
    double best = std::numeric_limits<double>::infinity();
    double total = 0.0;
    int repeats = 0;
    do {
        const auto start = clock::now();
        result = march(problem, scheme, cell.tau, cell.steps);
        const double elapsed = std::chrono::duration<double>(clock::now() - start).count();
        best = std::min(best, elapsed);
        total += elapsed;
        ++repeats;
    } while (options.timing && (repeats < options.min_repeats || total < options.min_timing_seconds));

    const Vector err = result - reference;
    ConvergenceRow row;
    row.scheme = scheme.label();
    row.tau = cell.tau;
    row.error_max = norm(err, NormKind::max);
    row.error_l2 = options.l2_dx ? norm(err, NormKind::discrete_l2, *options.l2_dx) : norm(err, NormKind::l2);
    row.wall_seconds = best;
    return row;
}

} // namespace

ConvergenceReport run_convergence(const SplitProblem& problem, const std::vector<SchemeDescriptor>& schemes,
                                  const std::vector<double>& taus, double t_end, const RunOptions& options)
{
    std::vector<Cell> cells;
    for (std::size_t s = 0; s < schemes.size(); ++s) {
        schemes[s].validate();
        for (double tau : taus) {
            cells.push_back({s, tau, step_count(t_end, tau)});
        }
    }

    const Vector reference = matrix_exp(problem.a() + problem.b(), t_end) * problem.c0();
    std::vector<ConvergenceRow> rows(cells.size());

    const int workers = options.timing ? 1 : std::max(1, options.jobs);
    if (workers == 1) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            rows[i] = run_cell(problem, schemes[cells[i].scheme], cells[i], reference, options);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> failures(static_cast<std::size_t>(workers));
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = next++; i < cells.size(); i = next++) {
                        rows[i] = run_cell(problem, schemes[cells[i].scheme], cells[i], reference, options);
                    }
                } catch (...) {
                    failures[static_cast<std::size_t>(w)] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) {
            t.join();
        }
        for (const auto& f : failures) {
            if (f) {
                std::rethrow_exception(f);
            }
        }
    }

    std::stable_sort(rows.begin(), rows.end(), [](const ConvergenceRow& a, const ConvergenceRow& b) {
        if (a.scheme != b.scheme) {
            return a.scheme < b.scheme;
        }
        return a.tau > b.tau;
    });

    ConvergenceReport report;
    report.rows = std::move(rows);

    const double floor = fit_floor(norm(reference, NormKind::max));
    for (const auto& row : report.rows) {
        if (!report.orders.empty() && report.orders.back().scheme == row.scheme) {
            continue;
        }
        std::vector<std::pair<double, double>> pairs;
        for (const auto& r : report.rows) {
            if (r.scheme == row.scheme && r.error_max > floor) {
                pairs.emplace_back(r.tau, r.error_max);
            }
        }
        OrderEntry entry{row.scheme, std::nullopt};
        if (pairs.size() >= 3) {
            entry.fitted_order = estimate_order(pairs);
        }
        report.orders.push_back(std::move(entry));
    }
    return report;
}

} // namespace zsplit
