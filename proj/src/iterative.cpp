#include "zsplit/iterative.hpp"

#include "zsplit/errors.hpp"

#include <algorithm>
#include <cmath>

namespace zsplit {

namespace {

constexpr int kMinSubsteps = 4;

Matrix product_scheme_map(const SplitProblem& p, const InitStrategy& init, double s)
{
    switch (init.kind) {
    case InitKind::hold_constant:
        return Matrix::identity(p.dim());
    case InitKind::exp_a:
        return matrix_exp(p.a(), s);
    case InitKind::lie_trotter:
        return lie_trotter_propagator(p, s);
    case InitKind::zassenhaus:
        return zassenhaus_propagator(p, s, init.order);
    }
    throw DomainError("unknown initialization strategy");
}

} // namespace

void InitStrategy::validate() const
{
    if (kind == InitKind::zassenhaus && (order < 1 || order > kMaxZassenhausOrder)) {
        throw UnsupportedOrderError("zassenhaus initialization order " + std::to_string(order) + " outside [1, " +
                                    std::to_string(kMaxZassenhausOrder) + "]");
    }
}

std::string InitStrategy::name() const
{
    switch (kind) {
    case InitKind::hold_constant:
        return "hold-constant";
    case InitKind::exp_a:
        return "exp-A";
    case InitKind::lie_trotter:
        return "lie-trotter";
    case InitKind::zassenhaus:
        return "zassenhaus-" + std::to_string(order);
    }
    return "?";
}

InitStrategy InitStrategy::parse(const std::string& text)
{
    if (text == "hold-constant") {
        return hold_constant();
    }
    if (text == "exp-A") {
        return exp_a();
    }
    if (text == "lie-trotter" || text == "lie") {
        return lie_trotter();
    }
    const std::string prefix = "zassenhaus-";
    if (text.rfind(prefix, 0) == 0 && text.size() == prefix.size() + 1) {
        const char digit = text.back();
        if (digit >= '0' && digit <= '9') {
            InitStrategy s = zassenhaus(digit - '0');
            s.validate();
            return s;
        }
    }
    throw ConfigError("unknown initialization strategy '" + text + "'");
}

std::string side_name(SweepSide side)
{
    return side == SweepSide::one_sided_a ? "one-sided-A" : "alternating";
}

SweepSide parse_side(const std::string& text)
{
    if (text == "one-sided-A") {
        return SweepSide::one_sided_a;
    }
    if (text == "alternating") {
        return SweepSide::alternating;
    }
    throw ConfigError("unknown sweep side '" + text + "'");
}

void IterativeConfig::validate() const
{
    if (iterations < 1) {
        throw DomainError("iterative splitting needs at least one iteration");
    }
    if (substeps < kMinSubsteps) {
        throw DomainError("iterative splitting needs at least " + std::to_string(kMinSubsteps) + " substeps");
    }
    init.validate();
}

Vector dense_output(const Trajectory& trajectory, double s)
{
    const std::size_t count = trajectory.nodes.size();
    if (count < 4) {
        throw DomainError("dense_output: need at least four nodes");
    }
    const double t_final = trajectory.t_final();
    const double slack = 1e-12 * std::max(1.0, std::abs(t_final));
    if (!(s >= trajectory.t0 - slack && s <= t_final + slack)) {
        throw DomainError("dense_output: query point outside the trajectory interval");
    }

    const double x = (s - trajectory.t0) / trajectory.h;
    // Four-node stencil [first, first + 3] around the containing interval, clamped at the ends.
    long interval = static_cast<long>(std::floor(x));
    interval = std::clamp(interval, 0L, static_cast<long>(count) - 2);
    const long first = std::clamp(interval - 1, 0L, static_cast<long>(count) - 4);

    double weights[4];
    for (int i = 0; i < 4; ++i) {
        double w = 1.0;
        for (int j = 0; j < 4; ++j) {
            if (j != i) {
                w *= (x - static_cast<double>(first + j)) / static_cast<double>(i - j);
            }
        }
        weights[i] = w;
    }

    Vector out(trajectory.nodes.front().dim());
    for (int i = 0; i < 4; ++i) {
        const auto& node = trajectory.nodes[static_cast<std::size_t>(first + i)];
        if (x == static_cast<double>(first + i)) {
            return node;
        }
        out.axpy(weights[i], node);
    }
    return out;
}

IterativeStepper::IterativeStepper(const SplitProblem& problem, double tau, IterativeConfig config)
    : problem_(problem), tau_(tau), config_(config)
{
    config_.validate();
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw DomainError("iterative splitting: step size must be positive");
    }
    h_ = tau_ / config_.substeps;

    if (config_.init.kind == InitKind::hold_constant) {
        return;
    }
    if (config_.sampling == InitSampling::stepped) {
        init_maps_.push_back(product_scheme_map(problem_, config_.init, h_));
        return;
    }
    init_maps_.reserve(static_cast<std::size_t>(config_.substeps));
    switch (config_.init.kind) {
    case InitKind::exp_a: {
        // exp(A s_k) = exp(A h)^k.
        const Matrix ea = matrix_exp(problem_.a(), h_);
        Matrix power = ea;
        for (int k = 1; k <= config_.substeps; ++k) {
            init_maps_.push_back(power);
            power = power * ea;
        }
        break;
    }
    case InitKind::lie_trotter: {
        const Matrix ea = matrix_exp(problem_.a(), h_);
        const Matrix eb = matrix_exp(problem_.b(), h_);
        Matrix pa = ea;
        Matrix pb = eb;
        for (int k = 1; k <= config_.substeps; ++k) {
            init_maps_.push_back(pa * pb);
            pa = pa * ea;
            pb = pb * eb;
        }
        break;
    }
    default:
        for (int k = 1; k <= config_.substeps; ++k) {
            init_maps_.push_back(product_scheme_map(problem_, config_.init, h_ * k));
        }
        break;
    }
}

Trajectory IterativeStepper::initial_iterate(const Vector& c) const
{
    if (c.dim() != problem_.dim()) {
        throw ShapeError("iterative splitting: state dimension does not match the problem");
    }
    Trajectory traj;
    traj.t0 = 0.0;
    traj.h = h_;
    traj.nodes.reserve(static_cast<std::size_t>(config_.substeps) + 1);
    traj.nodes.push_back(c);

    if (config_.init.kind == InitKind::hold_constant) {
        for (int k = 1; k <= config_.substeps; ++k) {
            traj.nodes.push_back(c);
        }
    } else if (config_.sampling == InitSampling::stepped) {
        for (int k = 1; k <= config_.substeps; ++k) {
            traj.nodes.push_back(init_maps_.front() * traj.nodes.back());
        }
    } else {
        for (const Matrix& map : init_maps_) {
            traj.nodes.push_back(map * c);
        }
    }
    return traj;
}

Trajectory IterativeStepper::sweep(const Trajectory& previous, const Matrix& implicit_op,
                                   const Matrix& source_op) const
{
    const std::size_t n = static_cast<std::size_t>(config_.substeps);
    if (previous.nodes.size() != n + 1) {
        throw ShapeError("iterative splitting: previous iterate has the wrong number of nodes");
    }
    const std::size_t dim = problem_.dim();
    const double h = previous.h;

    // Source term Y c_{i-1} at the nodes; midpoints come from its cubic interpolant.
    Trajectory source;
    source.t0 = previous.t0;
    source.h = h;
    source.nodes.reserve(n + 1);
    for (const Vector& node : previous.nodes) {
        source.nodes.push_back(source_op * node);
    }

    Trajectory next;
    next.t0 = previous.t0;
    next.h = h;
    next.nodes.reserve(n + 1);
    next.nodes.push_back(previous.nodes.front());

    Vector k1(dim), k2(dim), k3(dim), k4(dim), stage(dim);
    for (std::size_t k = 0; k < n; ++k) {
        const Vector& y = next.nodes.back();
        const double s = previous.t0 + h * static_cast<double>(k);
        const Vector mid_source = dense_output(source, s + 0.5 * h);

        multiply_into(implicit_op, y, k1);
        k1 += source.nodes[k];

        stage = y;
        stage.axpy(0.5 * h, k1);
        multiply_into(implicit_op, stage, k2);
        k2 += mid_source;

        stage = y;
        stage.axpy(0.5 * h, k2);
        multiply_into(implicit_op, stage, k3);
        k3 += mid_source;

        stage = y;
        stage.axpy(h, k3);
        multiply_into(implicit_op, stage, k4);
        k4 += source.nodes[k + 1];

        Vector out = y;
        out.axpy(h / 6.0, k1);
        out.axpy(h / 3.0, k2);
        out.axpy(h / 3.0, k3);
        out.axpy(h / 6.0, k4);
        next.nodes.push_back(std::move(out));
    }
    return next;
}

Trajectory IterativeStepper::sweeps_from(Trajectory iterate0) const
{
    Trajectory current = std::move(iterate0);
    for (int i = 1; i <= config_.iterations; ++i) {
        const bool a_side = config_.side == SweepSide::one_sided_a || i % 2 == 1;
        current = a_side ? sweep(current, problem_.a(), problem_.b()) : sweep(current, problem_.b(), problem_.a());
    }
    return current;
}

Vector IterativeStepper::step(const Vector& c) const
{
    return sweeps_from(initial_iterate(c)).nodes.back();
}

Vector iterative_step(const SplitProblem& p, double tau, const IterativeConfig& cfg, const Vector& c)
{
    return IterativeStepper(p, tau, cfg).step(c);
}

Vector combined_step(const SplitProblem& p, double tau, int zass_order, int iterations, const Vector& c,
                     int substeps)
{
    IterativeConfig cfg;
    cfg.iterations = iterations;
    cfg.init = InitStrategy::zassenhaus(zass_order);
    cfg.substeps = substeps;
    return iterative_step(p, tau, cfg, c);
}

} // namespace zsplit
