#pragma once

#include "zsplit/linalg.hpp"
#include "zsplit/propagators.hpp"

#include <string>
#include <vector>

namespace zsplit {

enum class InitKind { hold_constant, exp_a, lie_trotter, zassenhaus };

/// Rule producing iterate 0 of the waveform iteration on one time step.
struct InitStrategy {
    InitKind kind = InitKind::exp_a;
    int order = 1; ///< Zassenhaus order, only meaningful for InitKind::zassenhaus.

    static InitStrategy hold_constant() { return {InitKind::hold_constant, 1}; }
    static InitStrategy exp_a() { return {InitKind::exp_a, 1}; }
    static InitStrategy lie_trotter() { return {InitKind::lie_trotter, 1}; }
    static InitStrategy zassenhaus(int order) { return {InitKind::zassenhaus, order}; }

    void validate() const;
    std::string name() const;
    /// Parses hold-constant, exp-A, lie-trotter, zassenhaus-k.
    static InitStrategy parse(const std::string& text);

    bool operator==(const InitStrategy&) const = default;
};

/// How iterate 0 is sampled on the substep grid s_k = k h.
///   elapsed: c_init(s_k) = E(s_k) c, the product scheme over the whole elapsed time.
///   stepped: c_init(s_k) = E(h)^k c, the product scheme repeated on each subinterval.
enum class InitSampling { elapsed, stepped };

enum class SweepSide { one_sided_a, alternating };

std::string side_name(SweepSide side);
SweepSide parse_side(const std::string& text);

struct IterativeConfig {
    int iterations = 1;
    InitStrategy init = InitStrategy::exp_a();
    int substeps = 64;
    SweepSide side = SweepSide::one_sided_a;
    InitSampling sampling = InitSampling::elapsed;

    void validate() const;
};

/// Values of one iterate on the uniform grid t0, t0 + h, ..., t0 + n h.
struct Trajectory {
    double t0 = 0.0;
    double h = 0.0;
    std::vector<Vector> nodes;

    double t_final() const { return t0 + h * static_cast<double>(nodes.size() - 1); }
};

/// Piecewise-cubic (four-point Lagrange) interpolant of a trajectory at s.
///
/// Throws DomainError when s lies outside [t0, t_final] or the grid has fewer
/// than four nodes.
Vector dense_output(const Trajectory& trajectory, double s);

/// Precomputed one-step iterative splitting for a fixed problem, step size and configuration.
///
/// Each sweep integrates c_i' = X c_i + Y c_{i-1}(s) over the step with the
/// classical fourth-order Runge-Kutta method on `substeps` subintervals, where
/// (X, Y) = (A, B) for one-sided sweeps and alternates with (B, A) on even
/// sweeps in the alternating variant.
class IterativeStepper {
public:
    IterativeStepper(const SplitProblem& problem, double tau, IterativeConfig config);

    /// c(t^n) -> c_i(t^n + tau).
    Vector step(const Vector& c) const;

    /// Iterate 0 on the substep grid, produced by the configured InitStrategy.
    Trajectory initial_iterate(const Vector& c) const;

    /// Runs `config.iterations` sweeps starting from the supplied iterate 0.
    Trajectory sweeps_from(Trajectory iterate0) const;

    double tau() const noexcept { return tau_; }
    const IterativeConfig& config() const noexcept { return config_; }

private:
    Trajectory sweep(const Trajectory& previous, const Matrix& implicit_op, const Matrix& source_op) const;

    SplitProblem problem_;
    double tau_;
    double h_;
    IterativeConfig config_;
    std::vector<Matrix> init_maps_; ///< init_maps_[k] maps c to iterate 0 at s_k, k = 1..substeps.
};

/// One step of the iterative splitting scheme.
Vector iterative_step(const SplitProblem& p, double tau, const IterativeConfig& cfg, const Vector& c);

/// Iterative splitting initialised with the order-`zass_order` Zassenhaus product.
Vector combined_step(const SplitProblem& p, double tau, int zass_order, int iterations, const Vector& c,
                     int substeps = 64);

} // namespace zsplit
