#pragma once

#include "zsplit/linalg.hpp"
#include "zsplit/propagators.hpp"

#include <vector>

namespace zsplit {

/// Semidiscrete linear system c' = (A1 + A2) c with its initial state.
struct ModelSystem {
    Matrix a1;
    Matrix a2;
    Vector c0;

    SplitProblem to_problem(double t_end) const { return SplitProblem(a1, a2, c0, t_end); }
};

/// Which physical processes go into the first operator.
enum class OperatorAssignment {
    diffusion_vs_rest,      ///< A1 = diffusion, A2 = convection + reaction
    transport_vs_reaction,  ///< A1 = diffusion + convection, A2 = reaction (+ exchange)
};

/// 1D two-species transport with a linear decay chain c1 -> c2.
///
/// Unit domain [0, cells*dx] with zero Dirichlet inflow. Diffusion is the
/// central three-point stencil and convection first-order upwind.
struct OnePhaseSpec {
    int cells = 10;
    double dx = 0.1;
    double v = 0.1;        ///< m/s
    double D = 0.01;       ///< m^2/s
    double lambda1 = 0.1;  ///< 1/s
    double lambda2 = 0.1;  ///< 1/s
    double t_end = 1.0;    ///< s
    /// Per-cell initial values. Empty selects the default profile: a unit pulse
    /// on the first 20% of cells for c1 and zero for c2.
    std::vector<double> c1_init;
    std::vector<double> c2_init;
    OperatorAssignment assignment = OperatorAssignment::diffusion_vs_rest;
};

/// Mobile/immobile decay-chain transport with m species.
///
/// State ordering is species-major: [u_1 | u_2 | ... | u_m | g_1 | ... | g_m],
/// each block holding the cells left to right. Equations are divided by the
/// retardation factor R_i of their species.
struct MultiphaseSpec {
    int species = 1;
    int cells = 10;
    double dx = 0.1;
    double v = 0.1;
    double D = 0.01;
    std::vector<double> lambdas = {0.0, 0.1};   ///< lambda_0 .. lambda_m, lambda_0 = 0
    std::vector<double> retardation = {1.0};    ///< R_1 .. R_m
    double beta = 0.0;
    std::vector<double> u_init; ///< species*cells values; empty selects the default pulse on u_1
    std::vector<double> g_init; ///< species*cells values; empty selects zero
    OperatorAssignment assignment = OperatorAssignment::transport_vs_reaction;
};

/// c' = [[1,2],[3,0]] c split as [[1,1],[1,0]] + [[0,1],[2,0]], c(0) = (0,1), t_end = 1.
SplitProblem matrix_demo();

/// Closed-form solution of the matrix demo (both components).
Vector matrix_demo_exact(double t);

/// (D/dx^2) * tridiag(1, -2, 1) of size cells.
Matrix diffusion_matrix(int cells, double D, double dx);

/// First-order upwind convection with zero inflow: -(v/dx) * bidiag(-1, 1) for v >= 0
/// (mirrored for v < 0).
Matrix convection_matrix(int cells, double v, double dx);

/// Default initial profile: 1 on the first max(1, round(0.2*cells)) cells, 0 elsewhere.
std::vector<double> default_pulse(int cells);

ModelSystem build_one_phase(const OnePhaseSpec& spec);
ModelSystem build_multiphase(const MultiphaseSpec& spec);

/// exp((A1 + A2) t) c0.
Vector reference_solution(const Matrix& a1, const Matrix& a2, const Vector& c0, double t);

} // namespace zsplit
