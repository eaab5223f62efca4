#include "zsplit/models.hpp"

#include "zsplit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace zsplit {

namespace {

void require(bool condition, const std::string& message)
{
    if (!condition) {
        throw SpecError(message);
    }
}

void check_grid(int cells, double dx, double D)
{
    require(cells > 0, "number of cells must be positive");
    require(dx > 0.0 && std::isfinite(dx), "dx must be positive");
    require(D >= 0.0 && std::isfinite(D), "diffusion coefficient must be nonnegative");
}

void add_block(Matrix& target, const Matrix& block, std::size_t row0, std::size_t col0, double scale = 1.0)
{
    for (std::size_t r = 0; r < block.rows(); ++r) {
        for (std::size_t c = 0; c < block.cols(); ++c) {
            target(row0 + r, col0 + c) += scale * block(r, c);
        }
    }
}

void add_diagonal(Matrix& target, std::size_t row0, std::size_t col0, std::size_t n, double value)
{
    for (std::size_t i = 0; i < n; ++i) {
        target(row0 + i, col0 + i) += value;
    }
}

} // namespace

SplitProblem matrix_demo()
{
    return SplitProblem(Matrix{{1.0, 1.0}, {1.0, 0.0}}, Matrix{{0.0, 1.0}, {2.0, 0.0}}, Vector{0.0, 1.0}, 1.0);
}

Vector matrix_demo_exact(double t)
{
    // Eigenpairs of [[1,2],[3,0]]: 3 -> (1,1), -2 -> (2,-3); c0 = (2/5)(1,1) - (1/5)(2,-3).
    const double grow = std::exp(3.0 * t);
    const double decay = std::exp(-2.0 * t);
    return Vector{0.4 * (grow - decay), 0.4 * grow + 0.6 * decay};
}

Matrix diffusion_matrix(int cells, double D, double dx)
{
    check_grid(cells, dx, D);
    const auto n = static_cast<std::size_t>(cells);
    const double k = D / (dx * dx);
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = -2.0 * k;
        if (i > 0) {
            m(i, i - 1) = k;
        }
        if (i + 1 < n) {
            m(i, i + 1) = k;
        }
    }
    return m;
}

Matrix convection_matrix(int cells, double v, double dx)
{
    check_grid(cells, dx, 0.0);
    require(std::isfinite(v), "velocity must be finite");
    const auto n = static_cast<std::size_t>(cells);
    const double k = std::abs(v) / dx;
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = -k;
        if (v >= 0.0 && i > 0) {
            m(i, i - 1) = k;
        } else if (v < 0.0 && i + 1 < n) {
            m(i, i + 1) = k;
        }
    }
    return m;
}

std::vector<double> default_pulse(int cells)
{
    require(cells > 0, "number of cells must be positive");
    const auto width = std::max<long>(1, std::lround(0.2 * cells));
    std::vector<double> profile(static_cast<std::size_t>(cells), 0.0);
    for (long i = 0; i < width; ++i) {
        profile[static_cast<std::size_t>(i)] = 1.0;
    }
    return profile;
}

ModelSystem build_one_phase(const OnePhaseSpec& spec)
{
    check_grid(spec.cells, spec.dx, spec.D);
    require(spec.lambda1 >= 0.0 && spec.lambda2 >= 0.0, "decay rates must be nonnegative");
    require(spec.t_end > 0.0, "t_end must be positive");

    const auto n = static_cast<std::size_t>(spec.cells);
    std::vector<double> c1 = spec.c1_init.empty() ? default_pulse(spec.cells) : spec.c1_init;
    std::vector<double> c2 = spec.c2_init.empty() ? std::vector<double>(n, 0.0) : spec.c2_init;
    require(c1.size() == n && c2.size() == n, "initial profiles must have one value per cell");

    const Matrix diff = diffusion_matrix(spec.cells, spec.D, spec.dx);
    const Matrix conv = convection_matrix(spec.cells, spec.v, spec.dx);

    Matrix reaction(2 * n, 2 * n);
    add_diagonal(reaction, 0, 0, n, -spec.lambda1);
    add_diagonal(reaction, n, 0, n, spec.lambda1);
    add_diagonal(reaction, n, n, n, -spec.lambda2);

    ModelSystem system;
    if (spec.assignment == OperatorAssignment::diffusion_vs_rest) {
        system.a1 = block_diagonal({&diff, &diff});
        system.a2 = block_diagonal({&conv, &conv}) + reaction;
    } else {
        const Matrix transport = diff + conv;
        system.a1 = block_diagonal({&transport, &transport});
        system.a2 = reaction;
    }

    std::vector<double> stacked = c1;
    stacked.insert(stacked.end(), c2.begin(), c2.end());
    system.c0 = Vector(std::move(stacked));
    return system;
}

ModelSystem build_multiphase(const MultiphaseSpec& spec)
{
    check_grid(spec.cells, spec.dx, spec.D);
    require(spec.species > 0, "number of species must be positive");
    require(std::isfinite(spec.v), "velocity must be finite");
    require(spec.beta >= 0.0 && std::isfinite(spec.beta), "exchange rate beta must be nonnegative");

    const auto m = static_cast<std::size_t>(spec.species);
    const auto n = static_cast<std::size_t>(spec.cells);
    require(spec.lambdas.size() == m + 1, "lambda list must hold lambda_0..lambda_m");
    require(spec.lambdas[0] == 0.0, "lambda_0 must be zero");
    for (double l : spec.lambdas) {
        require(l >= 0.0 && std::isfinite(l), "decay rates must be nonnegative");
    }
    require(spec.retardation.size() == m, "retardation list must hold R_1..R_m");
    for (double r : spec.retardation) {
        require(r >= 0.0 && std::isfinite(r), "retardation factors must be nonnegative");
    }

    const bool transport = spec.v != 0.0 || spec.D != 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (spec.retardation[i] > 0.0) {
            continue;
        }
        const bool inflow = i > 0 && spec.lambdas[i] * spec.retardation[i - 1] != 0.0;
        if (transport || spec.beta != 0.0 || inflow) {
            throw SpecError("singular scaling: R_" + std::to_string(i + 1) +
                            " = 0 with nonzero transport, exchange or decay inflow");
        }
    }

    const std::size_t dim = 2 * m * n;
    std::vector<double> u = spec.u_init;
    if (u.empty()) {
        u.assign(m * n, 0.0);
        const auto pulse = default_pulse(spec.cells);
        std::copy(pulse.begin(), pulse.end(), u.begin());
    }
    std::vector<double> g = spec.g_init.empty() ? std::vector<double>(m * n, 0.0) : spec.g_init;
    require(u.size() == m * n && g.size() == m * n, "initial profiles must hold species*cells values");

    const Matrix diff = diffusion_matrix(spec.cells, spec.D, spec.dx);
    const Matrix conv = convection_matrix(spec.cells, spec.v, spec.dx);

    Matrix diffusion_op(dim, dim);
    Matrix convection_op(dim, dim);
    Matrix reaction_op(dim, dim);

    for (std::size_t i = 0; i < m; ++i) {
        const double r = spec.retardation[i];
        if (r == 0.0) {
            continue;
        }
        const double lambda = spec.lambdas[i + 1];
        const std::size_t mobile = i * n;
        const std::size_t immobile = (m + i) * n;

        // Mobile transport only; immobile rows never receive stencil entries.
        add_block(diffusion_op, diff, mobile, mobile, 1.0 / r);
        add_block(convection_op, conv, mobile, mobile, 1.0 / r);

        for (const std::size_t block : {mobile, immobile}) {
            add_diagonal(reaction_op, block, block, n, -lambda);
            if (i > 0) {
                const double inflow = spec.lambdas[i] * spec.retardation[i - 1] / r;
                add_diagonal(reaction_op, block, block - n, n, inflow);
            }
        }
        add_diagonal(reaction_op, mobile, mobile, n, -spec.beta / r);
        add_diagonal(reaction_op, mobile, immobile, n, spec.beta / r);
        add_diagonal(reaction_op, immobile, immobile, n, -spec.beta / r);
        add_diagonal(reaction_op, immobile, mobile, n, spec.beta / r);
    }

    ModelSystem system;
    if (spec.assignment == OperatorAssignment::transport_vs_reaction) {
        system.a1 = diffusion_op + convection_op;
        system.a2 = reaction_op;
    } else {
        system.a1 = diffusion_op;
        system.a2 = convection_op + reaction_op;
    }

    std::vector<double> stacked = u;
    stacked.insert(stacked.end(), g.begin(), g.end());
    system.c0 = Vector(std::move(stacked));
    return system;
}

Vector reference_solution(const Matrix& a1, const Matrix& a2, const Vector& c0, double t)
{
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw DomainError("reference_solution: t must be nonnegative");
    }
    if (t == 0.0) {
        return c0;
    }
    return matrix_exp(a1 + a2, t) * c0;
}

} // namespace zsplit
