#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "zsplit/errors.hpp"
#include "zsplit/iterative.hpp"
#include "zsplit/models.hpp"

#include <cmath>

using namespace zsplit;
using Catch::Approx;

namespace {

Vector march_iterative(const SplitProblem& p, double tau, const IterativeConfig& cfg)
{
    const IterativeStepper stepper(p, tau, cfg);
    const long steps = std::lround(p.t_end() / tau);
    Vector c = p.c0();
    for (long n = 0; n < steps; ++n) {
        c = stepper.step(c);
    }
    return c;
}

double global_error(const SplitProblem& p, double tau, const IterativeConfig& cfg)
{
    const Vector exact = oracle::rk4_linear(p.a() + p.b(), p.c0(), p.t_end(), 20000);
    return oracle::max_diff(march_iterative(p, tau, cfg), exact);
}

std::vector<double> sweep_taus(int first, int last)
{
    std::vector<double> taus;
    for (int k = first; k <= last; ++k) {
        taus.push_back(std::ldexp(0.1, -k));
    }
    return taus;
}

double global_order(const SplitProblem& p, const IterativeConfig& cfg, int first = 0, int last = 6,
                    std::vector<double>* errors = nullptr)
{
    const Vector exact = matrix_exp(p.a() + p.b(), p.t_end()) * p.c0();
    const auto taus = sweep_taus(first, last);
    std::vector<double> errs;
    for (double tau : taus) {
        errs.push_back(oracle::max_diff(march_iterative(p, tau, cfg), exact));
    }
    if (errors) {
        *errors = errs;
    }
    return oracle::loglog_slope(taus, errs);
}

IterativeConfig config(int iterations, InitStrategy init, SweepSide side = SweepSide::one_sided_a)
{
    IterativeConfig cfg;
    cfg.iterations = iterations;
    cfg.init = init;
    cfg.side = side;
    return cfg;
}

SplitProblem random_pair(std::mt19937_64& rng)
{
    return SplitProblem(oracle::with_norm(oracle::random_matrix(rng, 3), 1.0),
                        oracle::with_norm(oracle::random_matrix(rng, 3), 1.0), oracle::random_vector(rng, 3), 1.0);
}

} // namespace

TEST_CASE("configuration validation", "[iterative]")
{
    CHECK_THROWS_AS(config(0, InitStrategy::exp_a()).validate(), DomainError);
    IterativeConfig few = config(1, InitStrategy::exp_a());
    few.substeps = 3;
    CHECK_THROWS_AS(few.validate(), DomainError);
    CHECK_THROWS_AS(config(1, InitStrategy::zassenhaus(5)).validate(), UnsupportedOrderError);
    CHECK_THROWS_AS(config(1, InitStrategy::zassenhaus(0)).validate(), UnsupportedOrderError);
    CHECK_NOTHROW(config(2, InitStrategy::zassenhaus(4)).validate());

    CHECK(InitStrategy::parse("hold-constant") == InitStrategy::hold_constant());
    CHECK(InitStrategy::parse("exp-A") == InitStrategy::exp_a());
    CHECK(InitStrategy::parse("lie-trotter") == InitStrategy::lie_trotter());
    CHECK(InitStrategy::parse("zassenhaus-3") == InitStrategy::zassenhaus(3));
    CHECK(InitStrategy::zassenhaus(2).name() == "zassenhaus-2");
    CHECK_THROWS_AS(InitStrategy::parse("exp-B"), ConfigError);
    CHECK_THROWS_AS(InitStrategy::parse("zassenhaus-7"), UnsupportedOrderError);
    CHECK(parse_side("alternating") == SweepSide::alternating);
    CHECK_THROWS_AS(parse_side("left"), ConfigError);
}

TEST_CASE("dense_output", "[iterative][dense]")
{
    auto sample = [](auto f, double t0, double t1, int nodes) {
        Trajectory tr;
        tr.t0 = t0;
        tr.h = (t1 - t0) / (nodes - 1);
        for (int i = 0; i < nodes; ++i) {
            const double s = t0 + tr.h * i;
            tr.nodes.push_back(Vector{f(s), 2.0 * f(s)});
        }
        return tr;
    };

    SECTION("reproduces stored nodes")
    {
        const auto tr = sample([](double s) { return std::sin(7.0 * s); }, 0.0, 1.0, 9);
        for (std::size_t i = 0; i < tr.nodes.size(); ++i) {
            CHECK(dense_output(tr, tr.h * static_cast<double>(i)) == tr.nodes[i]);
        }
    }
    SECTION("cubic data is reproduced exactly")
    {
        auto cubic = [](double s) { return 1.0 - 2.0 * s + 0.5 * s * s + 3.0 * s * s * s; };
        const auto tr = sample(cubic, -0.5, 1.5, 7);
        for (double s = -0.5; s <= 1.5; s += 0.037) {
            const Vector v = dense_output(tr, s);
            CHECK(std::abs(v[0] - cubic(s)) <= 1e-12);
            CHECK(std::abs(v[1] - 2.0 * cubic(s)) <= 1e-12);
        }
    }
    SECTION("exponential on 64 nodes over [0, 0.1]")
    {
        auto f = [](double s) { return std::exp(s); };
        const auto tr = sample(f, 0.0, 0.1, 64);
        double worst = 0.0;
        for (int i = 0; i + 1 < 64; ++i) {
            const double mid = tr.h * (i + 0.5);
            worst = std::max(worst, std::abs(dense_output(tr, mid)[0] - f(mid)));
        }
        CHECK(worst <= 1e-10);
    }
    SECTION("domain errors")
    {
        const auto tr = sample([](double s) { return s; }, 0.0, 1.0, 5);
        CHECK_THROWS_AS(dense_output(tr, -0.01), DomainError);
        CHECK_THROWS_AS(dense_output(tr, 1.01), DomainError);
        const auto short_tr = sample([](double s) { return s; }, 0.0, 1.0, 3);
        CHECK_THROWS_AS(dense_output(short_tr, 0.5), DomainError);
    }
}

TEST_CASE("iterative_step degenerate and fixed-point cases", "[iterative]")
{
    const auto demo = matrix_demo();

    SECTION("B = 0 gives exp(A tau) c for any configuration")
    {
        const SplitProblem p(demo.a(), Matrix(2, 2), demo.c0(), 1.0);
        const Vector expected = matrix_exp(demo.a(), 0.1) * demo.c0();
        for (const auto init : {InitStrategy::hold_constant(), InitStrategy::exp_a(), InitStrategy::lie_trotter(),
                                InitStrategy::zassenhaus(3)}) {
            for (int it = 1; it <= 3; ++it) {
                CHECK(oracle::max_diff(iterative_step(p, 0.1, config(it, init), demo.c0()), expected) <= 1e-12);
            }
        }
    }
    SECTION("the exact trajectory is a fixed point of the sweep")
    {
        const double tau = 0.1;
        IterativeConfig cfg = config(3, InitStrategy::exp_a());
        const IterativeStepper stepper(demo, tau, cfg);
        Trajectory exact;
        exact.t0 = 0.0;
        exact.h = tau / cfg.substeps;
        for (int k = 0; k <= cfg.substeps; ++k) {
            exact.nodes.push_back(k == 0 ? demo.c0() : exact_step(demo, exact.h * k, demo.c0()));
        }
        const Trajectory out = stepper.sweeps_from(exact);
        for (std::size_t k = 0; k < out.nodes.size(); ++k) {
            CHECK(oracle::max_diff(out.nodes[k], exact.nodes[k]) <= 1e-12);
        }
    }
    SECTION("state dimension is checked")
    {
        CHECK_THROWS_AS(iterative_step(demo, 0.1, config(1, InitStrategy::exp_a()), Vector{1.0, 2.0, 3.0}), ShapeError);
        CHECK_THROWS_AS(iterative_step(demo, -0.1, config(1, InitStrategy::exp_a()), demo.c0()), DomainError);
    }
}

TEST_CASE("iterate 0 follows the initialization strategy", "[iterative]")
{
    const auto demo = matrix_demo();
    const double tau = 0.2;
    SECTION("elapsed sampling evaluates the product scheme over the elapsed time")
    {
        const IterativeStepper stepper(demo, tau, config(1, InitStrategy::zassenhaus(2)));
        const Trajectory tr = stepper.initial_iterate(demo.c0());
        REQUIRE(tr.nodes.size() == 65);
        CHECK(oracle::max_diff(tr.nodes.back(), zassenhaus_step(demo, tau, 2, demo.c0())) <= 1e-13);
        CHECK(oracle::max_diff(tr.nodes[16], zassenhaus_step(demo, tau / 4, 2, demo.c0())) <= 1e-13);
    }
    SECTION("hold-constant repeats the initial value")
    {
        const IterativeStepper stepper(demo, tau, config(1, InitStrategy::hold_constant()));
        for (const auto& node : stepper.initial_iterate(demo.c0()).nodes) {
            CHECK(node == demo.c0());
        }
    }
    SECTION("exp-A is the same under both samplings")
    {
        IterativeConfig stepped = config(1, InitStrategy::exp_a());
        stepped.sampling = InitSampling::stepped;
        const auto a = IterativeStepper(demo, tau, config(1, InitStrategy::exp_a())).initial_iterate(demo.c0());
        const auto b = IterativeStepper(demo, tau, stepped).initial_iterate(demo.c0());
        for (std::size_t k = 0; k < a.nodes.size(); ++k) {
            CHECK(oracle::max_diff(a.nodes[k], b.nodes[k]) <= 1e-13);
        }
    }
}

TEST_CASE("iterative splitting convergence on the demo split", "[iterative][order]")
{
    const auto demo = matrix_demo();
    SECTION("two sweeps from exp(A t) converge with global order 2")
    {
        CHECK(global_order(demo, config(2, InitStrategy::exp_a()), 2, 6) == Approx(2.0).margin(0.1));
    }
    SECTION("hold-constant start still gains one order per sweep")
    {
        const double o1 = global_order(demo, config(2, InitStrategy::hold_constant()), 2, 6);
        const double o2 = global_order(demo, config(3, InitStrategy::hold_constant()), 2, 6);
        CHECK(o2 - o1 == Approx(1.0).margin(0.3));
    }
    SECTION("alternating sweeps converge as well")
    {
        CHECK(global_order(demo, config(2, InitStrategy::exp_a(), SweepSide::alternating), 2, 6) ==
              Approx(2.0).margin(0.2));
    }
    SECTION("quadrature floor: 64 versus 128 substeps")
    {
        IterativeConfig fine = config(3, InitStrategy::exp_a());
        fine.substeps = 128;
        const double tau = std::ldexp(1.0, -6);
        const Vector a = march_iterative(demo, tau, config(3, InitStrategy::exp_a()));
        const Vector b = march_iterative(demo, tau, fine);
        CHECK(oracle::max_diff(a, b) < 1e-9);
    }
    SECTION("the marching reference agrees with a brute-force RK4 solution")
    {
        CHECK(global_error(demo, 0.1, config(6, InitStrategy::exp_a())) < 1e-6);
    }
}

TEST_CASE("combined_step", "[iterative][combined]")
{
    const auto demo = matrix_demo();
    SECTION("order-1 Zassenhaus with one sweep equals one sweep over the Lie iterate")
    {
        const Vector a = combined_step(demo, 0.1, 1, 1, demo.c0());
        const Vector b = iterative_step(demo, 0.1, config(1, InitStrategy::lie_trotter()), demo.c0());
        CHECK(oracle::max_diff(a, b) <= 1e-13);
    }
    SECTION("commuting operators are integrated exactly")
    {
        const SplitProblem p(Matrix::diagonal({0.5, -1.0, 2.0}), Matrix::diagonal({1.0, 0.25, -0.5}),
                             Vector{1.0, 2.0, -1.0}, 1.0);
        for (int it = 1; it <= 3; ++it) {
            CHECK(oracle::max_diff(combined_step(p, 0.2, 2, it, p.c0()), exact_step(p, 0.2, p.c0())) <= 1e-11);
        }
    }
    SECTION("a second Zassenhaus factor raises the order by one")
    {
        IterativeConfig one = config(2, InitStrategy::zassenhaus(1));
        IterativeConfig two = config(2, InitStrategy::zassenhaus(2));
        const double delta = global_order(demo, two, 1, 5) - global_order(demo, one, 1, 5);
        CHECK(delta == Approx(1.0).margin(0.3));
    }
    SECTION("one sweep never degrades the Zassenhaus initialization")
    {
        for (int k = 1; k <= 3; ++k) {
            for (double tau : sweep_taus(0, 6)) {
                const long steps = std::lround(1.0 / tau);
                const Matrix zm = zassenhaus_propagator(demo, tau, k);
                Vector z = demo.c0();
                for (long n = 0; n < steps; ++n) {
                    z = zm * z;
                }
                const Vector exact = matrix_exp(demo.a() + demo.b(), 1.0) * demo.c0();
                const double zass_err = oracle::max_diff(z, exact);
                const double comb_err =
                    oracle::max_diff(march_iterative(demo, tau, config(1, InitStrategy::zassenhaus(k))), exact);
                INFO("k = " << k << " tau = " << tau);
                CHECK(comb_err <= zass_err);
            }
        }
    }
}

TEST_CASE("order growth and initialization ladder on random pairs", "[iterative][order][property]")
{
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 3; ++trial) {
        const auto p = random_pair(rng);
        std::vector<double> orders;
        for (int it = 1; it <= 4; ++it) {
            orders.push_back(global_order(p, config(it, InitStrategy::exp_a()), 1, 5));
        }
        for (std::size_t i = 1; i < orders.size(); ++i) {
            INFO("trial " << trial << " iterations " << i + 1);
            CHECK(orders[i] >= orders[i - 1]);
            CHECK(orders[i] - orders[i - 1] == Approx(1.0).margin(0.3));
        }

        std::vector<double> err_exp, err_lie;
        const double o_exp = global_order(p, config(2, InitStrategy::exp_a()), 1, 5, &err_exp);
        const double o_lie = global_order(p, config(2, InitStrategy::lie_trotter()), 1, 5, &err_lie);
        for (std::size_t i = 0; i < err_exp.size(); ++i) {
            CHECK(err_lie[i] <= err_exp[i]);
        }
        CHECK(o_lie - o_exp >= 0.6);
        CHECK(o_lie - o_exp <= 1.4);
    }
}

TEST_CASE("iterative scheme is exact on commuting pairs", "[iterative][property]")
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> dist(-1.5, 1.5);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> da(3), db(3);
        for (int i = 0; i < 3; ++i) {
            da[static_cast<std::size_t>(i)] = dist(rng);
            db[static_cast<std::size_t>(i)] = dist(rng);
        }
        const SplitProblem p(Matrix::diagonal(da), Matrix::diagonal(db), oracle::random_vector(rng, 3), 1.0);
        const Vector exact = exact_step(p, 0.1, p.c0());
        for (const auto side : {SweepSide::one_sided_a, SweepSide::alternating}) {
            // Iterate 0 from the Lie product is already exact; sweeps must not move it.
            CHECK(oracle::max_diff(iterative_step(p, 0.1, config(2, InitStrategy::lie_trotter(), side), p.c0()), exact) <=
                  1e-11);
        }
    }
}
