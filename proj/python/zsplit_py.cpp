#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zsplit/errors.hpp"
#include "zsplit/harness.hpp"
#include "zsplit/iterative.hpp"
#include "zsplit/models.hpp"
#include "zsplit/propagators.hpp"

namespace py = pybind11;
using namespace zsplit;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const Array& a)
{
    if (a.ndim() != 2) {
        throw ShapeError("expected a 2-d array");
    }
    const auto r = static_cast<std::size_t>(a.shape(0));
    const auto c = static_cast<std::size_t>(a.shape(1));
    return Matrix(r, c, std::vector<double>(a.data(), a.data() + r * c));
}

Vector to_vector(const Array& a)
{
    if (a.ndim() != 1) {
        throw ShapeError("expected a 1-d array");
    }
    return Vector(std::vector<double>(a.data(), a.data() + a.shape(0)));
}

Array from(const Matrix& m)
{
    Array out({m.rows(), m.cols()});
    std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
    return out;
}

Array from(const Vector& v)
{
    Array out(v.dim());
    std::copy(v.values().begin(), v.values().end(), out.mutable_data());
    return out;
}

SplitProblem problem(const Array& a, const Array& b, const Array& c, double tau)
{
    return SplitProblem(to_matrix(a), to_matrix(b), to_vector(c), tau);
}

py::tuple system_tuple(const ModelSystem& s)
{
    return py::make_tuple(from(s.a1), from(s.a2), from(s.c0));
}

OperatorAssignment parse_assignment(const std::string& text)
{
    if (text == "diffusion-vs-rest") {
        return OperatorAssignment::diffusion_vs_rest;
    }
    if (text == "transport-vs-reaction") {
        return OperatorAssignment::transport_vs_reaction;
    }
    throw ConfigError("unknown assignment '" + text + "'");
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Operator splitting schemes for linear evolution equations.";

    py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<NumericRangeError>(m, "NumericRangeError", PyExc_ArithmeticError);
    py::register_exception<UnsupportedOrderError>(m, "UnsupportedOrderError", PyExc_ValueError);
    py::register_exception<SpecError>(m, "SpecError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.def("expm", [](const Array& a, double t) { return from(matrix_exp(to_matrix(a), t)); }, py::arg("a"),
          py::arg("t") = 1.0);
    m.def("commutator", [](const Array& a, const Array& b) { return from(commutator(to_matrix(a), to_matrix(b))); });

    m.def("zassenhaus_corrections", [](const Array& a, const Array& b, int order) {
        const auto e = zassenhaus_expansion(to_matrix(a), to_matrix(b), order);
        py::list out;
        for (int k = 2; k <= order; ++k) {
            out.append(from(e.correction(k)));
        }
        return out;
    }, py::arg("a"), py::arg("b"), py::arg("order"), "Correction matrices C_2..C_order.");

    m.def("exact_step", [](const Array& a, const Array& b, const Array& c, double tau) {
        return from(exact_step(problem(a, b, c, tau), tau, to_vector(c)));
    });
    m.def("lie_trotter_step", [](const Array& a, const Array& b, const Array& c, double tau) {
        return from(lie_trotter_step(problem(a, b, c, tau), tau, to_vector(c)));
    });
    m.def("strang_step", [](const Array& a, const Array& b, const Array& c, double tau) {
        return from(strang_step(problem(a, b, c, tau), tau, to_vector(c)));
    });
    m.def("zassenhaus_step", [](const Array& a, const Array& b, const Array& c, double tau, int order) {
        return from(zassenhaus_step(problem(a, b, c, tau), tau, order, to_vector(c)));
    }, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("tau"), py::arg("order"));
    m.def("iterative_step",
          [](const Array& a, const Array& b, const Array& c, double tau, int iterations, const std::string& init,
             int substeps, const std::string& side) {
              IterativeConfig cfg;
              cfg.iterations = iterations;
              cfg.init = InitStrategy::parse(init);
              cfg.substeps = substeps;
              cfg.side = parse_side(side);
              return from(iterative_step(problem(a, b, c, tau), tau, cfg, to_vector(c)));
          },
          py::arg("a"), py::arg("b"), py::arg("c"), py::arg("tau"), py::arg("iterations") = 1,
          py::arg("init") = "exp-A", py::arg("substeps") = 64, py::arg("side") = "one-sided-A");
    m.def("combined_step",
          [](const Array& a, const Array& b, const Array& c, double tau, int order, int iterations, int substeps) {
              return from(combined_step(problem(a, b, c, tau), tau, order, iterations, to_vector(c), substeps));
          },
          py::arg("a"), py::arg("b"), py::arg("c"), py::arg("tau"), py::arg("order"), py::arg("iterations"),
          py::arg("substeps") = 64);

    m.def("matrix_demo", [] {
        const auto p = matrix_demo();
        return py::make_tuple(from(p.a()), from(p.b()), from(p.c0()));
    });
    m.def("matrix_demo_exact", [](double t) { return from(matrix_demo_exact(t)); });
    m.def("one_phase",
          [](int cells, double dx, double v, double D, double lambda1, double lambda2, const std::string& assignment) {
              OnePhaseSpec spec;
              spec.cells = cells;
              spec.dx = dx;
              spec.v = v;
              spec.D = D;
              spec.lambda1 = lambda1;
              spec.lambda2 = lambda2;
              spec.assignment = parse_assignment(assignment);
              return system_tuple(build_one_phase(spec));
          },
          py::arg("cells") = 10, py::arg("dx") = 0.1, py::arg("v") = 0.1, py::arg("D") = 0.01,
          py::arg("lambda1") = 0.1, py::arg("lambda2") = 0.1, py::arg("assignment") = "diffusion-vs-rest");
    m.def("multiphase",
          [](int species, int cells, double dx, double v, double D, std::vector<double> lambdas,
             std::vector<double> retardation, double beta, const std::string& assignment) {
              MultiphaseSpec spec;
              spec.species = species;
              spec.cells = cells;
              spec.dx = dx;
              spec.v = v;
              spec.D = D;
              spec.lambdas = std::move(lambdas);
              spec.retardation = std::move(retardation);
              spec.beta = beta;
              spec.assignment = parse_assignment(assignment);
              return system_tuple(build_multiphase(spec));
          },
          py::arg("species") = 1, py::arg("cells") = 10, py::arg("dx") = 0.1, py::arg("v") = 0.1, py::arg("D") = 0.01,
          py::arg("lambdas") = std::vector<double>{0.0, 0.1}, py::arg("retardation") = std::vector<double>{1.0},
          py::arg("beta") = 0.0,
          py::arg("assignment") = "transport-vs-reaction");
    m.def("reference_solution", [](const Array& a1, const Array& a2, const Array& c0, double t) {
        return from(reference_solution(to_matrix(a1), to_matrix(a2), to_vector(c0), t));
    });

    m.def("estimate_order", [](const std::vector<double>& taus, const std::vector<double>& errors) {
        if (taus.size() != errors.size()) {
            throw ShapeError("taus and errors differ in length");
        }
        std::vector<std::pair<double, double>> pairs;
        for (std::size_t i = 0; i < taus.size(); ++i) {
            pairs.emplace_back(taus[i], errors[i]);
        }
        return estimate_order(pairs);
    });
    m.def("run_convergence",
          [](const Array& a, const Array& b, const Array& c0, const std::string& schemes, std::vector<double> taus,
             double t_end, int jobs, std::optional<double> l2_dx) {
              RunOptions opts;
              opts.jobs = jobs;
              opts.l2_dx = l2_dx;
              if (taus.empty()) {
                  taus = default_tau_list();
              }
              const auto report =
                  run_convergence(problem(a, b, c0, t_end), parse_scheme_list(schemes), taus, t_end, opts);
              py::list rows;
              for (const auto& r : report.rows) {
                  py::dict d;
                  d["scheme"] = r.scheme;
                  d["tau"] = r.tau;
                  d["error_max"] = r.error_max;
                  d["error_l2"] = r.error_l2;
                  d["wall_seconds"] = r.wall_seconds;
                  rows.append(d);
              }
              py::dict orders;
              for (const auto& o : report.orders) {
                  orders[py::str(o.scheme)] = o.fitted_order ? py::cast(*o.fitted_order) : py::none();
              }
              return py::make_tuple(rows, orders);
          },
          py::arg("a"), py::arg("b"), py::arg("c0"), py::arg("schemes"), py::arg("taus") = std::vector<double>{},
          py::arg("t_end") = 1.0, py::arg("jobs") = 1, py::arg("l2_dx") = py::none(),
          "Returns (rows, orders): a list of per-cell dicts and a scheme -> fitted order mapping.");
}
