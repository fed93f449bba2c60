#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "tscarma/carmasim.hpp"
#include "tscarma/cli.hpp"
#include "tscarma/errors.hpp"
#include "tscarma/mcharness.hpp"
#include "tscarma/specfun.hpp"

namespace py = pybind11;
using namespace tscarma;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Tempered stable CARMA simulation core.";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<UnsupportedError>(m, "UnsupportedError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<NonNegativeRootError>(m, "NonNegativeRootError", base.ptr());
  py::register_exception<ComplexRootError>(m, "ComplexRootError", base.ptr());
  py::register_exception<RepeatedRootError>(m, "RepeatedRootError", base.ptr());
  py::register_exception<CommonRootError>(m, "CommonRootError", base.ptr());

  auto sf = m.def_submodule("specfun", "Special functions");
  sf.def("gamma", &specfun::gamma);
  sf.def("gamma_upper", [](double s, double x) { return specfun::gamma_upper(s, x); }, py::arg("s"), py::arg("x"));
  sf.def("expint", [](double order, double x) { return specfun::expint(order, x); }, py::arg("m"), py::arg("x"));
  sf.def("hyp2f1", [](double a, double b, double c, double x) { return specfun::hyp2f1(a, b, c, x); },
         py::arg("a"), py::arg("b"), py::arg("c"), py::arg("x"));
  sf.def("zeta", &specfun::zeta);
  sf.def("pochhammer", &specfun::pochhammer);

  py::class_<TemperingModel>(m, "TemperingModel")
      .def_property_readonly("name", &TemperingModel::name)
      .def_property_readonly("alpha", &TemperingModel::alpha)
      .def_property_readonly("p", &TemperingModel::p)
      .def_property_readonly("sigma_mass", &TemperingModel::sigma_mass)
      .def_property_readonly("is_subordinator", &TemperingModel::is_subordinator)
      .def_property_readonly("is_symmetric", &TemperingModel::is_symmetric)
      .def("levy_density", &TemperingModel::levy_density, py::arg("z"))
      .def("levy_tail", [](const TemperingModel& model, double x, bool plus) {
        return levy_tail(model, x, plus ? Side::plus : Side::minus);
      }, py::arg("x"), py::arg("plus") = true);

  m.def("make_ptss", [](double alpha, double p, double delta, double lambda) {
    return make_ptss({alpha, p, delta, lambda});
  }, py::arg("alpha"), py::arg("p"), py::arg("delta") = 1.0, py::arg("lambda_") = 1.0);
  m.def("make_pcts", [](double alpha, double p, double dp, double dm, double lp, double lm) {
    return make_pcts({alpha, p, dp, dm, lp, lm});
  }, py::arg("alpha"), py::arg("p"), py::arg("delta_plus") = 1.0, py::arg("delta_minus") = 1.0,
     py::arg("lambda_plus") = 1.0, py::arg("lambda_minus") = 1.0);
  m.def("make_pgts", [](double alpha, double p, double beta, double lambda) {
    return make_pgts({alpha, p, beta, lambda});
  }, py::arg("alpha"), py::arg("p"), py::arg("beta") = 3.0, py::arg("lambda_") = 1.0);

  py::class_<CarmaDecomposition>(m, "CarmaDecomposition")
      .def_readonly("lambdas", &CarmaDecomposition::lambdas)
      .def_readonly("residues", &CarmaDecomposition::residues)
      .def_readonly("nonnegative_kernel", &CarmaDecomposition::nonnegative_kernel)
      .def("kernel", [](const CarmaDecomposition& d, double t) { return kernel(d, t); })
      .def("integrals", [](const CarmaDecomposition& d) {
        const auto k = kernel_integrals(d);
        return py::make_tuple(k.int_g, k.int_g2);
      });
  m.def("decompose", [](std::vector<double> a, std::vector<double> b) {
    return validate(CarmaSpec{std::move(a), std::move(b)});
  }, py::arg("a"), py::arg("b"));

  py::class_<TruncatedMoments>(m, "TruncatedMoments")
      .def_readonly("m1_n", &TruncatedMoments::m1_n)
      .def_readonly("m2_n", &TruncatedMoments::m2_n)
      .def_readonly("m1", &TruncatedMoments::m1)
      .def_readonly("m2", &TruncatedMoments::m2)
      .def_readonly("sigma_n_sq", &TruncatedMoments::sigma_n_sq)
      .def_readonly("m1_discarded", &TruncatedMoments::m1_discarded);
  m.def("truncated_moments", &truncated_moments, py::arg("model"), py::arg("n"));

  m.def("sample_skeleton", [](const TemperingModel& model, double T, double kappa, std::int64_t n,
                              std::uint64_t seed, std::uint64_t stream) {
    SeriesConfig c;
    c.T = T;
    c.kappa = kappa;
    c.n = n;
    c.seed = seed;
    c.stream_index = stream;
    const JumpSkeleton sk = sample_skeleton(model, c);
    std::vector<double> times, sizes;
    for (const auto& j : sk.jumps) {
      times.push_back(j.time);
      sizes.push_back(j.size);
    }
    return py::make_tuple(times, sizes);
  }, py::arg("model"), py::arg("T"), py::arg("kappa"), py::arg("n"), py::arg("seed") = 0, py::arg("stream") = 0);

  m.def("simulate_path", [](const TemperingModel& model, std::vector<double> a, std::vector<double> b, double T,
                            double kappa, std::int64_t n, double grid_step, std::uint64_t seed) {
    SeriesConfig c;
    c.T = T;
    c.kappa = kappa;
    c.n = n;
    c.seed = seed;
    const PathSimulator sim(model, CarmaSpec{std::move(a), std::move(b)}, c, default_scheme(model));
    const auto grid = uniform_grid(T, grid_step);
    return py::make_tuple(grid, sim.simulate_values(grid, 0));
  }, py::arg("model"), py::arg("a"), py::arg("b"), py::arg("T"), py::arg("kappa"), py::arg("n"),
     py::arg("grid_step"), py::arg("seed") = 0);

  m.def("error_bound", [](const TemperingModel& model, std::vector<double> a, std::vector<double> b,
                          std::int64_t n, double kappa, double t) {
    const auto d = validate(CarmaSpec{std::move(a), std::move(b)});
    const ErrorBound eb = error_bound(model, d, n, kappa, t, default_scheme(model));
    return py::dict(py::arg("bound") = eb.bound, py::arg("c1") = eb.c1, py::arg("c2") = eb.c2,
                    py::arg("c3") = eb.c3, py::arg("c4") = eb.c4);
  }, py::arg("model"), py::arg("a"), py::arg("b"), py::arg("n"), py::arg("kappa"), py::arg("t"));

  m.def("emit_density_data", &emit_density_data, py::arg("samples"), py::arg("bins"));

  m.def("run_cli", [](std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::dispatch(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
