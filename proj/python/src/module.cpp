// Copyright 2026 The relcoh Authors
// SPDX-License-Identifier: Apache-2.0
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cli.hpp"
#include "relcoh/canonical.hpp"
#include "relcoh/errors.hpp"
#include "relcoh/lorentzian.hpp"
#include "relcoh/poincare.hpp"
#include "relcoh/specfun.hpp"
#include "relcoh/verify.hpp"

namespace py = pybind11;
using namespace relcoh;

namespace {

void bind_core(py::module_& m) {
  py::register_exception<Error>(m, "RelcohError", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  py::enum_<Method>(m, "Method")
      .value("closed_form", Method::closed_form)
      .value("series", Method::series)
      .value("quadrature", Method::quadrature);

  py::class_<Moment>(m, "Moment")
      .def_readonly("value", &Moment::value)
      .def_readonly("method", &Moment::method)
      .def("__repr__", [](const Moment& x) {
        return "Moment(" + std::to_string(x.value) + ", " + to_string(x.method) + ")";
      });

  py::class_<MomentReport>(m, "MomentReport")
      .def_readonly("family", &MomentReport::family)
      .def_readonly("energy", &MomentReport::energy)
      .def_readonly("momentum", &MomentReport::momentum)
      .def_readonly("velocity", &MomentReport::velocity)
      .def_readonly("var_x", &MomentReport::var_x)
      .def_readonly("var_p", &MomentReport::var_p)
      .def_readonly("var_v", &MomentReport::var_v)
      .def_readonly("product_xp", &MomentReport::product_xp)
      .def_readonly("product_xv", &MomentReport::product_xv)
      .def("as_dict", [](const MomentReport& r) {
        py::dict d;
        for (const std::string& tag : cli::quantity_tags()) {
          const Moment& x = cli::select(r, tag);
          if (x.present()) d[tag.c_str()] = x.value;
        }
        return d;
      });

  py::class_<MomentumWavefunction>(m, "MomentumWavefunction")
      .def("__call__", &MomentumWavefunction::operator(), py::arg("p"))
      .def("norm", [](const MomentumWavefunction& w) { return w.norm(); })
      .def("inner", [](const MomentumWavefunction& a, const MomentumWavefunction& b) { return a.inner(b); });
}

void bind_specfun(py::module_& m) {
  m.def("bessel_k_scaled", static_cast<double (*)(int, double)>(&specfun::bessel_k_scaled), py::arg("nu"), py::arg("x"), "e^x K_nu(x)");
  m.def("confluent_u", static_cast<double (*)(double, double, double)>(&specfun::confluent_u), py::arg("a"), py::arg("b"), py::arg("z"));
  m.def("erf", static_cast<double (*)(double)>(&specfun::erf), py::arg("x"));
  m.def("pochhammer", static_cast<double (*)(double, int)>(&specfun::pochhammer), py::arg("alpha"), py::arg("n"));
}

void bind_canonical(py::module_& m) {
  using namespace canonical;
  py::class_<CanonicalState>(m, "CanonicalState")
      .def(py::init([](double xbar, double pbar) { return CanonicalState{xbar, pbar}; }), py::arg("xbar") = 0.0,
           py::arg("pbar") = 0.0)
      .def_readwrite("xbar", &CanonicalState::xbar)
      .def_readwrite("pbar", &CanonicalState::pbar);
  m.def("wavefunction", &wavefunction, py::arg("state"));
  m.def("overlap", &overlap, py::arg("a"), py::arg("b"));
  m.def("mean_energy_massive", &mean_energy_massive, py::arg("pbar"), py::arg("r"),
        py::arg("method") = Method::series);
  m.def("mean_energy_massless", &mean_energy_massless, py::arg("sbar"));
  m.def("mean_velocity", &mean_velocity, py::arg("pbar"), py::arg("r"), py::arg("method") = Method::series);
  m.def("rest_energy_deviation", &rest_energy_deviation, py::arg("r"));
  m.def("massless_energy_deviation", &massless_energy_deviation, py::arg("sbar"));
  m.def(
      "uncertainty_product",
      [](const CanonicalState& s) {
        const Uncertainty u = uncertainty_product(s);
        return py::make_tuple(u.var_x, u.var_p, u.product);
      },
      py::arg("state"));
  m.def(
      "report",
      [](const CanonicalState& s, std::optional<double> r) {
        return report(s, r ? Scale::massive(*r) : Scale::massless());
      },
      py::arg("state"), py::arg("r") = py::none());
}

void bind_lorentzian(py::module_& m) {
  using namespace lorentzian;
  py::class_<LorentzianState>(m, "LorentzianState")
      .def(py::init([](double xbar, double beta, double r) { return LorentzianState::make(xbar, beta, r); }),
           py::arg("xbar") = 0.0, py::arg("beta") = 0.0, py::arg("r") = 1.0)
      .def_readonly("xbar", &LorentzianState::xbar)
      .def_readonly("beta", &LorentzianState::beta)
      .def_readonly("r", &LorentzianState::r);
  m.def("wavefunction", &wavefunction, py::arg("state"));
  m.def("overlap", &overlap, py::arg("a"), py::arg("b"));
  m.def("mean_momentum", &mean_momentum, py::arg("beta"), py::arg("r"));
  m.def("mean_energy", &mean_energy, py::arg("beta"), py::arg("r"));
  m.def("momentum_variance", &momentum_variance, py::arg("beta"), py::arg("r"));
  m.def("brace_factor", &brace_factor, py::arg("beta"), py::arg("r"));
  m.def("commutator_average", &commutator_average, py::arg("beta"), py::arg("r"));
  m.def(
      "variances_xv",
      [](double beta, double r) {
        const VarianceXV v = variances_xv(beta, r);
        return py::make_tuple(v.var_x, v.var_v, v.product);
      },
      py::arg("beta"), py::arg("r"));
  m.def(
      "eigen_residual", [](const LorentzianState& s) { return eigen_residual(s); }, py::arg("state"));
  m.def("report", &report, py::arg("state"));
}

void bind_poincare(py::module_& m) {
  using namespace poincare;
  py::class_<PoincareState>(m, "PoincareState")
      .def(py::init([](double xbar, double pbar, double r) { return PoincareState::make(xbar, pbar, r); }),
           py::arg("xbar") = 0.0, py::arg("pbar") = 0.0, py::arg("r") = 1.0)
      .def_readonly("xbar", &PoincareState::xbar)
      .def_readonly("pbar", &PoincareState::pbar)
      .def_readonly("r", &PoincareState::r);
  m.def("rho", &rho, py::arg("r"));
  m.def("effective_mass", &effective_mass, py::arg("r"));
  m.def("wavefunction", &wavefunction, py::arg("state"));
  m.def("overlap", &overlap, py::arg("a"), py::arg("b"));
  m.def("overlap_real_slice", &overlap_real_slice, py::arg("a"), py::arg("b"));
  m.def("mean_momentum", &mean_momentum, py::arg("state"));
  m.def("mean_energy", &mean_energy, py::arg("state"));
  m.def("momentum_variance", &momentum_variance, py::arg("state"));
  m.def(
      "position_variance", [](const PoincareState& s) { return position_variance(s); }, py::arg("state"));
  m.def(
      "mean_velocity", [](const PoincareState& s) { return mean_velocity(s); }, py::arg("state"));
  m.def("report", &report, py::arg("state"));
}

void bind_tools(py::module_& m) {
  m.def(
      "verify",
      [](const std::string& suite, const std::string& tol) {
        py::list out;
        for (const auto& r : verify::run(suite, verify::ToleranceOverrides::parse(tol))) {
          py::dict d;
          d["suite"] = r.suite;
          d["name"] = r.name;
          d["kind"] = verify::to_string(r.kind);
          d["measured"] = r.measured;
          d["tolerance"] = r.tolerance;
          d["passed"] = r.passed;
          d["detail"] = r.detail;
          out.append(std::move(d));
        }
        return out;
      },
      py::arg("suite") = "all", py::arg("tol") = "");
  m.def(
      "figure",
      [](int id, std::optional<double> r, unsigned jobs) {
        cli::SweepSpec spec = cli::SweepSpec::figure_preset(id);
        if (r) spec.r = *r;
        cli::SweepTable t;
        {
          py::gil_scoped_release release;
          t = cli::run_sweep(spec, jobs);
        }
        return py::make_tuple(t.header, t.rows);
      },
      py::arg("id"), py::arg("r") = py::none(), py::arg("jobs") = 0u, "(header, rows) of a figure preset");
}

}  // namespace

PYBIND11_MODULE(_relcoh, m) {
  m.doc() = "Relativistic coherent states of a spinless particle in 1+1 dimensions";
  bind_core(m);
  auto specfun = m.def_submodule("specfun", "Scaled Bessel K, Tricomi U, erf, Pochhammer");
  bind_specfun(specfun);
  auto canonical = m.def_submodule("canonical", "Canonical coherent states");
  bind_canonical(canonical);
  auto lorentzian = m.def_submodule("lorentzian", "Lorentzian coherent states");
  bind_lorentzian(lorentzian);
  auto poincare = m.def_submodule("poincare", "Poincare coherent states");
  bind_poincare(poincare);
  bind_tools(m);
}
