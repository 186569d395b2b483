#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "fracheat/besov.hpp"
#include "fracheat/config.hpp"
#include "fracheat/errors.hpp"
#include "fracheat/experiments.hpp"
#include "fracheat/phase_diagram.hpp"
#include "fracheat/picard.hpp"
#include "fracheat/spectral.hpp"

namespace py = pybind11;
using namespace fracheat;

namespace {

ExperimentConfig config_from(const py::dict& params) {
  ExperimentConfig cfg;
  for (const auto& [k, v] : params) {
    cfg.set(py::str(k), py::str(v), "python");
  }
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pseudospectral lab for the fractional heat equation";
  m.attr("__version__") = FRACHEAT_VERSION;

  auto base = py::register_exception<Error>(m, "FracheatError");
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<BudgetError>(m, "BudgetError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ResolutionError>(m, "ResolutionError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  m.def("fractional_symbol", [](double xi, double alpha) { return fractional_symbol(xi, FractionalOrder(alpha)); },
        py::arg("xi"), py::arg("alpha"));
  m.def("theta", [](double xi, double xi1, double alpha) { return theta(xi, xi1, FractionalOrder(alpha)); },
        py::arg("xi"), py::arg("xi1"), py::arg("alpha"));
  m.def("duhamel_kernel",
        [](double xi, double xi1, double t, double alpha) { return duhamel_kernel(xi, xi1, t, FractionalOrder(alpha)); },
        py::arg("xi"), py::arg("xi1"), py::arg("t"), py::arg("alpha"));
  m.def("tail_bound", &tail_bound, py::arg("k"), py::arg("N"), py::arg("R"), py::arg("t"), py::arg("C0"));
  m.def("modulation_growth_bound", &modulation_growth_bound, py::arg("k"), py::arg("N"), py::arg("R"), py::arg("t"),
        py::arg("C0"));
  m.def("critical_regularity", &critical_regularity, py::arg("alpha"));

  m.def(
      "semigroup",
      [](const std::vector<double>& samples, double period, double t, double alpha) {
        const TorusGrid grid(period, samples.size());
        return from_spectral(apply_semigroup(to_spectral(samples, grid), t, FractionalOrder(alpha)));
      },
      py::arg("samples"), py::arg("period"), py::arg("t"), py::arg("alpha"),
      "Applies exp(-t |D|^{2 alpha}) to periodic samples.");
  m.def(
      "besov_norm",
      [](const std::vector<double>& samples, double period, double s, double q) {
        const TorusGrid grid(period, samples.size());
        return besov_norm(to_spectral(samples, grid), BesovIndex(s, q), make_partition(grid)).value;
      },
      py::arg("samples"), py::arg("period"), py::arg("s"), py::arg("q") = 2.0);

  m.def("experiment_names", &experiment_names);
  m.def(
      "run_experiment_json",
      [](const std::string& name, const py::dict& params) {
        const auto cfg = config_from(params);
        ExperimentRecord rec;
        {
          py::gil_scoped_release release;
          rec = run_experiment(name, cfg);
        }
        return rec.to_json().dump();
      },
      py::arg("name"), py::arg("params") = py::dict(), "Runs an experiment and returns its record as JSON text.");
}
