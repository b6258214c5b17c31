#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "orbidx/errors.hpp"
#include "orbidx/euler_satake.hpp"
#include "orbidx/inertia.hpp"
#include "orbidx/report.hpp"

namespace py = pybind11;
using namespace orbidx;

namespace {

py::object fraction(const Rational& r) {
  return py::module_::import("fractions").attr("Fraction")(r.numerator(), r.denominator());
}

py::object to_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

Prepared load(const std::string& path, const py::dict& tol) {
  auto s = load_scenario(path);
  for (auto [k, v] : tol) set_tolerance(s.tol, py::str(k), v.cast<double>());
  return prepare(s);
}

}  // namespace

PYBIND11_MODULE(_orbidx, m) {
  m.doc() = "Orbifold Poincare-Hopf verification core";

  py::exception<Error>(m, "OrbidxError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object type = py::module_::import("orbidx._orbidx").attr("OrbidxError");
      py::object inst = type(e.what());
      inst.attr("code") = std::string(to_string(e.code()));
      py::set_error(type, inst);
    }
  });

  m.def("check_names", &all_checks);
  m.def("tolerance_names", &tolerance_names);

  m.def(
      "verify",
      [](const std::string& path, const std::vector<std::string>& checks, const py::dict& tol) {
        auto p = load(path, tol);
        return to_python(to_json(run_verify(p, checks)));
      },
      py::arg("path"), py::arg("checks") = std::vector<std::string>{}, py::arg("tol") = py::dict(),
      "Run the pipeline on a scenario file and return the JSON report as a dict.");

  m.def(
      "verify_text",
      [](const std::string& text, const std::vector<std::string>& checks) {
        return to_python(to_json(run_verify(prepare(parse_scenario(text)), checks)));
      },
      py::arg("text"), py::arg("checks") = std::vector<std::string>{});

  m.def(
      "index_sum",
      [](const std::string& path) {
        auto p = load(path, py::dict());
        auto s = orbifold_index_sum(p.field, p.presentation.action, p.boundary, p.scenario.tol);
        py::list zeros;
        for (const auto& z : s.records) {
          py::dict d;
          d["location"] = z.location;
          d["isotropy_order"] = z.isotropy_order;
          d["det_sign"] = z.det_sign;
          d["orb_index"] = fraction(z.orb_index);
          zeros.append(d);
        }
        return py::make_tuple(fraction(s.total), zeros);
      },
      py::arg("path"), "Ind_orb(Y; Q) and the upstairs zero records.");

  m.def(
      "chi_orb",
      [](const std::string& path) {
        auto p = load(path, py::dict());
        py::dict d;
        d["chi_orb"] = fraction(chi_orb(p.presentation));
        d["chi_relative"] = fraction(chi_orb_relative(p.presentation));
        d["chi_underlying"] = chi_underlying(p.presentation);
        d["chi_inertia"] = fraction(chi_orb_inertia(p.presentation));
        return d;
      },
      py::arg("path"));

  m.def(
      "chain_terms",
      [](const std::string& path) {
        auto p = load(path, py::dict());
        auto c = compute_chain(p.field, p.presentation.action, p.boundary, p.scenario.tol);
        py::list terms;
        for (const auto& t : c.chi_terms) terms.append(fraction(t));
        return terms;
      },
      py::arg("path"));

  m.def(
      "winding_number",
      [](const std::vector<std::string>& field, const Eigen::Vector2d& center, double radius) {
        return winding_number_2d(FieldExpr::parse(field), center, radius);
      },
      py::arg("field"), py::arg("center"), py::arg("radius"));
}
