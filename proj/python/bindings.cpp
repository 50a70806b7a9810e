#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "roughcontact/bmo.hpp"
#include "roughcontact/drag.hpp"
#include "roughcontact/errors.hpp"
#include "roughcontact/fall_sim.hpp"
#include "roughcontact/gap_geometry.hpp"
#include "roughcontact/norms.hpp"
#include "roughcontact/test_field.hpp"

namespace py = pybind11;
using namespace roughcontact;

namespace {

py::dict prop8_dict(const Prop8Report& r) {
  py::dict d;
  d["h"] = r.h;
  d["l2_w"] = r.l2_w;
  d["l2_grad_w"] = r.l2_grad_w;
  d["weighted_sup"] = r.weighted_sup;
  d["weighted_dh"] = r.weighted_dh;
  d["outer_const"] = r.outer_const;
  d["max_rel_error"] = r.max_rel_error;
  return d;
}

py::dict drag_dict(const DragSample& s) {
  py::dict d;
  d["h"] = s.h;
  d["dirichlet"] = s.dirichlet;
  d["pairing"] = s.pairing;
  d["pairing_direct"] = s.pairing_direct;
  d["n"] = s.n;
  d["reynolds"] = s.reynolds;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Thin-gap test field, drag and fall-model numerics";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<DegenerateInputError>(m, "DegenerateInputError", PyExc_ValueError);
  py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_ArithmeticError);
  py::register_exception<CrossCheckError>(m, "CrossCheckError", PyExc_ArithmeticError);
  py::register_exception<StepUnderflowError>(m, "StepUnderflowError", PyExc_ArithmeticError);

  py::class_<RoughProfile>(m, "RoughProfile")
      .def(py::init<double, double>(), py::arg("alpha"), py::arg("delta") = 1.0)
      .def_property_readonly("alpha", &RoughProfile::alpha)
      .def_property_readonly("delta", &RoughProfile::delta)
      .def("balance_scale", &RoughProfile::balance_scale, py::arg("h"))
      .def("__repr__", [](const RoughProfile& p) {
        return "RoughProfile(alpha=" + std::to_string(p.alpha()) +
               ", delta=" + std::to_string(p.delta()) + ")";
      });

  m.def("gamma", static_cast<double (*)(const RoughProfile&, double, double)>(&roughcontact::gamma), py::arg("profile"), py::arg("h"), py::arg("x1"));
  m.def("lemma10_integral", &lemma10_integral, py::arg("p"), py::arg("q"), py::arg("profile"),
        py::arg("h"), py::arg("rel_tol") = 1e-8);
  m.def(
      "lemma10_classify",
      [](double p, double q, const RoughProfile& profile) {
        const Lemma10Regime r = lemma10_classify(p, q, profile);
        return py::make_tuple(std::string(to_string(r.kind)), r.exponent);
      },
      py::arg("p"), py::arg("q"), py::arg("profile"),
      "Returns (kind, exponent or None).");

  m.def(
      "velocity",
      [](const RoughProfile& p, double h, double x1, double x2) { return velocity(p, h, {x1, x2}); },
      py::arg("profile"), py::arg("h"), py::arg("x1"), py::arg("x2"));
  m.def(
      "velocity_gradient",
      [](const RoughProfile& p, double h, double x1, double x2) {
        return velocity_gradient(p, h, {x1, x2});
      },
      py::arg("profile"), py::arg("h"), py::arg("x1"), py::arg("x2"),
      "Entry [i][j] = d_i w_j, or None on the cusp line.");
  m.def(
      "pressure",
      [](const RoughProfile& p, double h, double x1, double x2, double mu) {
        return pressure(p, h, {x1, x2}, mu);
      },
      py::arg("profile"), py::arg("h"), py::arg("x1"), py::arg("x2"), py::arg("mu") = 1.0);
  m.def(
      "stokes_residual",
      [](const RoughProfile& p, double h, double x1, double x2, double mu) {
        return stokes_residual(p, h, {x1, x2}, mu);
      },
      py::arg("profile"), py::arg("h"), py::arg("x1"), py::arg("x2"), py::arg("mu") = 1.0);

  m.def(
      "prop8_suite",
      [](const RoughProfile& p, double h, double tol, double h_max) {
        NormOptions o;
        o.tol = tol;
        o.h_max = h_max;
        return prop8_dict(prop8_suite(p, h, o));
      },
      py::arg("profile"), py::arg("h"), py::arg("tol") = 1e-8, py::arg("h_max") = 1e-3);
  m.def(
      "drag_coefficient",
      [](const RoughProfile& p, double h, double mu, double tol, double h_max) {
        DragOptions o;
        o.tol = tol;
        o.h_max = h_max;
        return drag_dict(drag_coefficient(p, h, mu, o));
      },
      py::arg("profile"), py::arg("h"), py::arg("mu") = 1.0, py::arg("tol") = 1e-8,
      py::arg("h_max") = 1e-3);
  m.def(
      "collision_regime",
      [](double alpha) {
        const RegimeVerdict v = collision_regime(alpha);
        return py::make_tuple(v.beta, v.collides);
      },
      py::arg("alpha"), "Returns (beta, collides).");

  m.def("contact_time_closed_form", &contact_time_closed_form, py::arg("K"), py::arg("beta"),
        py::arg("h0"), py::arg("G"), "None when the contact time is infinite.");
  m.def(
      "simulate_power_law_fall",
      [](double K, double beta, double h0, double G, std::optional<double> h_contact,
         std::optional<double> t_max, double rel_tol) {
        FallParams params;
        params.h0 = h0;
        params.G = G;
        params.drag_source = PowerLawDrag{K, beta};
        params.h_contact = h_contact;
        params.t_max = t_max;
        const FallTrajectory traj = simulate_fall(params, rel_tol);
        py::dict d;
        d["classified"] = to_string(traj.classified);
        d["contact_time"] = traj.contact_time;
        d["threshold_time"] = traj.threshold_time;
        std::vector<double> t, h;
        for (const auto& s : traj.samples) {
          t.push_back(s.t);
          h.push_back(s.h);
        }
        d["t"] = t;
        d["h"] = h;
        d["energy_audit"] = energy_audit(traj, params);
        return d;
      },
      py::arg("K"), py::arg("beta"), py::arg("h0"), py::arg("G"), py::arg("h_contact") = py::none(),
      py::arg("t_max") = py::none(), py::arg("rel_tol") = 1e-8);

  m.def(
      "bmo_catalog",
      [](const std::string& name, int n, double dilation) {
        const GridFunction g = catalog_grid(catalog_from_string(name), n, dilation);
        const BmoReport r = bmo_seminorm(g);
        py::dict d;
        d["seminorm_mean"] = r.seminorm_mean;
        d["seminorm_inf"] = r.seminorm_inf;
        d["argmax"] = py::make_tuple(r.argmax_x, r.argmax_y, r.argmax_ball.radius);
        d["l2"] = lp_norm(g, 2.0);
        return d;
      },
      py::arg("name"), py::arg("n"), py::arg("dilation") = 1.0);
}
