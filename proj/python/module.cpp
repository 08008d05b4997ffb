#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "bssc/bounds.hpp"
#include "bssc/conjecture.hpp"
#include "bssc/info.hpp"
#include "bssc/prob.hpp"
#include "bssc/reduction.hpp"
#include "bssc/serialize.hpp"

namespace py = pybind11;
using namespace bssc;

namespace {

py::object json_to_py(const nlohmann::json& js) {
  return py::module_::import("json").attr("loads")(js.dump());
}

JointDist dist2(const std::vector<std::vector<double>>& rows) {
  std::vector<double> flat;
  const std::size_t n = rows.empty() ? 0 : rows[0].size();
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return JointDist({rows.size(), n}, std::move(flat));
}

JointUV joint4(const std::array<double, 4>& p) {
  return JointUV(p[0], p[1], p[2], p[3]);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Binary skew-symmetric broadcast channel toolkit: information "
            "primitives, inequality verification, auxiliary-variable "
            "reductions, and sum-rate bounds";

  // information primitives -------------------------------------------------
  m.def("binary_entropy", &binary_entropy, py::arg("p"),
        "Binary entropy h(p) in bits");
  m.def(
      "entropy",
      [](const std::vector<double>& p) { return entropy(ProbVec(p)); },
      py::arg("p"), "Shannon entropy of a distribution, in bits");
  m.def(
      "mutual_information",
      [](const std::vector<std::vector<double>>& joint) {
        return mutual_information(dist2(joint));
      },
      py::arg("joint"), "I(A;B) of a joint given as nested rows");
  m.def(
      "conditional_mi",
      [](const std::vector<std::vector<std::vector<double>>>& joint) {
        std::vector<double> flat;
        const std::size_t na = joint.empty() ? 0 : joint[0].size();
        const std::size_t nb = na == 0 || joint[0].empty() ? 0 : joint[0][0].size();
        for (const auto& plane : joint)
          for (const auto& row : plane) flat.insert(flat.end(), row.begin(), row.end());
        return conditional_mi(JointDist({joint.size(), na, nb}, std::move(flat)));
      },
      py::arg("joint"), "I(A;B|Z) of a joint over (z,a,b) given as nested rows");
  m.def(
      "bssc_channels",
      [] {
        const BroadcastChannel& bc = bssc_channel();
        py::dict d;
        d["ch1"] = std::vector<std::vector<double>>{bc.ch1.row(0), bc.ch1.row(1)};
        d["ch2"] = std::vector<std::vector<double>>{bc.ch2.row(0), bc.ch2.row(1)};
        return d;
      },
      "Transition matrices of the binary skew-symmetric broadcast channel");
  m.def(
      "single_user_capacity",
      [](const std::vector<std::vector<double>>& rows, double grid_step,
         double tol) {
        const CapacityResult r = single_user_capacity(Channel(rows), grid_step, tol);
        return py::make_tuple(r.value, r.argmax.values());
      },
      py::arg("rows"), py::arg("grid_step") = 0.01, py::arg("tol") = 1e-10,
      "Capacity of a binary-input channel and its maximizing input law");

  // inequality verification -------------------------------------------------
  m.def(
      "objective",
      [](const std::array<double, 4>& p, const std::string& func) {
        const ObjectiveValue o = objective(joint4(p), BoolFunc2::from_name(func));
        return py::make_tuple(o.lhs, o.rhs);
      },
      py::arg("p"), py::arg("func"),
      "(lhs, rhs) of the inequality at p = (p00,p01,p10,p11)");
  m.def(
      "lhs_closed_form_and",
      [](const std::array<double, 4>& p) { return lhs_closed_form_and(joint4(p)); },
      py::arg("p"));
  m.def(
      "lhs_closed_form_or",
      [](const std::array<double, 4>& p) { return lhs_closed_form_or(joint4(p)); },
      py::arg("p"));
  m.def(
      "and_or_bijection",
      [](const std::array<double, 4>& p) {
        return and_or_bijection(joint4(p)).as_array();
      },
      py::arg("p"));
  m.def(
      "canonical_class",
      [](const std::string& func) {
        return class_name(canonical_class(BoolFunc2::from_name(func)));
      },
      py::arg("func"), "Relabeling class: const0/const1/u/v/and/or/xor");
  m.def(
      "verify_grid",
      [](const std::string& function, double step, double tol) {
        if (function == "all") {
          nlohmann::json arr = nlohmann::json::array();
          for (const auto& r : verify_all(step, tol)) arr.push_back(to_json(r));
          return json_to_py(arr);
        }
        return json_to_py(
            to_json(verify_grid(BoolFunc2::from_name(function), step, tol)));
      },
      py::arg("function") = "all", py::arg("step") = 0.01, py::arg("tol") = 1e-9,
      "Exhaustive grid check; returns report dict(s)");
  m.def(
      "maximize_lhs",
      [](const std::string& func, double step, int iters) {
        const MaximizeResult r =
            maximize_lhs(BoolFunc2::from_name(func), step, iters);
        return py::make_tuple(r.value, r.arg.as_array());
      },
      py::arg("func"), py::arg("step") = 0.02, py::arg("refine_iters") = 200);
  m.def(
      "stationary_family",
      [](double t) { return stationary_family(t).as_array(); }, py::arg("t"));
  m.def(
      "and_first_order_residuals",
      [](const std::array<double, 4>& p) {
        const AndResiduals r = and_first_order_residuals(joint4(p));
        return py::make_tuple(r.boundary, r.r1, r.r2);
      },
      py::arg("p"), "(boundary, r1, r2)");
  m.def(
      "and_second_order_form",
      [](const std::array<double, 4>& p, const std::array<double, 4>& l) {
        return and_second_order_form(joint4(p),
                                     PerturbationUV{l[0], l[1], l[2], l[3]});
      },
      py::arg("p"), py::arg("l"));
  m.def(
      "xor_directional_derivative",
      [](const std::array<double, 4>& p, double a, double b, double c, double d) {
        return xor_directional_derivative(joint4(p), a, b, c, d);
      },
      py::arg("p"), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"));
  m.def(
      "gap_identity",
      [](double t) {
        const GapIdentity g = gap_identity(t);
        return py::make_tuple(g.numeric, g.closed);
      },
      py::arg("t"), "(numeric, closed) slack on the stationary family");

  // reductions ---------------------------------------------------------------
  m.def(
      "hajek_construct",
      [](const std::vector<std::size_t>& shape, const std::vector<double>& p) {
        return json_to_py(to_json(hajek_construct(JointDist(shape, p))));
      },
      py::arg("shape"), py::arg("p"),
      "Deterministic functionalization of a rank-3 joint (u,v,x)");
  m.def(
      "reduce_support",
      [](const std::vector<std::size_t>& shape, const std::vector<double>& p) {
        const JointDist dist(shape, p);
        ObjectiveFn objective;
        if (dist.rank() == 3 && dist.shape()[2] == 2) {
          objective = conjecture_lhs;
        } else if (dist.rank() == 2 && dist.shape()[1] == 2) {
          objective = marton_objective;
        }
        return json_to_py(to_json(reduce_support(dist, objective)));
      },
      py::arg("shape"), py::arg("p"),
      "Support-killing auxiliary reduction with a per-step certificate");

  // sum-rate bounds ----------------------------------------------------------
  m.def("difference_curve", &difference_curve, py::arg("x"),
        "I(X;Y1) - I(X;Y2) at P(X=0) = x");
  m.def("max_difference", [] {
    const MaxDifference d = max_difference();
    return py::make_tuple(d.d, d.x_d);
  });

  py::class_<EnvelopeResult>(m, "Envelope")
      .def_readonly("breakpoint", &EnvelopeResult::breakpoint)
      .def_readonly("chord_slope", &EnvelopeResult::chord_slope)
      .def_property_readonly(
          "mode",
          [](const EnvelopeResult& e) {
            return e.mode == EnvelopeMode::Analytic ? "analytic" : "numeric";
          })
      .def("g", &EnvelopeResult::g, py::arg("x"),
           "Lower convex envelope of the difference curve");
  m.def(
      "lower_convex_envelope",
      [](std::size_t samples, const std::string& mode) {
        return lower_convex_envelope(samples, mode == "numeric"
                                                  ? EnvelopeMode::Numeric
                                                  : EnvelopeMode::Analytic);
      },
      py::arg("samples") = 4096, py::arg("mode") = "analytic");

  m.def("marton_sum_rate",
        [](double grid_step, int refine_sweeps) {
          return json_to_py(to_json(marton_sum_rate(grid_step, refine_sweeps)));
        },
        py::arg("grid_step") = 1.0 / 200, py::arg("refine_sweeps") = 3);
  m.def("outer_sum_rate", [] { return json_to_py(to_json(outer_sum_rate())); });
  m.def("km_sum_rate", [] { return json_to_py(to_json(km_sum_rate())); });
  m.def(
      "rate_points",
      [](const std::string& bound) { return rate_points(bound); },
      py::arg("bound"), "Rate pairs on the bound's sum-rate face");
}
