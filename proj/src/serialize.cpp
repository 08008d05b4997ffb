#include "bssc/serialize.hpp"

#include <cmath>
#include <sstream>

namespace bssc {

using nlohmann::json;

json to_json(const ProbVec& d) {
  return json{{"shape", {d.size()}}, {"p", d.values()}};
}

json to_json(const JointDist& j) {
  return json{{"shape", j.shape()}, {"p", j.table()}};
}

json to_json(const Channel& ch) {
  json rows = json::array();
  for (std::size_t x = 0; x < ch.input_size(); ++x) rows.push_back(ch.row(x));
  return json{{"rows", rows}};
}

ProbVec probvec_from_json(const json& js) {
  return ProbVec(js.at("p").get<std::vector<double>>());
}

JointDist jointdist_from_json(const json& js) {
  return JointDist(js.at("shape").get<std::vector<std::size_t>>(),
                   js.at("p").get<std::vector<double>>());
}

Channel channel_from_json(const json& js) {
  return Channel(js.at("rows").get<std::vector<std::vector<double>>>());
}

json to_json(const ViolationReport& r) {
  return json{{"function", r.func.bits()},
              {"class", class_name(r.func.func_class())},
              {"step", r.grid_step},
              {"points", r.points_checked},
              {"max_gap", r.max_gap},
              {"argmax", r.arg_max.as_array()},
              {"violated", r.violated}};
}

json to_json(const SumRateReport& r) {
  return json{{"bound", r.bound_id},
              {"value", r.value},
              {"achiever",
               {{"p_aux", r.aux_dist}, {"p_x0_given_aux", r.x0_given_aux}}},
              {"components", r.components},
              {"rate_point", {r.rate_point.first, r.rate_point.second}}};
}

json to_json(const CapacityResult& r) {
  return json{{"value", r.value}, {"argmax", to_json(r.argmax)}};
}

json to_json(const MaximizeResult& r) {
  return json{{"value", r.value}, {"argmax", r.arg.as_array()}};
}

json to_json(const FunctionalizationResult& r) {
  json f = json::array();
  for (std::size_t u = 0; u < r.u_size; ++u) {
    json fu = json::array();
    for (std::size_t v = 0; v < r.v_size; ++v) {
      json fv = json::array();
      for (std::size_t w = 0; w < r.w_dist.size(); ++w) fv.push_back(r.map(u, v, w));
      fu.push_back(fv);
    }
    f.push_back(fu);
  }
  return json{{"w", to_json(r.w_dist)}, {"f", f}};
}

json certificate_to_json(const std::vector<ReductionStep>& steps) {
  json arr = json::array();
  for (const ReductionStep& s : steps) {
    json step{{"axis", s.axis == 0 ? "u" : s.axis == 1 ? "v" : "w"},
              {"L", s.L},
              {"eps", s.epsilon}};
    if (!std::isnan(s.obj_before)) {
      step["obj_before"] = s.obj_before;
      step["obj_after"] = s.obj_after;
    }
    arr.push_back(step);
  }
  return arr;
}

json to_json(const ReductionResult& r) {
  return json{{"reduced", to_json(r.reduced)},
              {"certificate", certificate_to_json(r.certificate)}};
}

std::string envelope_csv(const EnvelopeResult& env, std::size_t samples) {
  std::ostringstream out;
  out.precision(17);
  out << "x,delta,g\n";
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(samples - 1);
    out << x << ',' << difference_curve(x) << ',' << env.g(x) << '\n';
  }
  return out.str();
}

std::string diffcurve_csv(std::size_t samples) {
  std::ostringstream out;
  out.precision(17);
  out << "x,delta\n";
  for (std::size_t i = 0; i < samples; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(samples - 1);
    out << x << ',' << difference_curve(x) << '\n';
  }
  return out.str();
}

std::string rate_points_csv(const std::string& bound_id,
                            const std::vector<std::pair<double, double>>& pts) {
  std::ostringstream out;
  out.precision(17);
  out << "R1,R2,bound_id\n";
  for (const auto& [r1, r2] : pts) {
    out << r1 << ',' << r2 << ',' << bound_id << '\n';
  }
  return out.str();
}

}  // namespace bssc
