// Command line front end: every computation is a subcommand emitting JSON
// (or CSV where tabular) to stdout or --out. Exit codes: 0 success, 2 when a
// verification sweep flags a violation, 1 on usage or I/O errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bssc/bounds.hpp"
#include "bssc/conjecture.hpp"
#include "bssc/info.hpp"
#include "bssc/reduction.hpp"
#include "bssc/serialize.hpp"

namespace {

using nlohmann::json;

struct RunConfig {
  std::string out_path;
  std::string format;  // "", "json", or "csv"
};

bool wants_csv(const RunConfig& cfg) {
  if (cfg.format == "csv") return true;
  if (cfg.format.empty() && cfg.out_path.size() >= 4 &&
      cfg.out_path.substr(cfg.out_path.size() - 4) == ".csv") {
    return true;
  }
  return false;
}

int emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(cfg.out_path);
  if (!out) {
    std::cerr << "error: cannot open output path '" << cfg.out_path << "'\n";
    return 1;
  }
  out << text;
  return out.good() ? 0 : 1;
}

int emit_json(const RunConfig& cfg, const json& js) {
  return emit(cfg, js.dump(2) + "\n");
}

std::optional<json> load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot read input file '" << path << "'\n";
    return std::nullopt;
  }
  try {
    json js;
    in >> js;
    return js;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON in '" << path << "': " << e.what() << "\n";
    return std::nullopt;
  }
}

void add_io_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--out", cfg.out_path, "Write the report to this path");
  cmd->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical toolkit for the binary skew-symmetric broadcast "
               "channel: inequality verification and sum-rate bounds"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* cmd_capacity =
      app.add_subcommand("capacity", "Single-user capacities of both receivers");
  add_io_options(cmd_capacity, cfg);

  std::string function = "all";
  double step = 0.01;
  double tol = 1e-9;
  auto* cmd_verify = app.add_subcommand(
      "verify", "Exhaustive grid check of the sum-rate inequality");
  cmd_verify->add_option("--function", function,
                         "Truth table (e.g. 0110), alias (and, or, xor, u, v, "
                         "const0, const1), or 'all'");
  cmd_verify->add_option("--step", step, "Grid step; must divide 1");
  cmd_verify->add_option("--tol", tol, "Violation threshold in bits");
  add_io_options(cmd_verify, cfg);

  std::string max_function;
  double max_step = 0.02;
  int max_iters = 200;
  auto* cmd_maximize = app.add_subcommand(
      "maximize", "Maximize the inequality's left side for one function");
  cmd_maximize->add_option("--function", max_function, "Truth table or alias")
      ->required();
  cmd_maximize->add_option("--step", max_step, "Grid step for the initial scan");
  cmd_maximize->add_option("--iters", max_iters, "Ascent sweeps per move size");
  add_io_options(cmd_maximize, cfg);

  std::string bound;
  auto* cmd_sumrate =
      app.add_subcommand("sumrate", "Sum-rate evaluation of one bound");
  cmd_sumrate->add_option("--bound", bound, "marton, outer, or km")
      ->required()
      ->check(CLI::IsMember({"marton", "outer", "km"}));
  add_io_options(cmd_sumrate, cfg);

  std::size_t samples = 4096;
  std::string mode = "analytic";
  auto* cmd_envelope = app.add_subcommand(
      "envelope", "Lower convex envelope of the difference curve");
  cmd_envelope->add_option("--samples", samples, "Sample count");
  cmd_envelope->add_option("--mode", mode, "analytic or numeric")
      ->check(CLI::IsMember({"analytic", "numeric"}));
  add_io_options(cmd_envelope, cfg);

  std::size_t curve_samples = 257;
  auto* cmd_diffcurve =
      app.add_subcommand("diffcurve", "Sampled difference curve");
  cmd_diffcurve->add_option("--samples", curve_samples, "Sample count");
  add_io_options(cmd_diffcurve, cfg);

  std::string input_path;
  auto* cmd_reduce = app.add_subcommand(
      "reduce", "Shrink auxiliary alphabets of a joint distribution");
  cmd_reduce->add_option("--input", input_path, "JSON joint distribution")
      ->required();
  add_io_options(cmd_reduce, cfg);

  auto* cmd_hajek = app.add_subcommand(
      "hajek", "Deterministic functionalization via interval construction");
  cmd_hajek->add_option("--input", input_path, "JSON joint over (u,v,x)")
      ->required();
  add_io_options(cmd_hajek, cfg);

  std::string points_bound;
  auto* cmd_points =
      app.add_subcommand("points", "Rate pairs on one bound's sum-rate face");
  cmd_points->add_option("--bound", points_bound, "marton, outer, or km")
      ->required()
      ->check(CLI::IsMember({"marton", "outer", "km"}));
  add_io_options(cmd_points, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (app.got_subcommand(cmd_capacity)) {
      const bssc::BroadcastChannel& bc = bssc::bssc_channel();
      const json report{{"ch1", bssc::to_json(bssc::single_user_capacity(bc.ch1))},
                        {"ch2", bssc::to_json(bssc::single_user_capacity(bc.ch2))}};
      return emit_json(cfg, report);
    }

    if (app.got_subcommand(cmd_verify)) {
      bool violated = false;
      json report;
      if (function == "all") {
        report = json::array();
        for (const auto& r : bssc::verify_all(step, tol)) {
          report.push_back(bssc::to_json(r));
          violated = violated || r.violated;
        }
      } else {
        const auto r =
            bssc::verify_grid(bssc::BoolFunc2::from_name(function), step, tol);
        report = bssc::to_json(r);
        violated = r.violated;
      }
      const int rc = emit_json(cfg, report);
      return rc != 0 ? rc : (violated ? 2 : 0);
    }

    if (app.got_subcommand(cmd_maximize)) {
      const auto r = bssc::maximize_lhs(bssc::BoolFunc2::from_name(max_function),
                                        max_step, max_iters);
      json js = bssc::to_json(r);
      js["function"] = bssc::BoolFunc2::from_name(max_function).bits();
      return emit_json(cfg, js);
    }

    if (app.got_subcommand(cmd_sumrate)) {
      bssc::SumRateReport r;
      if (bound == "marton") {
        r = bssc::marton_sum_rate();
      } else if (bound == "outer") {
        r = bssc::outer_sum_rate();
      } else {
        r = bssc::km_sum_rate();
      }
      return emit_json(cfg, bssc::to_json(r));
    }

    if (app.got_subcommand(cmd_envelope)) {
      const auto env = bssc::lower_convex_envelope(
          samples, mode == "analytic" ? bssc::EnvelopeMode::Analytic
                                      : bssc::EnvelopeMode::Numeric);
      if (wants_csv(cfg)) {
        return emit(cfg, bssc::envelope_csv(env, samples));
      }
      json rows = json::array();
      for (std::size_t i = 0; i < samples; ++i) {
        const double x = static_cast<double>(i) / static_cast<double>(samples - 1);
        rows.push_back({x, bssc::difference_curve(x), env.g(x)});
      }
      return emit_json(cfg, json{{"mode", mode},
                                 {"breakpoint", env.breakpoint},
                                 {"chord_slope", env.chord_slope},
                                 {"columns", {"x", "delta", "g"}},
                                 {"samples", rows}});
    }

    if (app.got_subcommand(cmd_diffcurve)) {
      if (wants_csv(cfg)) {
        return emit(cfg, bssc::diffcurve_csv(curve_samples));
      }
      json rows = json::array();
      for (std::size_t i = 0; i < curve_samples; ++i) {
        const double x =
            static_cast<double>(i) / static_cast<double>(curve_samples - 1);
        rows.push_back({x, bssc::difference_curve(x)});
      }
      return emit_json(cfg, json{{"columns", {"x", "delta"}}, {"samples", rows}});
    }

    if (app.got_subcommand(cmd_reduce)) {
      const auto js = load_json(input_path);
      if (!js) return 1;
      const bssc::JointDist p = bssc::jointdist_from_json(*js);
      bssc::ObjectiveFn objective;
      if (p.rank() == 3 && p.shape()[2] == 2) {
        objective = bssc::conjecture_lhs;
      } else if (p.rank() == 2 && p.shape()[1] == 2) {
        objective = bssc::marton_objective;
      }
      return emit_json(cfg, bssc::to_json(bssc::reduce_support(p, objective)));
    }

    if (app.got_subcommand(cmd_hajek)) {
      const auto js = load_json(input_path);
      if (!js) return 1;
      return emit_json(
          cfg, bssc::to_json(bssc::hajek_construct(bssc::jointdist_from_json(*js))));
    }

    if (app.got_subcommand(cmd_points)) {
      const auto pts = bssc::rate_points(points_bound);
      if (wants_csv(cfg)) {
        return emit(cfg, bssc::rate_points_csv(points_bound, pts));
      }
      json rows = json::array();
      for (const auto& [r1, r2] : pts) rows.push_back({r1, r2});
      return emit_json(cfg, json{{"bound", points_bound}, {"points", rows}});
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
