#include <fmt/format.h>

#include <CLI11.hpp>
#include <iostream>

#include "predprey/errors.hpp"
#include "predprey/oracle.hpp"
#include "predprey_app/acceptance.hpp"
#include "predprey_app/config.hpp"
#include "predprey_app/run.hpp"
#include "predprey_app/scenarios.hpp"

namespace {

using namespace predprey;
using namespace predprey::app;

int cmd_run(const std::string& path, bool svg, const std::string& output) {
  RunConfig cfg = load_config(path);
  if (svg) cfg.svg = true;
  if (!output.empty()) cfg.output_dir = output;
  const RunOutcome out = run_scenario(cfg);
  fmt::print("{}: {} samples, {} steps, {:.2f} s -> {}\n", to_string(out.status),
             out.records.size(), out.progress.steps, out.wall_seconds, cfg.output_dir.string());
  if (out.status == RunStatus::BlowUp) {
    fmt::print(stderr, "blow-up at t = {}: {}\n", out.failure_time.value_or(0.0),
               out.failure_reason);
  } else {
    if (!out.bounds_ok) fmt::print(stderr, "a priori bound exceeded\n");
    if (!out.energy_ok) fmt::print(stderr, "energy decay check failed\n");
  }
  return out.exit_code();
}

int cmd_sweep(const std::string& path, const std::string& axis, const std::string& values,
              unsigned workers, const std::string& output) {
  RunConfig cfg = load_config(path);
  if (!output.empty()) cfg.output_dir = output;
  const std::vector<double> list = parse_value_list(values);
  const SweepResult res =
      sweep(cfg, axis, list, workers > 0 ? std::optional<unsigned>(workers) : std::nullopt);
  for (const auto& row : res.rows) {
    fmt::print("{} = {:<12g} {:<12} {}\n", axis, row.value, row.status,
               row.l1_diff_u_prev ? fmt::format("l1 diff to previous {:.6g}", *row.l1_diff_u_prev)
                                  : std::string());
  }
  fmt::print("summary: {}\n", res.summary_csv.string());
  return res.exit_code();
}

int cmd_accept(const std::string& scenarios, const std::vector<int>& only, double scale,
               const std::string& work) {
  AcceptanceOptions opts;
  opts.only = only;
  opts.tolerance_scale = scale;
  if (!scenarios.empty()) {
    opts.scenarios_dir = scenarios;
  } else if (std::filesystem::is_directory(default_scenario_dir())) {
    opts.scenarios_dir = default_scenario_dir();
  }
  if (!work.empty()) opts.work_dir = work;
  opts.on_line = [](const std::string& line) { fmt::print("{}\n", line), std::fflush(stdout); };
  const AcceptanceReport rep = run_acceptance(opts);
  const auto failed = std::count_if(rep.results.begin(), rep.results.end(),
                                    [](const CriterionResult& r) { return !r.passed; });
  fmt::print("{} of {} criteria passed\n", rep.results.size() - static_cast<std::size_t>(failed),
             rep.results.size());
  return rep.all_passed() ? kExitOk : kExitAssertion;
}

int cmd_oracle_ode(const std::string& config, double u0, double v0, double t_end) {
  ModelParams p;
  if (!config.empty()) p = load_config(config).params;
  const auto traj = oracle::homogeneous_ode(u0, v0, p, t_end);
  fmt::print("t,u,v\n");
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    fmt::print("{:.17g},{:.17g},{:.17g}\n", traj.times[k], traj.u[k], traj.v[k]);
  }
  return kExitOk;
}

int cmd_oracle_heat(int n, int k, double d, double t) {
  fmt::print("{:.17g}\n", oracle::heat_eigenmode_error(n, k, d, t));
  return kExitOk;
}

int cmd_oracle_refinement(const std::vector<int>& cells, int k, double d, double t) {
  std::vector<std::pair<double, double>> pairs;
  fmt::print("n,h,error\n");
  for (int n : cells) {
    const double err = oracle::heat_eigenmode_error(n, k, d, t);
    pairs.emplace_back(1.0 / n, err);
    fmt::print("{},{:.17g},{:.17g}\n", n, 1.0 / n, err);
  }
  fmt::print("observed order {:.6f}\n", oracle::refinement_order(pairs));
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-volume predator-prey simulator with attractive transitional flux"};
  app.require_subcommand(1);

  std::string config, output, axis, values, scenarios, work;
  bool svg = false;
  unsigned workers = 0;
  std::vector<int> only;
  double scale = 1.0;

  auto* run = app.add_subcommand("run", "Run one scenario and write its outputs");
  run->add_option("config", config, "Config file")->required();
  run->add_flag("--svg", svg, "Also write SVG charts");
  run->add_option("-o,--output", output, "Override output.dir");

  auto* sw = app.add_subcommand("sweep", "Run a config for each value of one numeric key");
  sw->add_option("config", config, "Base config file")->required();
  sw->add_option("--axis", axis, "Numeric config key, e.g. params.eps")->required();
  sw->add_option("--values", values, "Comma-separated values")->required();
  sw->add_option("--workers", workers, "Parallel runs (default: PREDPREY_WORKERS or all cores)");
  sw->add_option("-o,--output", output, "Override output.dir");

  auto* acc = app.add_subcommand("accept", "Run the acceptance criteria");
  acc->add_option("--scenarios", scenarios, "Scenario directory (default: bundled library)");
  acc->add_option("--only", only, "Criterion ids to run")->delimiter(',');
  acc->add_option("--tolerance-scale", scale, "Multiply every tolerance by this factor");
  acc->add_option("--work-dir", work, "Keep run outputs here instead of a temporary directory");

  auto* orc = app.add_subcommand("oracle", "Independent reference computations");
  orc->require_subcommand(1);
  double u0 = 1.0, v0 = 1.0, t_end = 10.0, d = 1.0, t = 0.1;
  int n = 64, k = 1;
  std::vector<int> cells{32, 64, 128};
  auto* ode = orc->add_subcommand("ode", "Kinetic ODE by adaptive Dormand-Prince, as CSV");
  ode->add_option("--config", config, "Take params.* from this config");
  ode->add_option("--u0", u0);
  ode->add_option("--v0", v0);
  ode->add_option("--t-end", t_end);
  auto* heat = orc->add_subcommand("heat", "Max error of a diffusion eigenmode run");
  heat->add_option("-n", n);
  heat->add_option("-k", k);
  heat->add_option("-d", d);
  heat->add_option("-t", t);
  auto* refine = orc->add_subcommand("refinement", "Observed order of the heat eigenmode error");
  refine->add_option("--cells", cells)->delimiter(',');
  refine->add_option("-k", k);
  refine->add_option("-d", d);
  refine->add_option("-t", t);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (run->parsed()) return cmd_run(config, svg, output);
    if (sw->parsed()) return cmd_sweep(config, axis, values, workers, output);
    if (acc->parsed()) return cmd_accept(scenarios, only, scale, work);
    if (ode->parsed()) return cmd_oracle_ode(config, u0, v0, t_end);
    if (heat->parsed()) return cmd_oracle_heat(n, k, d, t);
    if (refine->parsed()) return cmd_oracle_refinement(cells, k, d, t);
  } catch (const ParseError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kExitConfig;
  } catch (const ValidationError& e) {
    fmt::print(stderr, "invalid config: {}\n", e.what());
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    fmt::print(stderr, "invalid argument: {}\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitAssertion;
  }
  return kExitOk;
}
