#include "predprey_app/acceptance.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "predprey/diagnostics.hpp"
#include "predprey/dynamics.hpp"
#include "predprey/errors.hpp"
#include "predprey/model.hpp"
#include "predprey/oracle.hpp"
#include "predprey_app/run.hpp"
#include "predprey_app/scenarios.hpp"

namespace predprey::app {

namespace {

struct Verdict {
  bool passed = false;
  std::string detail;
};

struct CriterionInfo {
  const char* name;
  double budget_seconds;
};

constexpr std::array<CriterionInfo, 11> kCriteria{{
    {"equilibrium residuals", 1.0},
    {"stabilization condition arithmetic", 1.0},
    {"spatial order", 120.0},
    {"reaction fidelity against ODE oracle", 30.0},
    {"prey maximum principle and logistic comparison", 120.0},
    {"discrete mass law", 60.0},
    {"energy decay after the waiting time", 300.0},
    {"stabilization toward the steady state", 600.0},
    {"entropy lower bound", 10.0},
    {"regularization family convergence", 300.0},
    {"determinism", 300.0},
}};

class Suite {
public:
  Suite(const AcceptanceOptions& opts, std::filesystem::path work)
      : opts_(opts), work_(std::move(work)) {}

  Verdict run(int id) {
    switch (id) {
    case 1: return equilibrium_residuals();
    case 2: return condition_arithmetic();
    case 3: return spatial_order();
    case 4: return reaction_fidelity();
    case 5: return maximum_principle();
    case 6: return mass_law();
    case 7: return energy_decay();
    case 8: return stabilization();
    case 9: return entropy_lower_bound();
    case 10: return regularization_family();
    case 11: return determinism();
    default: throw ValidationError(fmt::format("no acceptance criterion {}", id));
    }
  }

private:
  double tol(double base) const { return base * opts_.tolerance_scale; }

  RunConfig scenario(std::string_view name, std::string_view run_dir) const {
    RunConfig cfg = opts_.scenarios_dir ? load_scenario(*opts_.scenarios_dir, name)
                                        : builtin_scenario(name);
    cfg.output_dir = work_ / std::string(run_dir);
    cfg.svg = false;
    return cfg;
  }

  Verdict equilibrium_residuals() {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> pos(0.05, 5.0);
    std::uniform_real_distribution<double> m2d(-3.0, 6.0);
    double worst = 0.0;
    int coexist = 0;
    for (int k = 0; k < 1000; ++k) {
      ModelParams p;
      p.m1 = pos(rng);
      p.m2 = m2d(rng);
      p.a = pos(rng);
      p.b = pos(rng);
      const SteadyState ss = steady_states(p);
      if (ss.regime == Regime::Coexistence) ++coexist;
      // Relative residuals: the rate divided by the sum of magnitudes of its terms.
      const double ru = ss.u_star * (p.m1 - ss.u_star + p.a * ss.v_star);
      const double su = ss.u_star * (std::abs(p.m1) + ss.u_star + p.a * ss.v_star);
      const double rv = ss.v_star * (p.m2 - p.b * ss.u_star - ss.v_star);
      const double sv = ss.v_star * (std::abs(p.m2) + p.b * ss.u_star + ss.v_star);
      worst = std::max(worst, su > 0.0 ? std::abs(ru) / su : std::abs(ru));
      worst = std::max(worst, sv > 0.0 ? std::abs(rv) / sv : std::abs(rv));
    }
    return {worst <= tol(1e-12),
            fmt::format("max relative residual {:.3g} over 1000 sets ({} coexistence)", worst,
                        coexist)};
  }

  Verdict condition_arithmetic() {
    auto rel = [](double x, double ref) { return std::abs(x - ref) / std::abs(ref); };
    ModelParams p; // d1 = d2 = 1, m1 = 1, m2 = 2, a = b = 1, chi = 1
    const auto c1 = check_stabilization_condition(p);
    ModelParams q = p;
    q.m2 = 0.5;
    q.chi = 5.0;
    const auto c2 = check_stabilization_condition(q);
    q.chi = 6.0;
    const auto c2b = check_stabilization_condition(q);
    ModelParams r = p;
    r.m2 = -1.0;
    r.chi = 1e6;
    const auto c3 = check_stabilization_condition(r);

    const double e1 = rel(c1.threshold, 17.0 / 3.0);
    const double e2 = rel(c2.threshold, 32.0);
    const bool ok = e1 <= tol(1e-15) && c1.holds && e2 <= tol(1e-15) && c2.holds && !c2b.holds &&
                    std::isinf(c3.threshold) && c3.threshold > 0 && c3.holds;
    return {ok, fmt::format("thresholds {:.17g} (rel err {:.2g}), {:.17g} (rel err {:.2g}), {}; "
                            "holds {}/{}/{}, chi=6 holds {}",
                            c1.threshold, e1, c2.threshold, e2, c3.threshold, c1.holds, c2.holds,
                            c3.holds, c2b.holds)};
  }

  Verdict spatial_order() {
    const double sign = opts_.fault == Fault::FlipLaplacianSign ? -1.0 : 1.0;
    std::vector<std::pair<double, double>> heat;
    for (int n : {32, 64, 128}) {
      heat.emplace_back(1.0 / n, oracle::heat_eigenmode_error(n, 1, 1.0, 0.1, sign));
    }
    double heat_order = std::numeric_limits<double>::quiet_NaN();
    std::string heat_note;
    try {
      heat_order = oracle::refinement_order(heat);
    } catch (const Error& e) {
      heat_note = fmt::format(" ({})", e.what());
    }

    ModelParams p;
    SchemeConfig cfg;
    cfg.taxis = TaxisScheme::Central;
    const std::array<int, 3> cells{32, 64, 128};
    const double pi = std::numbers::pi;
    const auto errors = oracle::solver_refinement_errors(
        p, cfg, cells, 512, 1.0, 0.1, [pi](double x) {
          return std::pair{1.5 + 0.5 * std::cos(pi * x), 0.5 + 0.3 * std::cos(2.0 * pi * x)};
        });
    const double solver_order = oracle::refinement_order(errors);

    const bool ok = heat_order >= 1.9 && solver_order >= 1.9;
    return {ok, fmt::format("heat order {:.3f}{} (errors {:.3g}, {:.3g}, {:.3g}); nonlinear "
                            "central order {:.3f} (errors {:.3g}, {:.3g}, {:.3g})",
                            heat_order, heat_note, heat[0].second, heat[1].second,
                            heat[2].second, solver_order, errors[0].second, errors[1].second,
                            errors[2].second)};
  }

  Verdict reaction_fidelity() {
    ModelParams coexist;
    ModelParams extinct;
    extinct.m2 = 0.5;
    double worst = 0.0;
    std::string detail;
    for (const auto& [label, p] : {std::pair{"coexistence", coexist},
                                   std::pair{"extinction", extinct}}) {
      const Grid grid = Grid::line(8, 1.0);
      const double u0 = 0.4;
      const double v0 = 1.2;
      std::vector<double> times, u, v;
      double spread = 0.0;
      run_to_time(State{Field(grid, u0), Field(grid, v0), 0.0}, p, SchemeConfig{}, 10.0, 0.1,
                  [&](const State& s, const RunProgress&) {
                    times.push_back(s.t);
                    u.push_back(s.u[0]);
                    v.push_back(s.v[0]);
                    spread = std::max({spread, s.u.max() - s.u.min(), s.v.max() - s.v.min()});
                  });
      const auto ode = oracle::homogeneous_ode_at(u0, v0, p, times, 1e-12);
      double err = 0.0;
      for (std::size_t k = 0; k < times.size(); ++k) {
        err = std::max(err, std::abs(u[k] - ode.u[k]) / std::abs(ode.u[k]));
        err = std::max(err, std::abs(v[k] - ode.v[k]) / std::abs(ode.v[k]));
      }
      worst = std::max(worst, err);
      detail += fmt::format("{}{} max rel err {:.3g} at {} samples, spatial spread {:.2g}",
                            detail.empty() ? "" : "; ", label, err, times.size(), spread);
    }
    return {worst <= tol(1e-4), detail};
  }

  Verdict maximum_principle() {
    const RunConfig cfg = scenario("max_principle", "c05_max_principle");
    const RunOutcome out = run_scenario(cfg);
    if (out.status == RunStatus::BlowUp) return {false, "run blew up: " + out.failure_reason};
    constexpr double v0_sup = 3.0;
    double cap_excess = -std::numeric_limits<double>::infinity();
    double logistic_excess = cap_excess;
    for (const auto& r : out.records) {
      cap_excess = std::max(cap_excess, r.linf_v - v0_sup);
      logistic_excess =
          std::max(logistic_excess, r.linf_v - logistic_comparison(v0_sup, cfg.params.m2, r.t));
    }
    const bool ok = cfg.params.m2 == 2.0 && out.initial.v.max() <= v0_sup &&
                    cap_excess <= tol(1e-10) && logistic_excess <= tol(1e-8) * v0_sup;
    return {ok, fmt::format("sup v0 {:.6f}; max(v - 3) = {:.3g}; max(v - y(t)) = {:.3g} "
                            "over {} samples to t = {}",
                            out.initial.v.max(), cap_excess, logistic_excess, out.records.size(),
                            out.records.back().t)};
  }

  Verdict mass_law() {
    const RunConfig cfg = scenario("mass_law", "c06_mass_law");
    const ModelParams& p = cfg.params;
    const SchemeConfig& scheme = cfg.scheme;
    State s = make_initial_state(cfg);

    auto reaction_mass = [&](const State& st) { return integrate(reaction_rates(st, p).u); };
    auto left_residual = [&](const State& st, double dt) {
      StepStats stats;
      const State next = step_with_dt(st, p, scheme, dt, &stats);
      if (stats.clamped_cells != 0) throw Error("positivity clamp fired during mass-law probe");
      return std::abs((integrate(next.u) - integrate(st.u)) / dt - reaction_mass(st));
    };

    double worst_telescoping = 0.0;
    double worst_ratio_dev = 0.0;
    double ratio_lo = std::numeric_limits<double>::infinity();
    double ratio_hi = -ratio_lo;
    constexpr int kProbes = 12;
    for (int k = 0; k < kProbes; ++k) {
      const double dt = stable_dt(s, p, scheme);
      StepStats stats;
      const State next = step_with_dt(s, p, scheme, dt, &stats);
      if (stats.clamped_cells != 0) return {false, "positivity clamp fired during mass-law probe"};

      // The step's mass change equals the trapezoidal average of the reaction
      // mass at the two Heun stages; transport contributes nothing.
      const FieldPair r = rhs(s, p, scheme);
      const State stage{s.u + dt * r.u, s.v + dt * r.v, s.t + dt};
      const double r0 = reaction_mass(s);
      const double rs = reaction_mass(stage);
      const double m0 = integrate(s.u);
      const double dm = (integrate(next.u) - m0) / dt;
      const double scale = std::max({1.0, std::abs(r0), std::abs(rs), m0});
      worst_telescoping = std::max(worst_telescoping, std::abs(dm - 0.5 * (r0 + rs)) / scale);

      // Against the left-point reaction mass the residual is first order in dt.
      const double ratio = left_residual(s, 0.5 * dt) / left_residual(s, dt);
      ratio_lo = std::min(ratio_lo, ratio);
      ratio_hi = std::max(ratio_hi, ratio);
      worst_ratio_dev = std::max(worst_ratio_dev, std::abs(ratio - 0.5));

      // Move further along the trajectory between probes.
      s = next;
      for (int j = 0; j < 5; ++j) s = step(s, p, scheme);
    }
    const bool ok = worst_telescoping <= tol(1e-10) && worst_ratio_dev <= tol(0.1);
    return {ok, fmt::format("{} probes: max scaled mass residual {:.3g}; halving-dt residual "
                            "ratio in [{:.4f}, {:.4f}]",
                            kProbes, worst_telescoping, ratio_lo, ratio_hi)};
  }

  const RunOutcome& energy_run() {
    if (!energy_run_) {
      energy_cfg_ = scenario("energy_decay", "c07_energy_decay");
      energy_run_ = run_scenario(energy_cfg_);
    }
    return *energy_run_;
  }

  Verdict energy_decay() {
    const RunOutcome& out = energy_run();
    if (out.status == RunStatus::BlowUp) return {false, "run blew up: " + out.failure_reason};
    if (!out.context.certificate) return {false, "no stabilization certificate"};
    const auto& cert = *out.context.certificate;
    EnergyDecayTolerances t;
    t.slope_scale = opts_.tolerance_scale;
    t.budget = tol(1e-6);
    const EnergyDecayReport rep = check_energy_decay(out.records, cert, t);
    const bool ok = rep.intervals > 0 && rep.monotone_violations == 0 &&
                    rep.slope_pass_fraction() >= 0.99 && rep.budget_ok;
    return {ok, fmt::format("delta {:.6g}, m2_hat {:.6g}, T_E {:.4g}; {} intervals, {} slope "
                            "violations ({:.2f}% pass), {} monotonicity violations; budget "
                            "{:.6g} <= {:.6g}",
                            *cert.delta, *cert.m2_hat, *cert.waiting_time, rep.intervals,
                            rep.slope_violations, 100.0 * rep.slope_pass_fraction(),
                            rep.monotone_violations, rep.budget_lhs, rep.budget_rhs)};
  }

  Verdict stabilization() {
    const double target = tol(1e-3);
    RunOptions coexist_opts;
    coexist_opts.stop_when = [target](const DiagnosticsRecord& r) {
      return r.dist_u_L1 <= target && r.dist_v_L1 <= target;
    };
    const RunConfig c1 = scenario("stabilization", "c08_stabilization");
    const RunOutcome o1 = run_scenario(c1, coexist_opts);

    RunOptions extinct_opts;
    // With v* = 0 the L1 distance of v is the prey mass.
    extinct_opts.stop_when = [target](const DiagnosticsRecord& r) {
      return r.dist_v_L1 <= target;
    };
    const RunConfig c2 = scenario("extinction", "c08_extinction");
    const RunOutcome o2 = run_scenario(c2, extinct_opts);

    const bool regimes = steady_states(c1.params).regime == Regime::Coexistence &&
                         steady_states(c2.params).regime == Regime::PreyExtinction;
    const bool ok = regimes && c1.t_end <= 200.0 && c2.t_end <= 200.0 &&
                    o1.status == RunStatus::Stopped && o2.status == RunStatus::Stopped;
    auto t_of = [](const RunOutcome& o) {
      return o.records.empty() ? std::numeric_limits<double>::quiet_NaN() : o.records.back().t;
    };
    return {ok,
            fmt::format("coexistence {} at t = {} (dist_u_L1 {:.3g}, dist_v_L1 {:.3g}); "
                        "extinction {} at t = {} (int v {:.3g})",
                        to_string(o1.status), t_of(o1), o1.records.back().dist_u_L1,
                        o1.records.back().dist_v_L1, to_string(o2.status), t_of(o2),
                        o2.records.back().dist_v_L1)};
  }

  Verdict entropy_lower_bound() {
    std::mt19937_64 rng(77);
    std::normal_distribution<double> logn(0.0, 1.5);
    std::uniform_int_distribution<int> pick(0, 3);
    std::uniform_real_distribution<double> near(-0.05, 0.05);
    const std::array<Grid, 2> grids{Grid::square(8, 1.3), Grid::line(16, 2.0)};
    double worst = -std::numeric_limits<double>::infinity();
    for (double xi : {0.0, 0.5, 1.0, 10.0}) {
      for (int k = 0; k < 1000; ++k) {
        const Grid& g = grids[static_cast<std::size_t>(k % 2)];
        Field f(g);
        const int kind = pick(rng);
        for (double& x : f.values()) {
          // Mix wide log-normal fields with fields hugging xi, where the bound is tightest.
          x = kind == 0 && xi > 0.0 ? xi * (1.0 + near(rng)) : std::exp(logn(rng)) * (xi + 1.0);
        }
        double l1 = 0.0;
        for (double x : f.values()) l1 += std::abs(x - xi);
        const double scale = std::max(1.0, l1 * g.cell_volume());
        worst = std::max(worst, check_h_lower_bound(xi, f, 1e-14) / scale);
      }
    }
    return {worst <= tol(1e-12),
            fmt::format("max scaled residual {:.3g} over 4000 fields", worst)};
  }

  Verdict regularization_family() {
    RunConfig base = scenario("eps_family", "c10_eps_family");
    const std::array<double, 4> eps{0.1, 0.05, 0.025, 0.0125};
    const SweepResult res = sweep(base, "params.eps", eps);
    std::vector<double> diffs;
    for (const auto& row : res.rows) {
      if (row.status != "completed") {
        return {false, fmt::format("eps = {} ended with {}: {}", row.value, row.status, row.error)};
      }
      if (row.l1_diff_u_prev) diffs.push_back(*row.l1_diff_u_prev);
    }
    bool decreasing = diffs.size() == eps.size() - 1;
    for (std::size_t k = 1; k < diffs.size(); ++k) decreasing &= diffs[k] < diffs[k - 1];
    std::string list;
    for (double d : diffs) list += fmt::format("{}{:.4g}", list.empty() ? "" : ", ", d);
    return {decreasing && base.t_end == 5.0,
            fmt::format("successive L1 differences of u at t = {}: {}", base.t_end, list)};
  }

  Verdict determinism() {
    const RunOutcome& first = energy_run();
    RunConfig again = energy_cfg_;
    again.output_dir = work_ / "c11_energy_decay_rerun";
    const RunOutcome second = run_scenario(again);
    auto slurp = [](const std::filesystem::path& p) {
      std::ifstream in(p, std::ios::binary);
      return std::string(std::istreambuf_iterator<char>(in), {});
    };
    const std::string a = slurp(energy_cfg_.output_dir / "diagnostics.csv");
    const std::string b = slurp(again.output_dir / "diagnostics.csv");
    const bool ok = !a.empty() && a == b && first.status == second.status;
    return {ok, fmt::format("diagnostics CSVs of two runs: {} bytes vs {} bytes, {}", a.size(),
                            b.size(), a == b ? "bit-identical" : "DIFFERENT")};
  }

  const AcceptanceOptions& opts_;
  std::filesystem::path work_;
  RunConfig energy_cfg_;
  std::optional<RunOutcome> energy_run_;
};

std::filesystem::path fresh_work_dir() {
  const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
  std::filesystem::path dir =
      std::filesystem::temp_directory_path() / fmt::format("predprey_accept_{}", stamp);
  std::filesystem::create_directories(dir);
  return dir;
}

} // namespace

bool AcceptanceReport::all_passed() const noexcept {
  return std::all_of(results.begin(), results.end(),
                     [](const CriterionResult& r) { return r.passed; });
}

std::string criterion_name(int id) {
  if (id < 1 || id > static_cast<int>(kCriteria.size())) {
    throw ValidationError(fmt::format("no acceptance criterion {}", id));
  }
  return kCriteria[static_cast<std::size_t>(id - 1)].name;
}

std::string format_line(const CriterionResult& r) {
  return fmt::format("{} {:>2} {}: {} [{:.2f} s of {:.0f} s]", r.passed ? "PASS" : "FAIL", r.id,
                     r.name, r.detail, r.seconds, r.budget_seconds);
}

AcceptanceReport run_acceptance(const AcceptanceOptions& options) {
  std::vector<int> ids = options.only;
  if (ids.empty()) {
    for (int id = 1; id <= static_cast<int>(kCriteria.size()); ++id) ids.push_back(id);
  }
  for (int id : ids) (void)criterion_name(id);
  if (!(options.tolerance_scale > 0.0)) throw ValidationError("tolerance scale must be > 0");
  if (options.scenarios_dir) {
    for (auto name : scenario_names()) (void)load_scenario(*options.scenarios_dir, name);
  }

  const bool own_dir = !options.work_dir.has_value();
  const std::filesystem::path work = own_dir ? fresh_work_dir() : *options.work_dir;
  std::filesystem::create_directories(work);

  Suite suite(options, work);
  AcceptanceReport report;
  for (int id : ids) {
    CriterionResult r;
    r.id = id;
    r.name = criterion_name(id);
    r.budget_seconds = kCriteria[static_cast<std::size_t>(id - 1)].budget_seconds;
    const auto start = std::chrono::steady_clock::now();
    try {
      const Verdict v = suite.run(id);
      r.passed = v.passed;
      r.detail = v.detail;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = fmt::format("error: {}", e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.seconds > r.budget_seconds) {
      r.passed = false;
      r.detail += fmt::format("; over the runtime budget");
    }
    if (options.on_line) options.on_line(format_line(r));
    report.results.push_back(std::move(r));
  }

  if (own_dir) {
    std::error_code ignored;
    std::filesystem::remove_all(work, ignored);
  }
  return report;
}

} // namespace predprey::app
