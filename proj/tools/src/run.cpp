#include "predprey_app/run.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <thread>

#include "predprey/errors.hpp"
#include "predprey/snapshot.hpp"
#include "predprey_app/svg.hpp"

namespace predprey::app {

namespace {

using nlohmann::json;

struct StopSignal {};

json config_echo(const RunConfig& cfg) {
  json out = json::object();
  const std::string text = to_config_text(cfg);
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string line = text.substr(pos, nl - pos);
    pos = nl == std::string::npos ? text.size() : nl + 1;
    const auto eq = line.find(" = ");
    if (eq != std::string::npos) out[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return out;
}

json optional_number(const std::optional<double>& x) {
  if (!x || !std::isfinite(*x)) return nullptr;
  return *x;
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

void write_manifest(const RunConfig& cfg, const RunOutcome& out) {
  json m;
  m["config"] = config_echo(cfg);
  m["steady_state"] = {{"u_star", out.context.steady.u_star},
                       {"v_star", out.context.steady.v_star},
                       {"regime", to_string(out.context.steady.regime)}};
  const StabilizationCertificate check = check_stabilization_condition(cfg.params);
  json cert = {{"holds", check.holds},
               {"chi_sq", check.chi_sq},
               {"threshold", finite_or_null(check.threshold)}};
  if (out.context.certificate) {
    cert["m2_hat"] = optional_number(out.context.certificate->m2_hat);
    cert["delta"] = optional_number(out.context.certificate->delta);
    cert["waiting_time"] = optional_number(out.context.certificate->waiting_time);
  } else {
    cert["absence_reason"] = out.certificate_note;
  }
  m["certificate"] = cert;
  m["energy_m2_hat"] = out.context.energy_m2_hat();
  m["fingerprints"] = {{"grid", grid_fingerprint(cfg)}, {"scheme", scheme_fingerprint(cfg)}};
  m["wall_clock_seconds"] = out.wall_seconds;
  m["steps"] = out.progress.steps;
  m["clamped_mass_total"] = out.progress.clamped_mass;
  m["clamped_cells_total"] = out.progress.clamped_cells;
  m["samples"] = out.records.size();

  json status = {{"status", to_string(out.status)}, {"exit_code", out.exit_code()}};
  if (out.failure_time) status["failure_time"] = *out.failure_time;
  if (!out.failure_reason.empty()) status["failure_reason"] = out.failure_reason;
  if (out.final_state) status["final_time"] = out.final_state->t;
  m["termination"] = status;

  if (out.energy) {
    const EnergyDecayReport& e = *out.energy;
    m["energy_check"] = {{"intervals", e.intervals},
                         {"slope_violations", e.slope_violations},
                         {"slope_pass_fraction", e.slope_pass_fraction()},
                         {"monotone_violations", e.monotone_violations},
                         {"max_slope_violation", e.max_slope_violation},
                         {"max_monotone_violation", e.max_monotone_violation},
                         {"budget_lhs", e.budget_lhs},
                         {"budget_rhs", e.budget_rhs},
                         {"budget_ok", e.budget_ok},
                         {"ok", out.energy_ok}};
  } else {
    m["energy_check"] = nullptr;
  }
  m["bounds_check"] = {{"max_prey_excess", finite_or_null(out.bounds.max_prey_excess)},
                       {"max_mass_excess", finite_or_null(out.bounds.max_mass_excess)},
                       {"ok", out.bounds_ok}};

  std::ofstream f(cfg.output_dir / "manifest.json");
  f << m.dump(2) << '\n';
  if (!f) throw Error("cannot write manifest in " + cfg.output_dir.string());
}

void write_charts(const RunConfig& cfg, const std::vector<DiagnosticsRecord>& records) {
  auto column = [&](auto member) {
    std::vector<double> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(r.*member);
    return out;
  };
  const std::vector<double> t = column(&DiagnosticsRecord::t);
  auto write = [&](const char* file, const std::string& chart) {
    std::ofstream f(cfg.output_dir / file);
    f << chart;
  };
  write("energy.svg", line_chart("Energy E and dissipation G",
                                 {{"E", t, column(&DiagnosticsRecord::E)},
                                  {"G", t, column(&DiagnosticsRecord::G)}},
                                 true));
  write("distances.svg",
        line_chart("Distance to the steady state",
                   {{"|u-u*| L1", t, column(&DiagnosticsRecord::dist_u_L1)},
                    {"|u-u*| L2", t, column(&DiagnosticsRecord::dist_u_L2)},
                    {"|v-v*| L1", t, column(&DiagnosticsRecord::dist_v_L1)},
                    {"|v-v*| L2", t, column(&DiagnosticsRecord::dist_v_L2)}},
                   true));
}

} // namespace

const char* to_string(RunStatus status) noexcept {
  switch (status) {
  case RunStatus::Completed: return "completed";
  case RunStatus::Stopped: return "stopped";
  case RunStatus::BlowUp: return "blow_up";
  }
  return "unknown";
}

int RunOutcome::exit_code() const noexcept {
  if (status == RunStatus::BlowUp) return kExitBlowUp;
  if (!bounds_ok || !energy_ok) return kExitAssertion;
  return kExitOk;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string grid_fingerprint(const RunConfig& cfg) {
  const auto& g = cfg.grid;
  const std::string canon =
      g.dim == 1 ? fmt::format("1|{}|{:.17g}", g.cells[0], g.length[0])
                 : fmt::format("2|{}|{}|{:.17g}|{:.17g}", g.cells[0], g.cells[1], g.length[0],
                               g.length[1]);
  return fmt::format("{:016x}", fnv1a(canon));
}

std::string scheme_fingerprint(const RunConfig& cfg) {
  const auto& s = cfg.scheme;
  return fmt::format("{:016x}",
                     fnv1a(fmt::format("{}|{:.17g}|{:.17g}|{:.17g}", to_string(s.taxis),
                                       s.cfl_safety, s.reaction_limiter, s.u_floor)));
}

RunOutcome run_scenario(const RunConfig& cfg, const RunOptions& options) {
  validate(cfg);
  const auto wall_start = std::chrono::steady_clock::now();

  RunOutcome out;
  out.initial = make_initial_state(cfg);
  const double v0_sup = out.initial.v.max();
  out.context = make_record_context(cfg.params, cfg.scheme, v0_sup);
  if (!out.context.certificate) {
    const auto check = check_stabilization_condition(cfg.params);
    out.certificate_note = fmt::format(
        "stabilization condition fails: chi^2 = {:.17g} >= threshold {:.17g}", check.chi_sq,
        check.threshold);
  }

  std::ofstream csv;
  if (options.write_outputs) {
    std::filesystem::create_directories(cfg.output_dir);
    csv.open(cfg.output_dir / "diagnostics.csv");
    if (!csv) throw Error("cannot create " + (cfg.output_dir / "diagnostics.csv").string());
    write_csv_header(csv);
    write_snapshot(cfg.output_dir / "initial_u.txt", out.initial.u, out.initial.t);
    write_snapshot(cfg.output_dir / "initial_v.txt", out.initial.v, out.initial.t);
  }

  const SampleSink sink = [&](const State& s, const RunProgress& progress) {
    out.records.push_back(record(s, out.context, progress));
    out.progress = progress;
    if (csv.is_open()) write_csv_row(csv, out.records.back());
    if (options.stop_when && options.stop_when(out.records.back())) {
      out.final_state = s;
      throw StopSignal{};
    }
  };

  try {
    out.final_state = run_to_time(out.initial, cfg.params, cfg.scheme, cfg.t_end,
                                  cfg.sample_every, sink, &out.progress);
    out.status = RunStatus::Completed;
  } catch (const StopSignal&) {
    out.status = RunStatus::Stopped;
  } catch (const BlowUp& e) {
    out.status = RunStatus::BlowUp;
    out.failure_time = e.time();
    out.failure_reason = e.what();
    out.final_state.reset();
  }
  if (csv.is_open()) csv.flush();

  if (out.status != RunStatus::BlowUp) {
    if (out.context.certificate) {
      out.energy = check_energy_decay(out.records, *out.context.certificate);
      // The slope and budget comparisons use left-endpoint values of G and so
      // depend on how finely the run is sampled; only monotonicity is asserted.
      out.energy_ok = out.energy->monotone_violations == 0;
    }
    const double measure = out.initial.u.grid().measure();
    out.bounds = check_a_priori_bounds(out.records, cfg.params, v0_sup, measure);
    const double prey_cap = std::max(v0_sup, cfg.params.m2_plus());
    const double mass_scale =
        std::max({1.0, out.records.front().mass_u,
                  (cfg.params.m1 + cfg.params.a * prey_cap) * measure});
    out.bounds_ok = out.bounds.max_prey_excess <= 1e-10 * std::max(1.0, prey_cap) &&
                    out.bounds.max_mass_excess <= 1e-10 * mass_scale;
  }

  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();

  if (options.write_outputs) {
    if (out.final_state) {
      write_snapshot(cfg.output_dir / "final_u.txt", out.final_state->u, out.final_state->t);
      write_snapshot(cfg.output_dir / "final_v.txt", out.final_state->v, out.final_state->t);
    }
    if (cfg.svg) write_charts(cfg, out.records);
    write_manifest(cfg, out);
  }
  return out;
}

int SweepResult::exit_code() const noexcept {
  int code = kExitOk;
  for (const auto& r : rows) code = std::max(code, r.exit_code);
  return code;
}

unsigned sweep_workers() {
  if (const char* env = std::getenv("PREDPREY_WORKERS")) {
    unsigned n = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec == std::errc() && ptr == s.data() + s.size() && n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<double> parse_value_list(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    std::string_view item =
        text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    pos = comma == std::string_view::npos ? text.size() + 1 : comma + 1;
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item.empty()) {
      if (comma == std::string_view::npos && out.empty() && pos > text.size()) break;
      throw ParseError("empty entry in value list", 0);
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size() || !std::isfinite(v)) {
      throw ParseError(fmt::format("'{}' is not a finite number", item), 0);
    }
    out.push_back(v);
  }
  return out;
}

SweepResult sweep(const RunConfig& base, std::string_view axis, std::span<const double> values,
                  std::optional<unsigned> workers) {
  if (values.empty()) throw ValidationError("sweep needs at least one value");
  if (!is_numeric_key(axis)) {
    throw ValidationError(fmt::format("sweep axis '{}' is not a numeric config key", axis));
  }

  SweepResult result;
  result.rows.resize(values.size());
  std::vector<std::optional<Field>> finals(values.size());

  auto run_one = [&](std::size_t k) {
    SweepRow& row = result.rows[k];
    row.value = values[k];
    row.dir = base.output_dir / fmt::format("{:03}_{}={}", k, axis, values[k]);
    RunConfig cfg = base;
    try {
      set_config_value(cfg, axis, fmt::format("{:.17g}", values[k]));
      cfg.output_dir = row.dir;
      validate(cfg);
    } catch (const Error& e) {
      row.status = "config_error";
      row.error = e.what();
      row.exit_code = kExitConfig;
      return;
    }
    try {
      const RunOutcome out = run_scenario(cfg);
      row.status = to_string(out.status);
      row.exit_code = out.exit_code();
      row.certified = out.context.certificate.has_value();
      if (!out.records.empty()) row.last = out.records.back();
      if (out.final_state) finals[k] = out.final_state->u;
      row.error = out.failure_reason;
    } catch (const std::exception& e) {
      row.status = "error";
      row.error = e.what();
      row.exit_code = kExitAssertion;
    }
  };

  const unsigned n_workers =
      std::max(1u, std::min<unsigned>(workers.value_or(sweep_workers()),
                                      static_cast<unsigned>(values.size())));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (unsigned w = 0; w < n_workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < values.size(); k = next++) run_one(k);
    });
  }
  for (auto& t : pool) t.join();

  for (std::size_t k = 1; k < values.size(); ++k) {
    const auto& a = finals[k - 1];
    const auto& b = finals[k];
    if (!a || !b || !(a->grid() == b->grid())) continue;
    double sum = 0.0;
    for (std::size_t i = 0; i < a->size(); ++i) sum += std::abs((*a)[i] - (*b)[i]);
    result.rows[k].l1_diff_u_prev = sum * a->grid().cell_volume();
  }

  std::filesystem::create_directories(base.output_dir);
  result.summary_csv = base.output_dir / "summary.csv";
  std::ofstream csv(result.summary_csv);
  csv << "value,status,exit_code,t_final,dist_u_L1,dist_u_L2,dist_v_L1,dist_v_L2,E,certified,"
         "l1_diff_u_prev\n";
  for (const auto& r : result.rows) {
    csv << fmt::format("{:.17g},{},{},", r.value, r.status, r.exit_code);
    if (r.last) {
      csv << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},", r.last->t,
                         r.last->dist_u_L1, r.last->dist_u_L2, r.last->dist_v_L1,
                         r.last->dist_v_L2, r.last->E);
    } else {
      csv << ",,,,,,";
    }
    csv << (r.certified ? "true" : "false") << ',';
    if (r.l1_diff_u_prev) csv << fmt::format("{:.17g}", *r.l1_diff_u_prev);
    csv << '\n';
  }
  if (!csv) throw Error("cannot write " + result.summary_csv.string());
  return result;
}

} // namespace predprey::app
