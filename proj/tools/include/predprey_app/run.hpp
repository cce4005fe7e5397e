#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "predprey/diagnostics.hpp"
#include "predprey/dynamics.hpp"
#include "predprey_app/config.hpp"

namespace predprey::app {

/// Process exit codes shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitAssertion = 1, kExitBlowUp = 2, kExitConfig = 3 };

enum class RunStatus { Completed, Stopped, BlowUp };
const char* to_string(RunStatus status) noexcept;

struct RunOptions {
  bool write_outputs = true;
  /// Checked on every sample; returning true ends the run early (status Stopped).
  std::function<bool(const DiagnosticsRecord&)> stop_when;
};

struct RunOutcome {
  RunStatus status = RunStatus::Completed;
  std::optional<double> failure_time;
  std::string failure_reason;
  std::vector<DiagnosticsRecord> records;
  State initial;
  std::optional<State> final_state; ///< empty after a blow-up
  RunProgress progress;
  double wall_seconds = 0.0;
  RecordContext context;
  std::string certificate_note; ///< why no certificate exists, if none does
  std::optional<EnergyDecayReport> energy;
  BoundsReport bounds;
  bool bounds_ok = true;
  bool energy_ok = true; ///< E non-increasing after T_E (when certified)

  int exit_code() const noexcept;
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);
std::string grid_fingerprint(const RunConfig& cfg);
std::string scheme_fingerprint(const RunConfig& cfg);

/// Runs one scenario. With write_outputs the output directory (created if
/// missing) receives diagnostics.csv, initial/final snapshots of u and v,
/// manifest.json and, when cfg.svg is set, energy.svg and distances.svg.
/// BlowUp is reported through the outcome, not thrown.
RunOutcome run_scenario(const RunConfig& cfg, const RunOptions& options = {});

struct SweepRow {
  double value = 0.0;
  std::filesystem::path dir;
  std::string status; ///< completed / stopped / blow_up / config_error / error
  std::string error;
  int exit_code = kExitOk;
  std::optional<DiagnosticsRecord> last;
  bool certified = false;
  /// L1 distance between this run's final u and the previous value's final u.
  std::optional<double> l1_diff_u_prev;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::filesystem::path summary_csv;
  int exit_code() const noexcept;
};

/// Worker count from PREDPREY_WORKERS, else the hardware concurrency (>= 1).
unsigned sweep_workers();

/// Runs base with `axis` set to each value, in parallel, each in
/// `<base.output_dir>/<index>_<axis>=<value>`, and writes summary.csv into
/// base.output_dir. Throws ValidationError for an empty value list or a
/// non-numeric axis; failures of individual runs are recorded in their rows.
SweepResult sweep(const RunConfig& base, std::string_view axis, std::span<const double> values,
                  std::optional<unsigned> workers = std::nullopt);

/// Parses "0.1,0.05,0.025"; throws ParseError on malformed entries.
std::vector<double> parse_value_list(std::string_view text);

} // namespace predprey::app
