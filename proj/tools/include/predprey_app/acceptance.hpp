#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace predprey::app {

/// Deliberate defects used to prove the suite can fail.
enum class Fault { None, FlipLaplacianSign };

struct AcceptanceOptions {
  /// Criteria to run (1..11); empty runs all of them.
  std::vector<int> only;
  /// Multiplies every numeric tolerance; 1e-3 tightens them a thousandfold.
  double tolerance_scale = 1.0;
  Fault fault = Fault::None;
  /// Scenario files to use; the compiled-in scenarios when empty.
  std::optional<std::filesystem::path> scenarios_dir;
  /// Scratch space for run outputs; a fresh temporary directory when empty.
  std::optional<std::filesystem::path> work_dir;
  /// Receives one formatted line per finished criterion.
  std::function<void(const std::string&)> on_line;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

struct AcceptanceReport {
  std::vector<CriterionResult> results;
  bool all_passed() const noexcept;
};

/// Human-readable name of criterion `id`; throws ValidationError outside 1..11.
std::string criterion_name(int id);

/// "PASS  3 spatial order ..." style line.
std::string format_line(const CriterionResult& r);

AcceptanceReport run_acceptance(const AcceptanceOptions& options = {});

} // namespace predprey::app
