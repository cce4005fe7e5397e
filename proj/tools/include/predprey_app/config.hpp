#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "predprey/dynamics.hpp"
#include "predprey/errors.hpp"
#include "predprey/grid.hpp"
#include "predprey/model.hpp"

namespace predprey::app {

/// Malformed config text; `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  int line() const noexcept { return line_; }

private:
  int line_;
};

/// Well-formed config whose values break an invariant.
class ValidationError : public Error {
public:
  using Error::Error;
};

enum class InitialRecipe { Constant, Cosine, TwoBump };

/// Initial data recipes, all nonnegative:
///   constant: base
///   cosine:   base + amp cos(pi x / L1) [cos(pi y / L2)]
///   two_bump: base + amp (g(x - c1) + g(x - c2)) with Gaussian g of width
///             bump_width * L and centres drawn from the run seed
/// A base of nullopt means "use the steady state".
struct InitialCondition {
  InitialRecipe recipe = InitialRecipe::Cosine;
  std::optional<double> u_base = 1.5;
  double u_amp = 0.5;
  std::optional<double> v_base = 0.5;
  double v_amp = 0.3;
  double bump_width = 0.1;
};

struct GridSpec {
  int dim = 2;
  std::array<int, 2> cells{64, 64};
  std::array<double, 2> length{4.0, 4.0};

  Grid make() const { return Grid(dim, cells, length); }
};

struct RunConfig {
  ModelParams params;
  GridSpec grid;
  SchemeConfig scheme;
  InitialCondition initial;
  double t_end = 15.0;
  double sample_every = 0.05;
  std::filesystem::path output_dir = "predprey_out";
  bool svg = false;
  std::uint64_t seed = 0;
};

/// Parses the line-oriented `key = value` grammar (`#` starts a comment,
/// dotted keys) on top of the defaults, then validates. Unknown or repeated
/// keys and malformed values raise ParseError; broken invariants raise
/// ValidationError.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Assigns one key; throws ParseError (line 0) for unknown keys or bad values.
void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value);

/// True for keys holding a number (valid sweep axes).
bool is_numeric_key(std::string_view key);

/// Every accepted key, in canonical order.
const std::vector<std::string_view>& config_keys();

/// Canonical `key = value` text; parse_config(to_config_text(c)) reproduces c.
std::string to_config_text(const RunConfig& cfg);

/// Throws ValidationError naming the violated invariant.
void validate(const RunConfig& cfg);

/// Builds the t = 0 state described by the config.
State make_initial_state(const RunConfig& cfg);

const char* to_string(InitialRecipe recipe) noexcept;

} // namespace predprey::app
