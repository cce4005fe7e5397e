#include "predprey_app/config.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace predprey::app {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view value) {
  double out = 0.0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
    throw ParseError(fmt::format("{}: '{}' is not a finite number", key, value), 0);
  }
  return out;
}

long long parse_integer(std::string_view key, std::string_view value) {
  long long out = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(fmt::format("{}: '{}' is not an integer", key, value), 0);
  }
  return out;
}

int parse_int(std::string_view key, std::string_view value) {
  const long long v = parse_integer(key, value);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw ParseError(fmt::format("{}: '{}' is out of range", key, value), 0);
  }
  return static_cast<int>(v);
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw ParseError(fmt::format("{}: '{}' is not a boolean", key, value), 0);
}

std::optional<double> parse_base(std::string_view key, std::string_view value) {
  if (value == "auto") return std::nullopt;
  return parse_double(key, value);
}

std::string fmt_double(double x) { return fmt::format("{:.17g}", x); }
std::string fmt_base(const std::optional<double>& x) { return x ? fmt_double(*x) : "auto"; }

struct KeySpec {
  std::string_view name;
  bool numeric;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define PP_DOUBLE_KEY(NAME, MEMBER)                                                           \
  KeySpec {                                                                                   \
    NAME, true, [](RunConfig& c, std::string_view v) { c.MEMBER = parse_double(NAME, v); }, \
        [](const RunConfig& c) { return fmt_double(c.MEMBER); }                              \
  }

const std::vector<KeySpec>& key_table() {
  static const std::vector<KeySpec> table = {
      PP_DOUBLE_KEY("params.d1", params.d1),
      PP_DOUBLE_KEY("params.d2", params.d2),
      PP_DOUBLE_KEY("params.m1", params.m1),
      PP_DOUBLE_KEY("params.m2", params.m2),
      PP_DOUBLE_KEY("params.chi", params.chi),
      PP_DOUBLE_KEY("params.a", params.a),
      PP_DOUBLE_KEY("params.b", params.b),
      PP_DOUBLE_KEY("params.eps", params.eps),
      {"grid.dim", true,
       [](RunConfig& c, std::string_view v) { c.grid.dim = parse_int("grid.dim", v); },
       [](const RunConfig& c) { return std::to_string(c.grid.dim); }},
      {"grid.n", true,
       [](RunConfig& c, std::string_view v) {
         const int n = parse_int("grid.n", v);
         c.grid.cells = {n, n};
       },
       [](const RunConfig& c) { return std::to_string(c.grid.cells[0]); }},
      {"grid.n1", true,
       [](RunConfig& c, std::string_view v) { c.grid.cells[0] = parse_int("grid.n1", v); },
       [](const RunConfig& c) { return std::to_string(c.grid.cells[0]); }},
      {"grid.n2", true,
       [](RunConfig& c, std::string_view v) { c.grid.cells[1] = parse_int("grid.n2", v); },
       [](const RunConfig& c) { return std::to_string(c.grid.cells[1]); }},
      {"grid.length", true,
       [](RunConfig& c, std::string_view v) {
         const double l = parse_double("grid.length", v);
         c.grid.length = {l, l};
       },
       [](const RunConfig& c) { return fmt_double(c.grid.length[0]); }},
      PP_DOUBLE_KEY("grid.length1", grid.length[0]),
      PP_DOUBLE_KEY("grid.length2", grid.length[1]),
      {"scheme.taxis", false,
       [](RunConfig& c, std::string_view v) {
         if (v == "upwind") {
           c.scheme.taxis = TaxisScheme::Upwind;
         } else if (v == "central") {
           c.scheme.taxis = TaxisScheme::Central;
         } else {
           throw ParseError(fmt::format("scheme.taxis: '{}' is not upwind|central", v), 0);
         }
       },
       [](const RunConfig& c) { return std::string(to_string(c.scheme.taxis)); }},
      PP_DOUBLE_KEY("scheme.cfl_safety", scheme.cfl_safety),
      PP_DOUBLE_KEY("scheme.reaction_limiter", scheme.reaction_limiter),
      PP_DOUBLE_KEY("scheme.u_floor", scheme.u_floor),
      {"initial.recipe", false,
       [](RunConfig& c, std::string_view v) {
         if (v == "constant") {
           c.initial.recipe = InitialRecipe::Constant;
         } else if (v == "cosine") {
           c.initial.recipe = InitialRecipe::Cosine;
         } else if (v == "two_bump") {
           c.initial.recipe = InitialRecipe::TwoBump;
         } else {
           throw ParseError(
               fmt::format("initial.recipe: '{}' is not constant|cosine|two_bump", v), 0);
         }
       },
       [](const RunConfig& c) { return std::string(to_string(c.initial.recipe)); }},
      {"initial.u_base", true,
       [](RunConfig& c, std::string_view v) { c.initial.u_base = parse_base("initial.u_base", v); },
       [](const RunConfig& c) { return fmt_base(c.initial.u_base); }},
      PP_DOUBLE_KEY("initial.u_amp", initial.u_amp),
      {"initial.v_base", true,
       [](RunConfig& c, std::string_view v) { c.initial.v_base = parse_base("initial.v_base", v); },
       [](const RunConfig& c) { return fmt_base(c.initial.v_base); }},
      PP_DOUBLE_KEY("initial.v_amp", initial.v_amp),
      PP_DOUBLE_KEY("initial.bump_width", initial.bump_width),
      PP_DOUBLE_KEY("run.t_end", t_end),
      PP_DOUBLE_KEY("run.sample_every", sample_every),
      {"run.seed", true,
       [](RunConfig& c, std::string_view v) {
         const long long s = parse_integer("run.seed", v);
         if (s < 0) throw ParseError("run.seed must be >= 0", 0);
         c.seed = static_cast<std::uint64_t>(s);
       },
       [](const RunConfig& c) { return std::to_string(c.seed); }},
      {"output.dir", false,
       [](RunConfig& c, std::string_view v) {
         if (v.empty()) throw ParseError("output.dir must not be empty", 0);
         c.output_dir = std::filesystem::path(std::string(v));
       },
       [](const RunConfig& c) { return c.output_dir.string(); }},
      {"output.svg", false,
       [](RunConfig& c, std::string_view v) { c.svg = parse_bool("output.svg", v); },
       [](const RunConfig& c) { return std::string(c.svg ? "true" : "false"); }},
  };
  return table;
}

#undef PP_DOUBLE_KEY

const KeySpec* find_key(std::string_view key) {
  for (const auto& spec : key_table()) {
    if (spec.name == key) return &spec;
  }
  return nullptr;
}

// Keys omitted from the canonical text because another key covers them.
bool is_alias(std::string_view key) { return key == "grid.n" || key == "grid.length"; }

double gaussian(double r2, double width) { return std::exp(-r2 / (2.0 * width * width)); }

} // namespace

const char* to_string(InitialRecipe recipe) noexcept {
  switch (recipe) {
  case InitialRecipe::Constant: return "constant";
  case InitialRecipe::Cosine: return "cosine";
  case InitialRecipe::TwoBump: return "two_bump";
  }
  return "unknown";
}

const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys = [] {
    std::vector<std::string_view> out;
    for (const auto& spec : key_table()) out.push_back(spec.name);
    return out;
  }();
  return keys;
}

bool is_numeric_key(std::string_view key) {
  const KeySpec* spec = find_key(key);
  return spec != nullptr && spec->numeric;
}

void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value) {
  const KeySpec* spec = find_key(key);
  if (spec == nullptr) throw ParseError(fmt::format("unknown key '{}'", key), 0);
  spec->set(cfg, value);
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("missing key before '='", line_no);
    if (value.empty()) throw ParseError(fmt::format("missing value for '{}'", key), line_no);
    if (!seen.insert(std::string(key)).second) {
      throw ParseError(fmt::format("duplicate key '{}'", key), line_no);
    }
    try {
      set_config_value(cfg, key, value);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file " + path.string(), 0);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string to_config_text(const RunConfig& cfg) {
  std::string out;
  for (const auto& spec : key_table()) {
    if (is_alias(spec.name)) continue;
    if (cfg.grid.dim == 1 && (spec.name == "grid.n2" || spec.name == "grid.length2")) continue;
    out += fmt::format("{} = {}\n", spec.name, spec.get(cfg));
  }
  return out;
}

void validate(const RunConfig& cfg) {
  try {
    cfg.params.validate();
    cfg.scheme.validate();
    (void)cfg.grid.make();
  } catch (const InvalidArgument& e) {
    throw ValidationError(e.what());
  }
  if (!(cfg.t_end > 0.0)) throw ValidationError("run.t_end must be > 0");
  if (!(cfg.sample_every > 0.0)) throw ValidationError("run.sample_every must be > 0");

  const SteadyState ss = steady_states(cfg.params);
  const double u_base = cfg.initial.u_base.value_or(ss.u_star);
  const double v_base = cfg.initial.v_base.value_or(ss.v_star);
  const auto& ic = cfg.initial;
  if (!(ic.u_amp >= 0.0) || !(ic.v_amp >= 0.0)) {
    throw ValidationError("initial amplitudes must be >= 0");
  }
  if (u_base < 0.0 || v_base < 0.0) throw ValidationError("initial bases must be >= 0");
  switch (ic.recipe) {
  case InitialRecipe::Constant:
    if (!(u_base > 0.0) || !(v_base > 0.0)) {
      throw ValidationError("initial data must not vanish identically (u0, v0 > 0 required)");
    }
    break;
  case InitialRecipe::Cosine:
    if (!(u_base > ic.u_amp) || !(v_base > ic.v_amp)) {
      throw ValidationError("cosine initial data needs base > amplitude for u and v");
    }
    break;
  case InitialRecipe::TwoBump:
    if (!(u_base > 0.0 || ic.u_amp > 0.0) || !(v_base > 0.0 || ic.v_amp > 0.0)) {
      throw ValidationError("initial data must not vanish identically");
    }
    if (!(ic.bump_width > 0.0)) throw ValidationError("initial.bump_width must be > 0");
    break;
  }
}

State make_initial_state(const RunConfig& cfg) {
  validate(cfg);
  const Grid grid = cfg.grid.make();
  const SteadyState ss = steady_states(cfg.params);
  const auto& ic = cfg.initial;
  const double u_base = ic.u_base.value_or(ss.u_star);
  const double v_base = ic.v_base.value_or(ss.v_star);
  const double lx = grid.length(0);
  const double ly = grid.length(1);

  State s{Field(grid), Field(grid), 0.0};
  switch (ic.recipe) {
  case InitialRecipe::Constant:
    s.u = Field(grid, u_base);
    s.v = Field(grid, v_base);
    break;
  case InitialRecipe::Cosine: {
    const double pi = std::numbers::pi;
    auto mode = [&](double x, double y) {
      const double cx = std::cos(pi * x / lx);
      return grid.dim() == 2 ? cx * std::cos(pi * y / ly) : cx;
    };
    s.u = Field::from_function(grid, [&](double x, double y) { return u_base + ic.u_amp * mode(x, y); });
    s.v = Field::from_function(grid, [&](double x, double y) { return v_base + ic.v_amp * mode(x, y); });
    break;
  }
  case InitialRecipe::TwoBump: {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(0.2, 0.8);
    auto centres = [&] {
      std::array<std::array<double, 2>, 2> c{};
      for (auto& point : c) {
        point[0] = unit(rng) * lx;
        point[1] = grid.dim() == 2 ? unit(rng) * ly : 0.0;
      }
      return c;
    };
    const auto cu = centres();
    const auto cv = centres();
    const double width = ic.bump_width * std::max(lx, grid.dim() == 2 ? ly : lx);
    auto bumps = [&](const auto& c, double x, double y) {
      double sum = 0.0;
      for (const auto& point : c) {
        const double dx = x - point[0];
        const double dy = y - point[1];
        sum += gaussian(dx * dx + dy * dy, width);
      }
      return sum;
    };
    s.u = Field::from_function(grid, [&](double x, double y) { return u_base + ic.u_amp * bumps(cu, x, y); });
    s.v = Field::from_function(grid, [&](double x, double y) { return v_base + ic.v_amp * bumps(cv, x, y); });
    break;
  }
  }
  return s;
}

} // namespace predprey::app
