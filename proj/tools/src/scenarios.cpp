#include "predprey_app/scenarios.hpp"

#include <fmt/format.h>

namespace predprey::app {

namespace {

RunConfig cosine_square(int n, double length, double u_base, double u_amp, double v_base,
                        double v_amp) {
  RunConfig c;
  c.grid = GridSpec{2, {n, n}, {length, length}};
  c.initial.recipe = InitialRecipe::Cosine;
  c.initial.u_base = u_base;
  c.initial.u_amp = u_amp;
  c.initial.v_base = v_base;
  c.initial.v_amp = v_amp;
  return c;
}

} // namespace

const std::vector<std::string_view>& scenario_names() {
  static const std::vector<std::string_view> names = {
      "energy_decay", "stabilization", "extinction", "max_principle", "mass_law", "eps_family"};
  return names;
}

RunConfig builtin_scenario(std::string_view name) {
  RunConfig c;
  if (name == "energy_decay") {
    // Coexistence below the taxis threshold, perturbed around (u*, v*) = (1.5, 0.5).
    c = cosine_square(64, 4.0, 1.5, 0.5, 0.5, 0.3);
    c.t_end = 15.0;
    c.sample_every = 0.05;
  } else if (name == "stabilization") {
    c = cosine_square(64, 4.0, 1.5, 0.5, 0.5, 0.3);
    c.t_end = 200.0;
    c.sample_every = 0.5;
  } else if (name == "extinction") {
    c = cosine_square(64, 4.0, 1.0, 0.5, 0.5, 0.3);
    c.params.m2 = 0.5;
    c.t_end = 200.0;
    c.sample_every = 0.5;
  } else if (name == "max_principle") {
    // Prey starts above its carrying capacity: sup v0 = 3 > m2 = 2.
    c = cosine_square(64, 4.0, 1.0, 0.5, 2.0, 1.0);
    c.t_end = 5.0;
    c.sample_every = 0.05;
  } else if (name == "mass_law") {
    c = cosine_square(32, 4.0, 1.5, 0.5, 0.5, 0.3);
    c.t_end = 1.0;
    c.sample_every = 0.1;
  } else if (name == "eps_family") {
    c = cosine_square(32, 4.0, 3.0, 1.0, 1.0, 0.8);
    c.params.chi = 2.0;
    c.params.eps = 0.1;
    c.t_end = 5.0;
    c.sample_every = 0.25;
  } else {
    throw ValidationError(fmt::format("unknown scenario '{}'", name));
  }
  c.output_dir = std::string(name);
  validate(c);
  return c;
}

RunConfig load_scenario(const std::filesystem::path& dir, std::string_view name) {
  return load_config(dir / fmt::format("{}.conf", name));
}

std::filesystem::path default_scenario_dir() {
#ifdef PREDPREY_SCENARIO_DIR
  return PREDPREY_SCENARIO_DIR;
#else
  return "scenarios";
#endif
}

} // namespace predprey::app
