#include <gtest/gtest.h>

#include <cmath>

#include "predprey_app/config.hpp"
#include "predprey_app/scenarios.hpp"

using namespace predprey;
using namespace predprey::app;

TEST(ParseConfig, EmptyTextGivesDefaults) {
  const RunConfig cfg = parse_config("# nothing but a comment\n\n");
  EXPECT_EQ(cfg.params.m2, 2.0);
  EXPECT_EQ(cfg.grid.dim, 2);
  EXPECT_EQ(cfg.grid.cells[0], 64);
  EXPECT_EQ(cfg.scheme.taxis, TaxisScheme::Upwind);
  EXPECT_EQ(cfg.initial.recipe, InitialRecipe::Cosine);
  EXPECT_GT(cfg.t_end, 0.0);
}

TEST(ParseConfig, ReadsEveryKind) {
  const RunConfig cfg = parse_config(R"(
params.chi = 0.5   # trailing comment
params.eps=0.01
grid.dim = 1
grid.n1 = 40
grid.length1 = 2.5
scheme.taxis = central
initial.recipe = two_bump
initial.u_base = auto
run.seed = 42
output.dir = out/here
output.svg = true
)");
  EXPECT_EQ(cfg.params.chi, 0.5);
  EXPECT_EQ(cfg.params.eps, 0.01);
  EXPECT_EQ(cfg.grid.dim, 1);
  EXPECT_EQ(cfg.grid.cells[0], 40);
  EXPECT_EQ(cfg.grid.length[0], 2.5);
  EXPECT_EQ(cfg.scheme.taxis, TaxisScheme::Central);
  EXPECT_EQ(cfg.initial.recipe, InitialRecipe::TwoBump);
  EXPECT_FALSE(cfg.initial.u_base.has_value());
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_EQ(cfg.output_dir, "out/here");
  EXPECT_TRUE(cfg.svg);
}

TEST(ParseConfig, NegativeChiIsAValidationError) {
  EXPECT_THROW(parse_config("params.chi = -1\n"), ValidationError);
}

TEST(ParseConfig, UnknownKeyIsAParseErrorWithLine) {
  try {
    parse_config("params.chi = 1\n\nunknown.key = 3\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_NE(std::string(e.what()).find("unknown.key"), std::string::npos);
  }
}

TEST(ParseConfig, MalformedLines) {
  for (const char* text : {"params.chi 1\n", "= 3\n", "params.chi =\n", "params.chi = 1.0x\n",
                           "params.chi = nan\n", "grid.n = 6.5\n", "scheme.taxis = sideways\n",
                           "output.svg = maybe\n", "run.seed = -3\n", "params.chi = 1\nparams.chi = 2\n"}) {
    EXPECT_THROW(parse_config(text), ParseError) << text;
  }
}

TEST(ParseConfig, DuplicateKeyReportsSecondLine) {
  try {
    parse_config("params.a = 1\nparams.a = 2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(ParseConfig, ValidationNamesTheInvariant) {
  EXPECT_THROW(parse_config("run.t_end = 0\n"), ValidationError);
  EXPECT_THROW(parse_config("grid.n = 3\n"), ValidationError);
  EXPECT_THROW(parse_config("initial.u_base = 0.2\ninitial.u_amp = 0.5\n"), ValidationError);
  EXPECT_THROW(parse_config("initial.recipe = constant\ninitial.v_base = 0\n"), ValidationError);
  EXPECT_THROW(parse_config("scheme.cfl_safety = 2\n"), ValidationError);
  try {
    parse_config("run.t_end = -1\n");
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("t_end"), std::string::npos);
  }
}

TEST(ConfigText, RoundTrips) {
  RunConfig cfg;
  cfg.params.chi = 0.1 + 0.2;
  cfg.params.m2 = 2.5;
  cfg.grid = GridSpec{2, {16, 24}, {1.5, 3.0}};
  cfg.initial.v_base.reset();
  cfg.seed = 7;
  cfg.svg = true;
  const RunConfig back = parse_config(to_config_text(cfg));
  EXPECT_EQ(to_config_text(back), to_config_text(cfg));
  EXPECT_EQ(back.params.chi, cfg.params.chi);
  EXPECT_EQ(back.grid.cells[1], 24);
  EXPECT_FALSE(back.initial.v_base.has_value());
}

TEST(ConfigKeys, NumericKeysAreSweepable) {
  EXPECT_TRUE(is_numeric_key("params.eps"));
  EXPECT_TRUE(is_numeric_key("grid.n"));
  EXPECT_FALSE(is_numeric_key("scheme.taxis"));
  EXPECT_FALSE(is_numeric_key("output.dir"));
  EXPECT_FALSE(is_numeric_key("nope"));
  EXPECT_GT(config_keys().size(), 25u);
}

TEST(InitialState, AutoBasesGiveTheSteadyState) {
  const RunConfig cfg = parse_config(
      "initial.recipe = constant\ninitial.u_base = auto\ninitial.v_base = auto\ngrid.n = 8\n");
  const State s = make_initial_state(cfg);
  for (std::size_t k = 0; k < s.u.size(); ++k) {
    EXPECT_EQ(s.u[k], 1.5);
    EXPECT_EQ(s.v[k], 0.5);
  }
}

TEST(InitialState, CosineIsPositiveAndBounded) {
  const State s = make_initial_state(parse_config("grid.n = 16\n"));
  EXPECT_GT(s.u.min(), 1.0);
  EXPECT_LT(s.u.max(), 2.0);
  EXPECT_GT(s.v.min(), 0.2);
  EXPECT_LT(s.v.max(), 0.8);
}

TEST(InitialState, TwoBumpDependsOnlyOnSeed) {
  const char* base = "initial.recipe = two_bump\ngrid.n = 16\ninitial.u_amp = 2\n";
  const State a = make_initial_state(parse_config(std::string(base) + "run.seed = 1\n"));
  const State b = make_initial_state(parse_config(std::string(base) + "run.seed = 1\n"));
  const State c = make_initial_state(parse_config(std::string(base) + "run.seed = 2\n"));
  bool differs = false;
  for (std::size_t k = 0; k < a.u.size(); ++k) {
    EXPECT_EQ(a.u[k], b.u[k]);
    differs |= a.u[k] != c.u[k];
  }
  EXPECT_TRUE(differs);
  EXPECT_GT(a.u.max(), a.u.min());
}

TEST(Scenarios, BundledFilesMatchCompiledCopies) {
  for (auto name : scenario_names()) {
    RunConfig file = load_scenario(PREDPREY_TEST_SCENARIO_DIR, name);
    const RunConfig builtin = builtin_scenario(name);
    EXPECT_EQ(to_config_text(file), to_config_text(builtin)) << name;
  }
  EXPECT_THROW(builtin_scenario("no_such_scenario"), ValidationError);
}
