#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "predprey/snapshot.hpp"
#include "predprey_app/run.hpp"

using namespace predprey;
using namespace predprey::app;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(testing::TempDir()) / "predprey_run_tests" / name;
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunConfig small_config(const fs::path& dir) {
  RunConfig cfg = parse_config("grid.n = 16\nrun.t_end = 1\nrun.sample_every = 0.25\n");
  cfg.output_dir = dir;
  return cfg;
}

} // namespace

TEST(RunScenario, EquilibriumDataGivesZeroDistances) {
  RunConfig cfg = parse_config(
      "initial.recipe = constant\ninitial.u_base = auto\ninitial.v_base = auto\n"
      "grid.n = 8\nrun.t_end = 0.5\nrun.sample_every = 0.1\n");
  cfg.output_dir = scratch("equilibrium");
  const RunOutcome out = run_scenario(cfg);
  EXPECT_EQ(out.status, RunStatus::Completed);
  EXPECT_EQ(out.exit_code(), kExitOk);
  ASSERT_EQ(out.records.size(), 6u);
  for (const auto& r : out.records) {
    EXPECT_EQ(r.dist_u_L1, 0.0);
    EXPECT_EQ(r.dist_u_L2, 0.0);
    EXPECT_EQ(r.dist_v_L1, 0.0);
    EXPECT_EQ(r.dist_v_L2, 0.0);
  }
}

TEST(RunScenario, CreatesMissingDirectoryAndWritesArtifacts) {
  const fs::path dir = scratch("artifacts") / "nested" / "deeper";
  RunConfig cfg = small_config(dir);
  cfg.svg = true;
  const RunOutcome out = run_scenario(cfg);
  EXPECT_EQ(out.exit_code(), kExitOk);
  for (const char* f : {"diagnostics.csv", "initial_u.txt", "initial_v.txt", "final_u.txt",
                        "final_v.txt", "manifest.json", "energy.svg", "distances.svg"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  const std::string csv = slurp(dir / "diagnostics.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 5);
  const Snapshot fin = read_snapshot(dir / "final_u.txt");
  EXPECT_EQ(fin.time, 1.0);
  const std::string manifest = slurp(dir / "manifest.json");
  EXPECT_NE(manifest.find("\"status\": \"completed\""), std::string::npos);
  EXPECT_NE(manifest.find("\"delta\""), std::string::npos);
  EXPECT_NE(manifest.find("\"grid\""), std::string::npos);
}

TEST(RunScenario, CertificateAbsenceIsExplained) {
  RunConfig cfg = small_config(scratch("uncertified"));
  cfg.params.chi = 3.0; // 9 > 17/3
  const RunOutcome out = run_scenario(cfg);
  EXPECT_FALSE(out.context.certificate);
  EXPECT_FALSE(out.energy);
  EXPECT_NE(out.certificate_note.find("threshold"), std::string::npos);
  EXPECT_NE(slurp(cfg.output_dir / "manifest.json").find("absence_reason"), std::string::npos);
}

TEST(RunScenario, EnergyDecaysBelowTheThreshold) {
  RunConfig cfg = parse_config("grid.n = 32\ngrid.length = 8\nrun.t_end = 4\nrun.sample_every = 0.05\n");
  cfg.output_dir = scratch("energy");
  const RunOutcome out = run_scenario(cfg);
  ASSERT_TRUE(out.energy);
  EXPECT_EQ(out.energy->monotone_violations, 0u);
  EXPECT_TRUE(out.energy->budget_ok);
  EXPECT_TRUE(out.energy_ok);
  EXPECT_TRUE(out.bounds_ok);
}

TEST(RunScenario, BlowUpIsRecordedInTheManifest) {
  // A prey carrying capacity far above the runaway level drives v past it.
  RunConfig cfg = small_config(scratch("blowup"));
  cfg.params.m2 = 1e13;
  const RunOutcome out = run_scenario(cfg);
  EXPECT_EQ(out.status, RunStatus::BlowUp);
  EXPECT_EQ(out.exit_code(), kExitBlowUp);
  ASSERT_TRUE(out.failure_time);
  EXPECT_GE(*out.failure_time, 0.0);
  EXPECT_LT(*out.failure_time, cfg.t_end);
  EXPECT_FALSE(fs::exists(cfg.output_dir / "final_u.txt"));
  const std::string manifest = slurp(cfg.output_dir / "manifest.json");
  EXPECT_NE(manifest.find("\"blow_up\""), std::string::npos);
  EXPECT_NE(manifest.find("failure_time"), std::string::npos);
}

TEST(RunScenario, StopPredicateEndsEarly) {
  RunConfig cfg = small_config(scratch("stop"));
  RunOptions opts;
  opts.stop_when = [](const DiagnosticsRecord& r) { return r.t >= 0.5; };
  const RunOutcome out = run_scenario(cfg, opts);
  EXPECT_EQ(out.status, RunStatus::Stopped);
  ASSERT_TRUE(out.final_state);
  EXPECT_NEAR(out.final_state->t, 0.5, 1e-12);
  EXPECT_NE(slurp(cfg.output_dir / "manifest.json").find("stopped"), std::string::npos);
}

TEST(RunScenario, IdenticalConfigsGiveIdenticalCsv) {
  RunConfig a = small_config(scratch("det_a"));
  a.initial.recipe = InitialRecipe::TwoBump;
  a.seed = 5;
  RunConfig b = a;
  b.output_dir = scratch("det_b");
  run_scenario(a);
  run_scenario(b);
  EXPECT_EQ(slurp(a.output_dir / "diagnostics.csv"), slurp(b.output_dir / "diagnostics.csv"));
}

TEST(Fingerprints, DistinguishGridsAndSchemes) {
  RunConfig a;
  RunConfig b;
  EXPECT_EQ(grid_fingerprint(a), grid_fingerprint(b));
  b.grid.cells[0] = 32;
  EXPECT_NE(grid_fingerprint(a), grid_fingerprint(b));
  b.scheme.taxis = TaxisScheme::Central;
  EXPECT_NE(scheme_fingerprint(a), scheme_fingerprint(b));
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Sweep, EmptyValueListIsAnError) {
  EXPECT_THROW(sweep(small_config(scratch("empty")), "params.eps", {}), ValidationError);
}

TEST(Sweep, AxisMustBeNumeric) {
  const std::vector<double> v{1.0};
  EXPECT_THROW(sweep(small_config(scratch("axis")), "scheme.taxis", v), ValidationError);
  EXPECT_THROW(sweep(small_config(scratch("axis")), "params.nope", v), ValidationError);
}

TEST(Sweep, CertificateFlipsAtTheThreshold) {
  // For the default parameters chi^2 must stay below 17/3.
  const double edge = std::sqrt(17.0 / 3.0);
  const std::vector<double> chis{0.5, edge * 0.99, edge * 1.01, 3.0};
  RunConfig base = small_config(scratch("chi"));
  base.t_end = 0.2;
  base.sample_every = 0.1;
  const SweepResult res = sweep(base, "params.chi", chis, 2u);
  ASSERT_EQ(res.rows.size(), 4u);
  EXPECT_TRUE(res.rows[0].certified);
  EXPECT_TRUE(res.rows[1].certified);
  EXPECT_FALSE(res.rows[2].certified);
  EXPECT_FALSE(res.rows[3].certified);
  const std::string summary = slurp(res.summary_csv);
  EXPECT_EQ(std::count(summary.begin(), summary.end(), '\n'), 5);
  for (const auto& row : res.rows) EXPECT_TRUE(fs::exists(row.dir / "manifest.json"));
}

TEST(Sweep, FailuresAreRecordedAndTheSweepContinues) {
  const std::vector<double> d1{1.0, -1.0, 0.5};
  RunConfig base = small_config(scratch("failures"));
  base.t_end = 0.2;
  base.sample_every = 0.1;
  const SweepResult res = sweep(base, "params.d1", d1);
  EXPECT_EQ(res.rows[0].status, "completed");
  EXPECT_EQ(res.rows[1].status, "config_error");
  EXPECT_EQ(res.rows[1].exit_code, kExitConfig);
  EXPECT_EQ(res.rows[2].status, "completed");
  EXPECT_EQ(res.exit_code(), kExitConfig);
  EXPECT_FALSE(res.rows[2].l1_diff_u_prev); // neighbour failed
}

TEST(Sweep, EpsFamilyDifferencesShrink) {
  RunConfig base = parse_config(
      "params.chi = 2\ngrid.n = 16\ngrid.length = 4\ninitial.u_base = 3\ninitial.u_amp = 1\n"
      "initial.v_base = 1\ninitial.v_amp = 0.8\nrun.t_end = 2\nrun.sample_every = 0.5\n");
  base.output_dir = scratch("eps");
  const std::vector<double> eps{0.1, 0.05, 0.025};
  const SweepResult res = sweep(base, "params.eps", eps);
  ASSERT_TRUE(res.rows[1].l1_diff_u_prev && res.rows[2].l1_diff_u_prev);
  EXPECT_LT(*res.rows[2].l1_diff_u_prev, *res.rows[1].l1_diff_u_prev);
}

TEST(ValueList, Parsing) {
  EXPECT_EQ(parse_value_list("0.1, 0.05,0.025"), (std::vector<double>{0.1, 0.05, 0.025}));
  EXPECT_TRUE(parse_value_list("").empty());
  EXPECT_THROW(parse_value_list("1,,2"), ParseError);
  EXPECT_THROW(parse_value_list("1,abc"), ParseError);
}
