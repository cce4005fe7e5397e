// The acceptance suite must be able to fail: a planted defect and a
// thousandfold tightening of the tolerances both have to show up as FAIL.
#include <gtest/gtest.h>

#include "predprey_app/acceptance.hpp"
#include "predprey_app/config.hpp"

using namespace predprey::app;

TEST(Acceptance, CheapCriteriaPass) {
  AcceptanceOptions opts;
  opts.only = {1, 2, 4, 6, 9};
  std::vector<std::string> lines;
  opts.on_line = [&](const std::string& l) { lines.push_back(l); };
  const AcceptanceReport rep = run_acceptance(opts);
  EXPECT_TRUE(rep.all_passed());
  ASSERT_EQ(lines.size(), 5u);
  for (const auto& l : lines) EXPECT_EQ(l.substr(0, 4), "PASS") << l;
}

TEST(Acceptance, FlippedLaplacianSignFailsSpatialOrder) {
  AcceptanceOptions opts;
  opts.only = {3};
  opts.fault = Fault::FlipLaplacianSign;
  const AcceptanceReport rep = run_acceptance(opts);
  ASSERT_EQ(rep.results.size(), 1u);
  EXPECT_FALSE(rep.results[0].passed);
  EXPECT_EQ(format_line(rep.results[0]).substr(0, 4), "FAIL");
}

TEST(Acceptance, ThousandfoldTighterTolerancesFail) {
  AcceptanceOptions opts;
  opts.only = {4, 6};
  opts.tolerance_scale = 1e-3;
  const AcceptanceReport rep = run_acceptance(opts);
  ASSERT_EQ(rep.results.size(), 2u);
  EXPECT_FALSE(rep.results[0].passed);
  EXPECT_FALSE(rep.results[1].passed);
  EXPECT_FALSE(rep.all_passed());
}

TEST(Acceptance, RejectsUnknownCriteria) {
  AcceptanceOptions opts;
  opts.only = {12};
  EXPECT_THROW(run_acceptance(opts), ValidationError);
  EXPECT_THROW(criterion_name(0), ValidationError);
  EXPECT_EQ(criterion_name(11), "determinism");
}
