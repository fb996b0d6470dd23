#include <gtest/gtest.h>

#include "hyperham/report_json.hpp"
#include "hyperham/testing/fixtures.hpp"

using namespace hyperham;

TEST(ReportJson, DeviationWitnessShape) {
  const auto H = gen::random(6, 0.5, 1);
  const auto ev = to_json(ev_deviation(H, 0.5, Mode::exact));
  EXPECT_EQ(ev["notion"], "ev");
  EXPECT_TRUE(ev["witness"].contains("X"));
  EXPECT_TRUE(ev["witness"].contains("P"));
  EXPECT_FALSE(ev.contains("samples"));
  DensityOptions opt;
  opt.samples = 1000;
  const auto sa = to_json(ee_deviation(H, 0.5, Mode::sampled, opt));
  EXPECT_TRUE(sa["witness"].contains("Q"));
  EXPECT_TRUE(sa.contains("samples"));
  EXPECT_TRUE(sa.contains("estimate"));
}

TEST(ReportJson, InstanceDigestAndPaths) {
  const auto K = gen::complete(8);
  const auto j = to_json(K);
  EXPECT_EQ(j["n"], 8);
  EXPECT_EQ(j["m"], 56);
  EXPECT_EQ(j["digest"], digest(K));
  const auto p = to_json(TightPath{{0, 1, 2, 3}, true});
  EXPECT_EQ(p["length"], 4);
  EXPECT_EQ(p["is_cycle"], true);
}

TEST(ReportJson, GadgetsAndCounts) {
  const auto f = naive::single_absorber_fixture();
  const auto a = to_json(f.path.absorbers[0]);
  EXPECT_EQ(a["K"].size(), 9u);
  EXPECT_EQ(a["P"].size(), 3u);
  const auto c = to_json(count_k4minus(gen::complete(5)));
  EXPECT_EQ(c["count"], 20);
  EXPECT_EQ(c["exact"], true);
  const Turn t{0, 1, 2, 3, 4, 5, 6};
  EXPECT_EQ(to_json(t)["a"].size(), 3u);
}

TEST(ReportJson, PipelineResult) {
  PipelineParams params;
  const auto r = find_tight_hamilton(gen::complete(24), params);
  const auto j = to_json(r);
  EXPECT_EQ(j["found"], r.cycle.has_value());
  EXPECT_EQ(j["trace"].size(), r.trace.size());
  if (r.cycle) {
    EXPECT_EQ(j["cycle"].size(), 24u);
  }
}
