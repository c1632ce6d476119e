// SPDX-License-Identifier: Apache-2.0

#include "biatsp/experiment.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"

namespace biatsp {
namespace {

ParetoFront Front(std::vector<ObjectiveVector> ys) {
  std::vector<FrontEntry> e;
  for (const auto& y : ys) e.push_back({y, Tour{}});
  return ParetoFront::from_entries(e);
}

TEST(FormattingTest, DecimalString) {
  EXPECT_EQ(decimal_string(Rational(3, 10)), "0.3");
  EXPECT_EQ(decimal_string(Rational(1, 2)), "0.5");
  EXPECT_EQ(decimal_string(Rational(49, 100)), "0.49");
  EXPECT_EQ(decimal_string(Rational(1, 8)), "0.125");
  EXPECT_EQ(decimal_string(Rational(1, 3)), "1/3");
  EXPECT_EQ(decimal_string(Rational(2)), "2");
  EXPECT_EQ(fixed2(12.345678), "12.35");
}

TEST(SeriesTest, ParsesNames) {
  const auto u = parse_series("S50[1,10][1,20]", 3);
  EXPECT_EQ(u.kind, GeneratorKind::uniform);
  EXPECT_EQ(u.n, 50);
  EXPECT_EQ(u.interval2.hi, 20);
  const auto c = parse_series("S50contr[1,2][1,2]", 3);
  EXPECT_EQ(c.kind, GeneratorKind::contradicting);
  EXPECT_EQ(c.contradiction_sum, 3);
  EXPECT_EQ(series_name(u), "S50[1,10][1,20]");
  EXPECT_EQ(series_name(c), "S50contr[1,2][1,2]");
  EXPECT_THROW(parse_series("S50contr[1,2][1,3]", 1), ConfigError);
  EXPECT_THROW(parse_series("T50[1,2][1,2]", 1), ConfigError);
}

TEST(SeriesTest, GeneratesDistinctReproducibleInstances) {
  const auto a = generate_series("S12[1,10][1,10]", 5, 5);
  const auto b = generate_series("S12[1,10][1,10]", 5, 5);
  ASSERT_EQ(a.size(), 5u);
  EXPECT_EQ(a, b);
  for (std::size_t k = 1; k < a.size(); ++k) EXPECT_NE(a[k].name, a[0].name);
}

TEST(SweepTest, RowsForOneFront) {
  std::vector<ObjectiveVector> line;
  for (int k = 0; k <= 50; ++k) line.push_back({k, 50 - k});
  const auto rows = sweep_front("S", "i", Front(line), 7);
  ASSERT_EQ(rows.size(), 18u);
  for (const auto& r : rows) {
    ASSERT_TRUE(r.excluded_pct);
    EXPECT_EQ(fixed2(*r.excluded_pct), r.theta < Rational(1, 2) ? "0.00" : "98.04");
    EXPECT_EQ(r.n_a, 51u);
    EXPECT_EQ(*r.delta21, Rational(1));
  }
  std::ostringstream os;
  write_table_csv(os, {rows[4]});
  EXPECT_EQ(os.str(), std::string(kTableHeader) + "\nS,i,1st-2nd,0.5,98.04,51,1.00,7\n");
}

TEST(SweepTest, EmptyAndSingletonFronts) {
  const auto rows = sweep_front("S", "i", ParetoFront{}, 1, {Rational(1, 2)}, {Direction::first_important});
  std::ostringstream os;
  write_table_csv(os, rows);
  EXPECT_EQ(os.str(), std::string(kTableHeader) + "\nS,i,1st-2nd,0.5,invalid,0,undefined,1\n");
}

TEST(SweepTest, ExclusionIsMonotoneInTheta) {
  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = Front(oracle::random_front_vectors(rng, 40, 100));
    const auto rows = sweep_front("S", "i", f, 0);
    for (std::size_t k = 1; k < rows.size(); ++k)
      if (rows[k].direction == rows[k - 1].direction) {
        EXPECT_GE(*rows[k].excluded_pct, *rows[k - 1].excluded_pct);
      }
  }
}

TEST(SummaryTest, AveragesPerSeriesAndDirection) {
  std::vector<SweepRow> rows;
  const auto f1 = sweep_front("A", "a1", Front({{1, 20}, {11, 10}}), 1, {Rational(1, 2)});
  const auto f2 = sweep_front("A", "a2", Front({{1, 2}, {2, 1}, {3, 0}}), 1, {Rational(1, 2)});
  rows.insert(rows.end(), f1.begin(), f1.end());
  rows.insert(rows.end(), f2.begin(), f2.end());
  const auto s = summarize(rows);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].direction, Direction::first_important);
  EXPECT_DOUBLE_EQ(s[0].n_a_mean, 2.5);
  EXPECT_DOUBLE_EQ(*s[0].delta21_mean, 1.0);
  std::ostringstream os;
  write_summary_csv(os, s);
  const std::string text = os.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "series,direction,0.5,n_a_aver,delta21_aver");
}

TEST(SweepTest, ThreadCountDoesNotChangeRows) {
  std::vector<SweepJob> jobs;
  for (auto& inst : generate_series("S10[1,10][1,10]", 2, 3)) jobs.push_back({"S10[1,10][1,10]", inst});
  SweepConfig c;
  c.engine.population_size = 12;
  c.engine.iterations = 20;
  c.repetitions = 2;
  const auto a = run_sweep(jobs, c);
  c.threads = 4;
  const auto b = run_sweep(jobs, c);
  ASSERT_EQ(a.rows.size(), 3u * 2u * 18u);
  std::ostringstream x, y;
  write_table_csv(x, a.rows);
  write_table_csv(y, b.rows);
  EXPECT_EQ(x.str(), y.str());
}

TEST(ValidationTest, TraceAndRecovery) {
  const auto inst = oracle::random_instance(8, 1, 10, 44);
  EngineConfig c;
  c.population_size = 30;
  c.iterations = 200;
  const auto r = validate_against_exact(inst, c);
  ASSERT_GE(r.trace.size(), 2u);
  EXPECT_EQ(r.trace.front().generation, 0);
  EXPECT_EQ(r.trace.back().generation, 200);
  EXPECT_LE(r.final_point().gd, r.initial().gd);
  EXPECT_GT(r.recovery, 0.0);
}

}  // namespace
}  // namespace biatsp
