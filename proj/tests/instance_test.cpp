// SPDX-License-Identifier: Apache-2.0

#include "biatsp/instance.hpp"

#include <gtest/gtest.h>

#include <string>

#include "biatsp/pareto.hpp"
#include "biatsp/rational.hpp"
#include "biatsp/rng.hpp"
#include "oracles.hpp"

namespace biatsp {
namespace {

GeneratorSpec Uniform(int n, Interval a, Interval b, std::uint64_t seed = 1) {
  GeneratorSpec s;
  s.kind = GeneratorKind::uniform;
  s.n = n;
  s.interval1 = a;
  s.interval2 = b;
  s.seed = seed;
  return s;
}

GeneratorSpec Contradicting(int n, Interval a, Weight sum, std::uint64_t seed = 1) {
  GeneratorSpec s;
  s.kind = GeneratorKind::contradicting;
  s.n = n;
  s.interval1 = a;
  s.contradiction_sum = sum;
  s.seed = seed;
  return s;
}

TEST(RngTest, SameSeedSameStream) {
  Rng a(42), b(42), c(43);
  bool differs = false;
  for (int k = 0; k < 100; ++k) {
    const auto x = a();
    EXPECT_EQ(x, b());
    differs = differs || x != c();
  }
  EXPECT_TRUE(differs);
}

TEST(RngTest, UniformIsInclusiveAndCoversRange) {
  Rng rng(7);
  int seen[4] = {0, 0, 0, 0};
  for (int k = 0; k < 4000; ++k) {
    const auto v = rng.uniform(1, 4);
    ASSERT_GE(v, 1);
    ASSERT_LE(v, 4);
    ++seen[v - 1];
  }
  for (int c : seen) EXPECT_GT(c, 800);
}

TEST(RngTest, DerivedStreamsDifferByPurpose) {
  EXPECT_NE(derive_seed(1, "instance"), derive_seed(1, "engine"));
  EXPECT_NE(derive_seed(1, "engine", 0), derive_seed(1, "engine", 1));
  EXPECT_EQ(derive_seed(9, "engine", 3), derive_seed(9, "engine", 3));
}

TEST(RationalTest, ParsesDecimalsExactly) {
  EXPECT_EQ(Rational::parse("0.3"), Rational(3, 10));
  EXPECT_EQ(Rational::parse("0.50"), Rational(1, 2));
  EXPECT_EQ(Rational::parse("3/5"), Rational(3, 5));
  EXPECT_EQ(Rational::parse("6/10"), Rational(3, 5));
  EXPECT_EQ(Rational::parse("2"), Rational(2));
  EXPECT_THROW(Rational::parse("0.3x"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_LT(Rational(1, 3), Rational(34, 100));
  EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
}

TEST(GenerateUniformTest, FiftyVertexSeriesShape) {
  const auto inst = generate_uniform(Uniform(50, {1, 10}, {1, 10}, 1));
  EXPECT_EQ(inst.n, 50);
  EXPECT_NO_THROW(validate(inst));
  for (int u = 0; u < 50; ++u)
    for (int v = 0; v < 50; ++v) {
      if (u == v) continue;
      EXPECT_GE(inst.w1(u, v), 1);
      EXPECT_LE(inst.w1(u, v), 10);
      EXPECT_GE(inst.w2(u, v), 1);
      EXPECT_LE(inst.w2(u, v), 10);
    }
  EXPECT_EQ(inst.name, "S50[1,10][1,10]_s1");
}

TEST(GenerateUniformTest, DegenerateIntervals) {
  const auto inst = generate_uniform(Uniform(3, {5, 5}, {7, 7}));
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v)
      if (u != v) {
        EXPECT_EQ(inst.w1(u, v), 5);
        EXPECT_EQ(inst.w2(u, v), 7);
      }
}

TEST(GenerateUniformTest, DeterministicGivenSeed) {
  const auto spec = Uniform(20, {1, 20}, {1, 10}, 99);
  EXPECT_EQ(to_string(generate_uniform(spec)), to_string(generate_uniform(spec)));
  EXPECT_NE(to_string(generate_uniform(spec)), to_string(generate_uniform(Uniform(20, {1, 20}, {1, 10}, 100))));
}

TEST(GenerateUniformTest, RejectsInvalidIntervals) {
  EXPECT_THROW(generate_uniform(Uniform(5, {0, 10}, {1, 10})), ConfigError);
  EXPECT_THROW(generate_uniform(Uniform(5, {1, 10}, {5, 4})), ConfigError);
  EXPECT_THROW(generate_uniform(Uniform(2, {1, 10}, {1, 10})), ConfigError);
}

TEST(GenerateUniformTest, FuzzedSpecsSatisfyInvariants) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Weight lo1 = rng.uniform(1, 20), lo2 = rng.uniform(1, 20);
    const auto spec = Uniform(static_cast<int>(rng.uniform(3, 15)), {lo1, lo1 + rng.uniform(0, 30)},
                              {lo2, lo2 + rng.uniform(0, 30)}, rng());
    const auto inst = generate_uniform(spec);
    EXPECT_NO_THROW(validate(inst));
    for (int u = 0; u < inst.n; ++u)
      for (int v = 0; v < inst.n; ++v)
        if (u != v) {
          EXPECT_LE(inst.w1(u, v), spec.interval1.hi);
          EXPECT_GE(inst.w2(u, v), spec.interval2.lo);
        }
  }
}

TEST(GenerateContradictingTest, WeightsSumToConstant) {
  const auto inst = generate_contradicting(Contradicting(50, {1, 2}, 3, 3));
  EXPECT_EQ(inst.name, "S50contr[1,2][1,2]_s3");
  for (int u = 0; u < 50; ++u)
    for (int v = 0; v < 50; ++v)
      if (u != v) {
        EXPECT_EQ(inst.w1(u, v) + inst.w2(u, v), 3);
        if (inst.w1(u, v) == 2) {
          EXPECT_EQ(inst.w2(u, v), 1);
        }
      }
  Rng rng(11);
  for (int k = 0; k < 100; ++k) {
    Tour t{{0}};
    for (int v = 1; v < 50; ++v) t.perm.push_back(v);
    for (int i = 49; i > 1; --i) std::swap(t.perm[static_cast<std::size_t>(i)], t.perm[1 + rng.index(static_cast<std::size_t>(i))]);
    const auto y = evaluate(inst, t);
    EXPECT_EQ(y.d1 + y.d2, 150);
  }
}

TEST(GenerateContradictingTest, ForcedSumsOnConstantFirstCriterion) {
  const auto inst = generate_contradicting(Contradicting(4, {1, 1}, 3));
  for (const auto& t : oracle::all_tours(4)) EXPECT_EQ(evaluate(inst, t), (ObjectiveVector{4, 8}));
}

TEST(GenerateContradictingTest, RejectsNonPositiveSecondWeight) {
  EXPECT_THROW(generate_contradicting(Contradicting(10, {1, 3}, 3)), ConfigError);
  EXPECT_NO_THROW(generate_contradicting(Contradicting(10, {1, 3}, 4)));
}

constexpr const char* kTiny = R"(NAME: tiny
TYPE: ATSP
COMMENT: handcrafted
DIMENSION: 3
EDGE_WEIGHT_TYPE: EXPLICIT
EDGE_WEIGHT_FORMAT: FULL_MATRIX
EDGE_WEIGHT_SECTION
9999 4 7
2 9999
5 1 3 9999
EOF
)";

TEST(TsplibTest, ParsesFullMatrix) {
  const auto m = parse_tsplib_atsp(kTiny);
  EXPECT_EQ(m.name, "tiny");
  ASSERT_EQ(m.n, 3);
  EXPECT_EQ(m.matrix(0, 1), 4);
  EXPECT_EQ(m.matrix(0, 2), 7);
  EXPECT_EQ(m.matrix(1, 0), 2);
  EXPECT_EQ(m.matrix(1, 2), 5);
  EXPECT_EQ(m.matrix(2, 0), 1);
  EXPECT_EQ(m.matrix(2, 1), 3);
  EXPECT_EQ(m.matrix(1, 1), 0);
}

TEST(TsplibTest, DimensionFromHeaderLikeFtv33) {
  // ftv33 declares 34 vertices.
  std::string text = "NAME: ftv33\nTYPE: ATSP\nDIMENSION: 34\nEDGE_WEIGHT_TYPE: EXPLICIT\n"
                     "EDGE_WEIGHT_FORMAT: FULL_MATRIX\nEDGE_WEIGHT_SECTION\n";
  for (int u = 0; u < 34; ++u) {
    for (int v = 0; v < 34; ++v) text += (u == v ? "100000000" : std::to_string(1 + (u * 7 + v * 13) % 300)) + " ";
    text += "\n";
  }
  text += "EOF\n";
  const auto m = parse_tsplib_atsp(text);
  EXPECT_EQ(m.n, 34);
  EXPECT_EQ(m.matrix.size(), 34);
}

TEST(TsplibTest, TruncatedMatrixIsRejected) {
  std::string text = "NAME: bad\nTYPE: ATSP\nDIMENSION: 5\nEDGE_WEIGHT_TYPE: EXPLICIT\n"
                     "EDGE_WEIGHT_FORMAT: FULL_MATRIX\nEDGE_WEIGHT_SECTION\n";
  for (int k = 0; k < 24; ++k) text += "1 ";
  text += "\nEOF\n";
  try {
    parse_tsplib_atsp(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("EDGE_WEIGHT_SECTION"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("found 24"), std::string::npos);
  }
}

TEST(TsplibTest, UnsupportedFormatAndNonInteger) {
  std::string lower = kTiny;
  lower.replace(lower.find("FULL_MATRIX"), 11, "LOWER_DIAG_ROW");
  EXPECT_THROW(
      {
        try {
          parse_tsplib_atsp(lower);
        } catch (const ParseError& e) {
          EXPECT_NE(std::string(e.what()).find("EDGE_WEIGHT_FORMAT"), std::string::npos);
          throw;
        }
      },
      ParseError);
  std::string frac = kTiny;
  frac.replace(frac.find("5 1 3"), 5, "5 1.5 3");
  try {
    parse_tsplib_atsp(frac);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 10"), std::string::npos) << e.what();
  }
}

TEST(DeriveSecondCriterionTest, RangeAndDeterminism) {
  const auto src = parse_tsplib_atsp(kTiny);
  const auto inst = derive_second_criterion(src, 7);
  EXPECT_EQ(inst.w1, src.matrix);
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v)
      if (u != v) {
        EXPECT_GE(inst.w2(u, v), 1);
        EXPECT_LE(inst.w2(u, v), 7);
      }
  EXPECT_EQ(inst, derive_second_criterion(src, 7));
  EXPECT_NE(inst.comments.front().find("seed=7"), std::string::npos);
}

TEST(DeriveSecondCriterionTest, AllOnesGivesAllOnes) {
  TsplibMatrix src{"ones", 6, Matrix(6, 1)};
  const auto inst = derive_second_criterion(src, 3);
  for (int u = 0; u < 6; ++u)
    for (int v = 0; v < 6; ++v)
      if (u != v) {
        EXPECT_EQ(inst.w2(u, v), 1);
      }
}

TEST(InstanceFileTest, RoundTripAcrossGenerators) {
  Rng rng(1);
  for (int k = 0; k < 10; ++k) {
    const auto inst = (k % 2) ? generate_uniform(Uniform(3 + k, {1, 50}, {2, 9}, rng()))
                              : generate_contradicting(Contradicting(3 + k, {1, 2}, 3, rng()));
    EXPECT_EQ(instance_from_string(to_string(inst)), inst);
  }
}

TEST(InstanceFileTest, HeaderCarriesGeneratorMetadata) {
  const auto text = to_string(generate_contradicting(Contradicting(50, {1, 2}, 3, 3)));
  EXPECT_EQ(text.rfind("NAME: S50contr[1,2][1,2]_s3\nTYPE: BIATSP\nVERSION: 1\n"
                       "COMMENT: generator=contradicting n=50 interval1=[1,2] sum=3 seed=3\nDIMENSION: 50\n",
                       0),
            0u);
}

TEST(InstanceFileTest, RejectsBadFiles) {
  const std::string good = to_string(generate_uniform(Uniform(3, {1, 5}, {1, 5})));
  std::string negative = good;
  negative.replace(negative.find("EDGE_WEIGHT_SECTION_1\n0 ") + 24, 1, "-3");
  EXPECT_THROW(instance_from_string(negative), FormatError);

  std::string version = good;
  version.replace(version.find("VERSION: 1"), 10, "VERSION: 2");
  EXPECT_THROW(instance_from_string(version), FormatError);

  std::string dim = good;
  dim.replace(dim.find("DIMENSION: 3"), 12, "DIMENSION: 4");
  EXPECT_THROW(instance_from_string(dim), FormatError);

  std::string zero = good;
  zero.replace(zero.find("EDGE_WEIGHT_SECTION_2\n0 ") + 24, 1, "0");
  EXPECT_THROW(instance_from_string(zero), FormatError);
}

}  // namespace
}  // namespace biatsp
