// SPDX-License-Identifier: Apache-2.0

#include "biatsp/operators.hpp"

#include <gtest/gtest.h>

#include <set>

#include "biatsp/exact.hpp"
#include "biatsp/nsga2.hpp"
#include "oracles.hpp"

namespace biatsp {
namespace {

std::size_t ArcDifference(const Tour& a, const Tour& b) {
  const auto x = oracle::arcs(a), y = oracle::arcs(b);
  std::size_t diff = 0;
  for (const auto& e : x) diff += !y.count(e);
  for (const auto& e : y) diff += !x.count(e);
  return diff;
}

std::set<Tour> ShiftNeighbours(const Tour& t) {
  std::set<Tour> out;
  for (int from = 1; from < t.size(); ++from)
    for (int to = 1; to < t.size(); ++to)
      if (to != from) out.insert(shift_move(t, from, to));
  return out;
}

TEST(ShiftMutationTest, ByDefinition) { EXPECT_EQ(shift_move(Tour{{0, 1, 2, 3}}, 1, 3), (Tour{{0, 2, 3, 1}})); }

TEST(ShiftMutationTest, ValidAndLocal) {
  Rng rng(1);
  for (int k = 0; k < 2000; ++k) {
    const int n = static_cast<int>(rng.uniform(4, 30));
    const Tour t = random_tour(n, rng);
    const Tour s = shift_mutation(t, rng);
    ASSERT_TRUE(is_valid_tour(s, n));
    EXPECT_NE(s, t);
    EXPECT_LE(ArcDifference(s, t), 6u);
  }
}

TEST(DirectedEdgeCrossoverTest, IdenticalParentsFallBackToShift) {
  Rng rng(2);
  const Tour c{{0, 3, 1, 4, 2, 5}};
  const auto neighbours = ShiftNeighbours(c);
  for (int k = 0; k < 200; ++k) {
    const Tour child = directed_edge_crossover(c, c, rng);
    EXPECT_NE(child, c);
    EXPECT_TRUE(neighbours.count(child));
  }
}

TEST(DirectedEdgeCrossoverTest, KeepsSharedArc) {
  Rng rng(3);
  const Tour p1{{0, 1, 2, 3, 7, 4, 5, 6, 8, 9}};
  const Tour p2{{0, 9, 8, 6, 3, 7, 5, 4, 2, 1}};
  for (int k = 0; k < 500; ++k) {
    const Tour child = directed_edge_crossover(p1, p2, rng);
    ASSERT_TRUE(is_valid_tour(child, 10));
    if (child != p1 && child != p2 && !ShiftNeighbours(p1).count(child) && !ShiftNeighbours(p2).count(child)) {
      EXPECT_TRUE(oracle::arcs(child).count({3, 7}));
    }
  }
}

TEST(DirectedEdgeCrossoverTest, ExhaustiveSeedSweepAtSevenVertices) {
  // Shared arcs 0->1, 1->2 and 6->0 leave four respectful non-parent tours.
  const Tour p1{{0, 1, 2, 3, 4, 5, 6}};
  const Tour p2{{0, 1, 2, 5, 4, 3, 6}};
  std::set<std::pair<Vertex, Vertex>> shared;
  const auto a1 = oracle::arcs(p1), a2 = oracle::arcs(p2);
  for (const auto& e : a1)
    if (a2.count(e)) shared.insert(e);
  ASSERT_EQ(shared.size(), 3u);

  // Every tour that contains all shared arcs and is not a parent.
  std::set<Tour> respectful;
  for (const auto& t : oracle::all_tours(7)) {
    const auto a = oracle::arcs(t);
    bool ok = t != p1 && t != p2;
    for (const auto& e : shared) ok = ok && a.count(e);
    if (ok) respectful.insert(t);
  }
  auto fallback = ShiftNeighbours(p1);
  fallback.merge(ShiftNeighbours(p2));

  std::set<Tour> outcomes;
  for (std::uint64_t seed = 0; seed < 3000; ++seed) {
    Rng rng(seed);
    const Tour child = directed_edge_crossover(p1, p2, rng);
    ASSERT_TRUE(is_valid_tour(child, 7));
    ASSERT_TRUE(respectful.count(child) || fallback.count(child)) << to_string(child);
    outcomes.insert(child);
  }
  ASSERT_EQ(respectful.size(), 4u);
  for (const auto& t : respectful) EXPECT_TRUE(outcomes.count(t)) << to_string(t);
}

TEST(DirectedEdgeCrossoverTest, RespectfulOnRandomPairs) {
  Rng rng(4);
  for (int k = 0; k < 2000; ++k) {
    const int n = static_cast<int>(rng.uniform(5, 40));
    const Tour p1 = random_tour(n, rng);
    Tour p2 = p1;
    const int moves = static_cast<int>(rng.uniform(0, 4));
    for (int m = 0; m < moves; ++m) p2 = shift_mutation(p2, rng);
    if (rng.bernoulli(0.3)) p2 = random_tour(n, rng);
    const Tour child = directed_edge_crossover(p1, p2, rng);
    ASSERT_TRUE(is_valid_tour(child, n));
    const auto a1 = oracle::arcs(p1), a2 = oracle::arcs(p2), ac = oracle::arcs(child);
    bool respectful = true;
    for (const auto& e : a1) respectful = respectful && (!a2.count(e) || ac.count(e));
    if (respectful && child != p1 && child != p2) continue;
    // Clone fallback: a shift of either parent, which may coincide with the other one.
    EXPECT_TRUE(ShiftNeighbours(p1).count(child) || ShiftNeighbours(p2).count(child));
  }
}

TEST(ThreeOptTest, MoveAndDeltaAgree) {
  Rng rng(5);
  const auto inst = oracle::random_instance(12, 1, 100, 5);
  for (int k = 0; k < 1000; ++k) {
    const Tour t = random_tour(12, rng);
    const auto m = random_three_opt_move(12, rng);
    ASSERT_LT(m.i, m.j);
    ASSERT_LT(m.j, m.k);
    ASSERT_LE(m.k, 11);
    const Tour u = apply_three_opt(t, m);
    ASSERT_TRUE(is_valid_tour(u, 12));
    EXPECT_EQ(tour_weight(inst.w1, u) - tour_weight(inst.w1, t), three_opt_delta(inst.w1, t, m));
  }
}

TEST(ThreeOptTest, ValidOutputs) {
  Rng rng(6);
  const auto inst = oracle::random_instance(20, 1, 10, 6);
  for (int k = 0; k < 1000; ++k) {
    const Tour t = random_tour(20, rng);
    ASSERT_TRUE(is_valid_tour(three_opt_jump(t, inst, 1 + static_cast<int>(k % 2), rng, 1 + k % 60), 20));
  }
}

TEST(ThreeOptTest, OptimalTourGetsNonImprovingJump) {
  const auto inst = oracle::random_instance(6, 1, 30, 9);
  const auto best = exact_best(inst, 1, 6);
  Rng rng(7);
  for (int k = 0; k < 100; ++k) {
    const Tour out = three_opt_jump(best.tour, inst, 1, rng);
    EXPECT_NE(out, best.tour);
    EXPECT_GE(tour_weight(inst.w1, out), best.value);
  }
}

TEST(ThreeOptTest, FindsTheSingleImprovingMove) {
  // All arcs cost 10 except those of a target tour T*, which cost 1. The
  // start tour is a 3-opt neighbour of T*, so only the move back improves.
  const int n = 8;
  const Tour target{{0, 1, 2, 3, 4, 5, 6, 7}};
  BiInstance inst{"one-move", n, Matrix(n, 10), Matrix(n, 1), {}};
  for (int k = 0; k < n; ++k) inst.w1(target[static_cast<std::size_t>(k)], target.next(static_cast<std::size_t>(k))) = 1;
  const Tour start = apply_three_opt(target, {1, 3, 6});

  int improving = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) improving += three_opt_delta(inst.w1, start, {i, j, k}) < 0;
  ASSERT_EQ(improving, 1);

  int hits = 0;
  const int seeds = 200;
  for (int s = 0; s < seeds; ++s) {
    Rng rng(static_cast<std::uint64_t>(s));
    hits += three_opt_jump(start, inst, 1, rng, 300) == target;
  }
  EXPECT_GE(hits, seeds * 9 / 10);
}

}  // namespace
}  // namespace biatsp
