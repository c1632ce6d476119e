// SPDX-License-Identifier: Apache-2.0

/// \file
/// Variation operators on directed tours: Directed Edge Crossover, shift
/// mutation and the random 3-opt jump mutation.

#ifndef BIATSP_OPERATORS_HPP
#define BIATSP_OPERATORS_HPP

#include <cassert>
#include <vector>

#include "biatsp/error.hpp"
#include "biatsp/instance.hpp"
#include "biatsp/pareto.hpp"
#include "biatsp/rng.hpp"

namespace biatsp {

/// Removes the vertex at position `from` and reinserts it so that it ends
/// up at position `to`. Both positions are in [1, n-1].
inline Tour shift_move(const Tour& tour, int from, int to) {
  Tour out = tour;
  const Vertex v = out.perm[static_cast<std::size_t>(from)];
  out.perm.erase(out.perm.begin() + from);
  out.perm.insert(out.perm.begin() + to, v);
  return out;
}

inline Tour shift_mutation(const Tour& tour, Rng& rng) {
  const int n = tour.size();
  if (n < 3) throw ConfigError("shift_mutation: tour too short");
  const int from = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(n - 1)));
  int to = 1 + static_cast<int>(rng.index(static_cast<std::size_t>(n - 2)));
  if (to >= from) ++to;
  return shift_move(tour, from, to);
}

/// Directed Edge Crossover. Arcs common to both parents are always kept.
/// The offspring is grown from vertex 0; at each open end a parent arc is
/// taken when one is feasible (uniformly among feasible ones), otherwise a
/// uniformly random feasible arc. If the result equals a parent, a shift
/// mutation of a randomly chosen parent is returned instead.
inline Tour directed_edge_crossover(const Tour& p1, const Tour& p2, Rng& rng) {
  const int n = p1.size();
  assert(p2.size() == n);
  const auto s1 = successors(p1);
  const auto s2 = successors(p2);
  auto clone_fallback = [&] { return shift_mutation(rng.bernoulli(0.5) ? p1 : p2, rng); };

  std::vector<Vertex> shared(static_cast<std::size_t>(n), -1);
  std::vector<Vertex> shared_pred(static_cast<std::size_t>(n), -1);
  int shared_count = 0;
  for (int v = 0; v < n; ++v)
    if (s1[static_cast<std::size_t>(v)] == s2[static_cast<std::size_t>(v)]) {
      shared[static_cast<std::size_t>(v)] = s1[static_cast<std::size_t>(v)];
      shared_pred[static_cast<std::size_t>(s1[static_cast<std::size_t>(v)])] = v;
      ++shared_count;
    }
  if (shared_count == n) return clone_fallback();

  // Shared arcs form vertex-disjoint paths. The path running into vertex 0
  // (if any) must be entered last, so its head is held back.
  Vertex last_head = -1;
  if (shared_pred[0] != -1) {
    last_head = shared_pred[0];
    while (shared_pred[static_cast<std::size_t>(last_head)] != -1) last_head = shared_pred[static_cast<std::size_t>(last_head)];
  }

  // Unvisited path heads other than vertex 0 and last_head.
  std::vector<Vertex> pool;
  std::vector<int> slot(static_cast<std::size_t>(n), -1);
  for (int v = 1; v < n; ++v)
    if (shared_pred[static_cast<std::size_t>(v)] == -1 && v != last_head) {
      slot[static_cast<std::size_t>(v)] = static_cast<int>(pool.size());
      pool.push_back(v);
    }
  auto take_from_pool = [&](Vertex v) {
    const int k = slot[static_cast<std::size_t>(v)];
    const Vertex back = pool.back();
    pool[static_cast<std::size_t>(k)] = back;
    slot[static_cast<std::size_t>(back)] = k;
    pool.pop_back();
    slot[static_cast<std::size_t>(v)] = -1;
  };
  auto eligible = [&](Vertex t) {
    if (slot[static_cast<std::size_t>(t)] != -1) return true;
    return t == last_head && pool.empty();
  };

  Tour child;
  child.perm.reserve(static_cast<std::size_t>(n));
  child.perm.push_back(0);
  Vertex cur = 0;
  while (child.size() < n) {
    Vertex next = shared[static_cast<std::size_t>(cur)];
    if (next == -1) {
      const Vertex a = s1[static_cast<std::size_t>(cur)];
      const Vertex b = s2[static_cast<std::size_t>(cur)];
      const bool ea = eligible(a);
      const bool eb = b != a && eligible(b);
      if (ea && eb) {
        next = rng.bernoulli(0.5) ? a : b;
      } else if (ea) {
        next = a;
      } else if (eb) {
        next = b;
      } else if (!pool.empty()) {
        next = pool[rng.index(pool.size())];
      } else {
        assert(last_head != -1);
        next = last_head;
      }
      if (next != last_head) take_from_pool(next);
    }
    child.perm.push_back(next);
    cur = next;
  }
  if (child == p1 || child == p2) return clone_fallback();
  return child;
}

// ---------------------------------------------------------------------------
// 3-opt

/// Positions 0 <= i < j < k <= n-1 select the arcs leaving tour[i], tour[j]
/// and tour[k]. The orientation-preserving reconnection swaps the segments
/// (i+1..j) and (j+1..k).
struct ThreeOptMove {
  int i = 0;
  int j = 1;
  int k = 2;
};

inline Weight three_opt_delta(const Matrix& w, const Tour& t, const ThreeOptMove& m) {
  const auto n = t.perm.size();
  const Vertex a = t[static_cast<std::size_t>(m.i)], a1 = t[static_cast<std::size_t>(m.i + 1)];
  const Vertex b = t[static_cast<std::size_t>(m.j)], b1 = t[static_cast<std::size_t>(m.j + 1)];
  const Vertex c = t[static_cast<std::size_t>(m.k)], c1 = t[(static_cast<std::size_t>(m.k) + 1) % n];
  return w(a, b1) + w(c, a1) + w(b, c1) - w(a, a1) - w(b, b1) - w(c, c1);
}

inline Tour apply_three_opt(const Tour& t, const ThreeOptMove& m) {
  Tour out;
  out.perm.reserve(t.perm.size());
  const auto& p = t.perm;
  out.perm.insert(out.perm.end(), p.begin(), p.begin() + m.i + 1);
  out.perm.insert(out.perm.end(), p.begin() + m.j + 1, p.begin() + m.k + 1);
  out.perm.insert(out.perm.end(), p.begin() + m.i + 1, p.begin() + m.j + 1);
  out.perm.insert(out.perm.end(), p.begin() + m.k + 1, p.end());
  return out;
}

inline ThreeOptMove random_three_opt_move(int n, Rng& rng) {
  int x = static_cast<int>(rng.index(static_cast<std::size_t>(n)));
  int y = static_cast<int>(rng.index(static_cast<std::size_t>(n - 1)));
  int z = static_cast<int>(rng.index(static_cast<std::size_t>(n - 2)));
  // Three distinct positions without rejection.
  if (y >= x) ++y;
  const int lo = std::min(x, y), hi = std::max(x, y);
  if (z >= lo) ++z;
  if (z >= hi) ++z;
  int v[3] = {x, y, z};
  std::sort(v, v + 3);
  return {v[0], v[1], v[2]};
}

inline constexpr int kDefaultThreeOptBudget = 50;

/// Samples up to `budget` random 3-opt moves and returns the first one that
/// strictly improves `criterion`; otherwise the last sampled neighbour.
inline Tour three_opt_jump(const Tour& tour, const BiInstance& inst, int criterion, Rng& rng,
                           int budget = kDefaultThreeOptBudget) {
  const int n = tour.size();
  if (n < 4) throw ConfigError("three_opt_jump: tour too short");
  if (budget < 1) throw ConfigError("three_opt_jump: budget must be positive");
  const Matrix& w = inst.weights(criterion);
  ThreeOptMove move;
  for (int s = 0; s < budget; ++s) {
    move = random_three_opt_move(n, rng);
    if (three_opt_delta(w, tour, move) < 0) break;
  }
  return apply_three_opt(tour, move);
}

}  // namespace biatsp

#endif  // BIATSP_OPERATORS_HPP
