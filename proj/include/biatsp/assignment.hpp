// SPDX-License-Identifier: Apache-2.0

/// \file
/// Assignment-problem relaxation of the ATSP and the cycle-patching
/// heuristic that turns its cycle cover into a tour. Used to seed the
/// initial population with two tours per criterion.

#ifndef BIATSP_ASSIGNMENT_HPP
#define BIATSP_ASSIGNMENT_HPP

#include <algorithm>
#include <array>
#include <limits>
#include <vector>

#include "biatsp/error.hpp"
#include "biatsp/instance.hpp"
#include "biatsp/pareto.hpp"

namespace biatsp {

/// A derangement sigma (vertex -> successor) and its total weight.
struct Assignment {
  std::vector<Vertex> sigma;
  Weight cost = 0;
};

/// Minimum-cost assignment with self-assignment forbidden, via the O(n^3)
/// shortest augmenting path method with row/column potentials.
inline Assignment solve_assignment(const Matrix& w) {
  const int n = w.size();
  if (n < 2) throw ConfigError("solve_assignment: need at least 2 vertices, got " + std::to_string(n));
  // Any derangement costs at most n*max, so a diagonal above that is never chosen.
  const Weight forbidden = w.max_off_diagonal() * n + 1;
  auto cost = [&](int r, int c) { return r == c ? forbidden : w(r, c); };
  constexpr Weight inf = std::numeric_limits<Weight>::max() / 4;

  // 1-based arrays; column 0 is the virtual start of each augmentation.
  std::vector<Weight> u(n + 1, 0), v(n + 1, 0);
  std::vector<int> row_of(n + 1, 0), way(n + 1, 0);
  std::vector<Weight> minv(n + 1);
  std::vector<char> used(n + 1);
  for (int r = 1; r <= n; ++r) {
    row_of[0] = r;
    int col0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[col0] = 1;
      const int r0 = row_of[col0];
      Weight delta = inf;
      int col1 = 0;
      for (int c = 1; c <= n; ++c) {
        if (used[c]) continue;
        const Weight cur = cost(r0 - 1, c - 1) - u[r0] - v[c];
        if (cur < minv[c]) {
          minv[c] = cur;
          way[c] = col0;
        }
        if (minv[c] < delta) {
          delta = minv[c];
          col1 = c;
        }
      }
      for (int c = 0; c <= n; ++c) {
        if (used[c]) {
          u[row_of[c]] += delta;
          v[c] -= delta;
        } else {
          minv[c] -= delta;
        }
      }
      col0 = col1;
    } while (row_of[col0] != 0);
    do {
      const int col1 = way[col0];
      row_of[col0] = row_of[col1];
      col0 = col1;
    } while (col0 != 0);
  }

  Assignment a;
  a.sigma.assign(static_cast<std::size_t>(n), -1);
  for (int c = 1; c <= n; ++c) a.sigma[static_cast<std::size_t>(row_of[c] - 1)] = c - 1;
  for (int r = 0; r < n; ++r) a.cost += w(r, a.sigma[static_cast<std::size_t>(r)]);
  return a;
}

/// Cycles of a permutation, each listed from its smallest vertex; cycles
/// ordered by smallest vertex.
inline std::vector<std::vector<Vertex>> cycles_of(const std::vector<Vertex>& succ) {
  std::vector<std::vector<Vertex>> cycles;
  std::vector<char> seen(succ.size(), 0);
  for (std::size_t s = 0; s < succ.size(); ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> cyc;
    for (auto v = static_cast<Vertex>(s); !seen[static_cast<std::size_t>(v)]; v = succ[static_cast<std::size_t>(v)]) {
      seen[static_cast<std::size_t>(v)] = 1;
      cyc.push_back(v);
    }
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

enum class PatchingRule {
  merge_largest,    ///< always patch the two largest cycles
  greedy_cheapest,  ///< patch the pair of cycles with the cheapest exchange
};

namespace detail {

struct PatchMove {
  Vertex a = -1;  // arc a -> succ[a] in the first cycle
  Vertex b = -1;  // arc b -> succ[b] in the second cycle
  Weight delta = std::numeric_limits<Weight>::max();
};

/// Cheapest exchange replacing a->sa, b->sb by a->sb, b->sa. Only arcs of
/// the original assignment may be removed.
inline PatchMove best_patch(const Matrix& w, const std::vector<Vertex>& succ, const std::vector<Vertex>& sigma,
                            const std::vector<Vertex>& first, const std::vector<Vertex>& second) {
  PatchMove best;
  for (Vertex a : first) {
    const Vertex sa = succ[static_cast<std::size_t>(a)];
    if (sa != sigma[static_cast<std::size_t>(a)]) continue;
    for (Vertex b : second) {
      const Vertex sb = succ[static_cast<std::size_t>(b)];
      if (sb != sigma[static_cast<std::size_t>(b)]) continue;
      const Weight delta = w(a, sb) + w(b, sa) - w(a, sa) - w(b, sb);
      if (delta < best.delta) best = {a, b, delta};
    }
  }
  return best;
}

}  // namespace detail

/// Merges the cycles of `assignment` pairwise until a single Hamiltonian
/// cycle remains. Every merge removes two assignment arcs and inserts two
/// cross arcs at minimum added cost.
inline Tour patch_to_tour(const Assignment& assignment, const Matrix& w, PatchingRule rule) {
  std::vector<Vertex> succ = assignment.sigma;
  std::vector<std::vector<Vertex>> cycles = cycles_of(succ);
  while (cycles.size() > 1) {
    std::size_t x = 0;
    std::size_t y = 1;
    detail::PatchMove move;
    if (rule == PatchingRule::merge_largest) {
      std::vector<std::size_t> order(cycles.size());
      for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t l, std::size_t r) { return cycles[l].size() > cycles[r].size(); });
      x = std::min(order[0], order[1]);
      y = std::max(order[0], order[1]);
      move = detail::best_patch(w, succ, assignment.sigma, cycles[x], cycles[y]);
    } else {
      for (std::size_t l = 0; l < cycles.size(); ++l)
        for (std::size_t r = l + 1; r < cycles.size(); ++r) {
          auto m = detail::best_patch(w, succ, assignment.sigma, cycles[l], cycles[r]);
          if (m.delta < move.delta) {
            move = m;
            x = l;
            y = r;
          }
        }
    }
    const Vertex sa = succ[static_cast<std::size_t>(move.a)];
    succ[static_cast<std::size_t>(move.a)] = succ[static_cast<std::size_t>(move.b)];
    succ[static_cast<std::size_t>(move.b)] = sa;
    cycles[x].insert(cycles[x].end(), cycles[y].begin(), cycles[y].end());
    cycles.erase(cycles.begin() + static_cast<std::ptrdiff_t>(y));
  }
  return tour_from_successors(succ);
}

/// Two patched assignment tours per criterion: {w1 merge_largest, w1
/// greedy_cheapest, w2 merge_largest, w2 greedy_cheapest}.
inline std::array<Tour, 4> seed_population(const BiInstance& inst) {
  std::array<Tour, 4> seeds;
  std::size_t k = 0;
  for (int c = 1; c <= 2; ++c) {
    const Matrix& w = inst.weights(c);
    const Assignment a = solve_assignment(w);
    seeds[k++] = patch_to_tour(a, w, PatchingRule::merge_largest);
    seeds[k++] = patch_to_tour(a, w, PatchingRule::greedy_cheapest);
  }
  return seeds;
}

}  // namespace biatsp

#endif  // BIATSP_ASSIGNMENT_HPP
