// SPDX-License-Identifier: Apache-2.0

/// \file
/// Generational NSGA-II for the bicriteria ATSP.
///
/// Each generation builds N offspring (two tournament-selected parents,
/// each mutated with probability p_mut, recombined into one child), merges
/// them with the current population and keeps the best N by non-domination
/// level, truncating the last admitted level by crowding distance.

#ifndef BIATSP_NSGA2_HPP
#define BIATSP_NSGA2_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "biatsp/assignment.hpp"
#include "biatsp/error.hpp"
#include "biatsp/instance.hpp"
#include "biatsp/operators.hpp"
#include "biatsp/pareto.hpp"
#include "biatsp/rng.hpp"

namespace biatsp {

inline constexpr double kInfiniteCrowding = std::numeric_limits<double>::infinity();

struct Individual {
  Tour tour;
  ObjectiveVector objectives;
  int rank = 0;  ///< 1-based non-domination level
  double crowding = 0.0;
};

/// Fast non-dominated sorting. Returns the levels as index lists (level 1
/// first) and writes the 1-based rank into every individual.
inline std::vector<std::vector<std::size_t>> nondominated_sort(std::span<Individual> pop) {
  const std::size_t m = pop.size();
  std::vector<std::vector<std::size_t>> dominated_by_me(m);
  std::vector<int> dominator_count(m, 0);
  std::vector<std::vector<std::size_t>> levels;
  std::vector<std::size_t> current;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      if (dominates(pop[a].objectives, pop[b].objectives)) {
        dominated_by_me[a].push_back(b);
        ++dominator_count[b];
      } else if (dominates(pop[b].objectives, pop[a].objectives)) {
        dominated_by_me[b].push_back(a);
        ++dominator_count[a];
      }
    }
  }
  for (std::size_t a = 0; a < m; ++a)
    if (dominator_count[a] == 0) current.push_back(a);
  int rank = 1;
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t a : current) {
      pop[a].rank = rank;
      for (std::size_t b : dominated_by_me[a])
        if (--dominator_count[b] == 0) next.push_back(b);
    }
    std::sort(next.begin(), next.end());
    levels.push_back(std::move(current));
    current = std::move(next);
    ++rank;
  }
  return levels;
}

/// Crowding distance within one level: boundary members of each objective
/// get +infinity, interior members the sum over objectives of the gap
/// between their two neighbours divided by the level's range (an objective
/// with zero range contributes nothing).
inline void crowding_distances(std::span<Individual> pop, std::span<const std::size_t> level) {
  const std::size_t m = level.size();
  for (std::size_t idx : level) pop[idx].crowding = 0.0;
  if (m <= 2) {
    for (std::size_t idx : level) pop[idx].crowding = kInfiniteCrowding;
    return;
  }
  std::vector<std::size_t> order(level.begin(), level.end());
  for (int c = 1; c <= 2; ++c) {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return pop[a].objectives[c] < pop[b].objectives[c];
    });
    const double lo = static_cast<double>(pop[order.front()].objectives[c]);
    const double hi = static_cast<double>(pop[order.back()].objectives[c]);
    pop[order.front()].crowding = kInfiniteCrowding;
    pop[order.back()].crowding = kInfiniteCrowding;
    if (hi == lo) continue;
    for (std::size_t k = 1; k + 1 < m; ++k) {
      auto& ind = pop[order[k]];
      if (std::isinf(ind.crowding)) continue;
      const double gap = static_cast<double>(pop[order[k + 1]].objectives[c] - pop[order[k - 1]].objectives[c]);
      ind.crowding += gap / (hi - lo);
    }
  }
}

/// Negative when a is better (lower rank, then larger crowding), positive
/// when b is better, zero on a tie.
inline int crowded_compare(const Individual& a, const Individual& b) noexcept {
  if (a.rank != b.rank) return a.rank < b.rank ? -1 : 1;
  if (a.crowding != b.crowding) return a.crowding > b.crowding ? -1 : 1;
  return 0;
}

/// s-tournament with replacement. Exact ties go to the lower population
/// index.
inline std::size_t tournament_select(std::span<const Individual> pop, int s, Rng& rng) {
  std::size_t best = rng.index(pop.size());
  for (int k = 1; k < s; ++k) {
    const std::size_t cand = rng.index(pop.size());
    const int cmp = crowded_compare(pop[cand], pop[best]);
    if (cmp < 0 || (cmp == 0 && cand < best)) best = cand;
  }
  return best;
}

inline Tour random_tour(int n, Rng& rng) {
  Tour t;
  t.perm.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) t.perm[static_cast<std::size_t>(v)] = v;
  for (int k = n - 1; k > 1; --k) {
    const auto j = 1 + rng.index(static_cast<std::size_t>(k));
    std::swap(t.perm[static_cast<std::size_t>(k)], t.perm[j]);
  }
  return t;
}

struct EngineConfig {
  int population_size = 100;
  int tournament_size = 10;
  double mutation_probability = 0.1;
  int iterations = 5000;
  std::uint64_t seed = 1;
  int three_opt_budget = kDefaultThreeOptBudget;
  /// Generations between history snapshots; 0 disables history.
  int history_interval = 50;
  /// Optional wall-clock budget; the run stops after the generation that
  /// exceeds it.
  std::optional<double> time_limit_seconds;
};

inline void validate(const EngineConfig& c) {
  if (c.population_size < 4)
    throw ConfigError("population size must be at least 4, got " + std::to_string(c.population_size));
  if (c.tournament_size < 1 || c.tournament_size > c.population_size)
    throw ConfigError("tournament size must lie in [1, N], got " + std::to_string(c.tournament_size));
  if (!(c.mutation_probability >= 0.0 && c.mutation_probability <= 1.0))
    throw ConfigError("mutation probability must lie in [0, 1]");
  if (c.iterations < 1) throw ConfigError("iteration count must be at least 1");
  if (c.three_opt_budget < 1) throw ConfigError("3-opt budget must be at least 1");
  if (c.history_interval < 0) throw ConfigError("history interval must be non-negative");
}

struct VariationOperators {
  std::function<Tour(const Tour&, const Tour&, Rng&)> crossover;
  std::function<Tour(const Tour&, Rng&)> mutation;
};

/// DEC crossover and 3-opt jump mutation on a criterion chosen uniformly
/// per call.
inline VariationOperators default_operators(const BiInstance& inst, const EngineConfig& config) {
  const int budget = config.three_opt_budget;
  return {
      [](const Tour& a, const Tour& b, Rng& rng) { return directed_edge_crossover(a, b, rng); },
      [&inst, budget](const Tour& t, Rng& rng) {
        const int criterion = rng.bernoulli(0.5) ? 1 : 2;
        return three_opt_jump(t, inst, criterion, rng, budget);
      },
  };
}

struct Snapshot {
  int generation = 0;
  std::vector<ObjectiveVector> front;
};

struct RunResult {
  ParetoFront final_front;
  std::vector<Snapshot> history;
  std::uint64_t seed = 0;
  int generations = 0;
  double wall_seconds = 0.0;
};

/// Called with the generation index and population after initialization
/// (generation 0) and after every survivor selection.
using GenerationObserver = std::function<void(int, std::span<const Individual>)>;

namespace detail {

inline void rank_and_crowd(std::span<Individual> pop, std::vector<std::vector<std::size_t>>& levels) {
  levels = nondominated_sort(pop);
  for (const auto& level : levels) crowding_distances(pop, level);
}

inline ParetoFront population_front(std::span<const Individual> pop) {
  std::vector<FrontEntry> entries;
  entries.reserve(pop.size());
  for (const auto& ind : pop) entries.push_back({ind.objectives, ind.tour});
  return nondominated_filter(std::span<const FrontEntry>(entries));
}

}  // namespace detail

inline RunResult run(const BiInstance& inst, const EngineConfig& config, const VariationOperators& ops,
                     const GenerationObserver& observer = {}) {
  validate(config);
  if (inst.n < 5) throw ConfigError("instance must have at least 5 vertices for the variation operators");
  const auto started = std::chrono::steady_clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  };
  Rng rng(derive_seed(config.seed, "engine"));
  const auto N = static_cast<std::size_t>(config.population_size);

  RunResult result;
  result.seed = config.seed;
  auto snapshot = [&](int gen, std::span<const Individual> pop) {
    result.history.push_back({gen, detail::population_front(pop).vectors()});
  };

  std::vector<Individual> pop;
  pop.reserve(2 * N);
  for (auto& t : seed_population(inst)) pop.push_back({t, evaluate(inst, t), 0, 0.0});
  while (pop.size() < N) {
    Tour t = random_tour(inst.n, rng);
    pop.push_back({t, evaluate(inst, t), 0, 0.0});
  }
  std::vector<std::vector<std::size_t>> levels;
  detail::rank_and_crowd(pop, levels);
  if (observer) observer(0, pop);
  if (config.history_interval > 0) snapshot(0, pop);

  std::vector<Individual> next;
  next.reserve(N);
  int gen = 0;
  while (gen < config.iterations) {
    ++gen;
    for (std::size_t k = 0; k < N; ++k) {
      const Individual& a = pop[tournament_select(std::span<const Individual>(pop.data(), N), config.tournament_size, rng)];
      const Individual& b = pop[tournament_select(std::span<const Individual>(pop.data(), N), config.tournament_size, rng)];
      Tour ta = rng.bernoulli(config.mutation_probability) ? ops.mutation(a.tour, rng) : a.tour;
      Tour tb = rng.bernoulli(config.mutation_probability) ? ops.mutation(b.tour, rng) : b.tour;
      Tour child = ops.crossover(ta, tb, rng);
      if (!is_valid_tour(child, inst.n))
        throw std::logic_error("variation operator produced an invalid tour at generation " + std::to_string(gen));
      const ObjectiveVector y = evaluate(inst, child);
      pop.push_back({std::move(child), y, 0, 0.0});
    }

    detail::rank_and_crowd(pop, levels);
    next.clear();
    for (auto& level : levels) {
      if (next.size() + level.size() <= N) {
        for (std::size_t idx : level) next.push_back(std::move(pop[idx]));
        if (next.size() == N) break;
        continue;
      }
      std::stable_sort(level.begin(), level.end(),
                       [&](std::size_t x, std::size_t y) { return pop[x].crowding > pop[y].crowding; });
      for (std::size_t k = 0; next.size() < N; ++k) next.push_back(std::move(pop[level[k]]));
      break;
    }
    pop.swap(next);

    if (observer) observer(gen, pop);
    const bool last = gen == config.iterations || (config.time_limit_seconds && elapsed() >= *config.time_limit_seconds);
    if (config.history_interval > 0 && (gen % config.history_interval == 0 || last)) {
      if (result.history.empty() || result.history.back().generation != gen) snapshot(gen, pop);
    }
    if (last) break;
  }

  result.generations = gen;
  result.final_front = detail::population_front(pop);
  result.wall_seconds = elapsed();
  return result;
}

inline RunResult run(const BiInstance& inst, const EngineConfig& config, const GenerationObserver& observer = {}) {
  return run(inst, config, default_operators(inst, config), observer);
}

}  // namespace biatsp

#endif  // BIATSP_NSGA2_HPP
